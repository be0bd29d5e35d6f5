#ifndef TUTORSYNTH_JACCARD_H_
#define TUTORSYNTH_JACCARD_H_

#include "tutorsynth/tokenizer.h"

namespace tutorsynth {

// |a ∩ b| / |a ∪ b|, and 0 when both sets are empty.
double Jaccard(const TokenSet& a, const TokenSet& b);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_JACCARD_H_
