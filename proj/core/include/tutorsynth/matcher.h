#ifndef TUTORSYNTH_MATCHER_H_
#define TUTORSYNTH_MATCHER_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tutorsynth/device.h"
#include "tutorsynth/jaccard.h"
#include "tutorsynth/synth.h"

namespace tutorsynth {

inline constexpr double kDefaultMatchThreshold = 0.2;
inline constexpr int kHighlightFadeMs = 1000;

struct MatchResult {
  std::size_t current_step = 0;
  double similarity = 0.0;  // best score over steps, even when below threshold
  bool matched = false;     // false: fail-safe kept the last viewed step
};

struct MatchHistoryEntry {
  std::string snapshot_digest;
  std::size_t resolved_step = 0;
  double similarity = 0.0;
};

// Live progress of one user through one tutorial. Events must be fed in
// arrival order from a single thread.
class MatchState {
 public:
  explicit MatchState(std::shared_ptr<const Tutorial> tutorial,
                      double threshold = kDefaultMatchThreshold);

  MatchResult Resolve(const ScreenSnapshot& snapshot);

  std::size_t last_viewed() const { return last_viewed_; }
  double threshold() const { return threshold_; }
  const std::vector<MatchHistoryEntry>& history() const { return history_; }
  const Tutorial& tutorial() const { return *tutorial_; }

 private:
  std::shared_ptr<const Tutorial> tutorial_;
  double threshold_;
  std::size_t last_viewed_ = 0;
  std::vector<MatchHistoryEntry> history_;
};

struct HighlightSignal {
  std::size_t scroll_to = 0;
  bool flash = false;
  int fade_ms = kHighlightFadeMs;
};

HighlightSignal Highlight(std::size_t prev_step, std::size_t current_step);

// Stable 64-bit FNV-1a digest of the sorted token set, as hex.
std::string SnapshotDigest(const TokenSet& tokens);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_MATCHER_H_
