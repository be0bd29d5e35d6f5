#ifndef TUTORSYNTH_PARSER_H_
#define TUTORSYNTH_PARSER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/tokenizer.h"

namespace tutorsynth {

enum class ActionKind { kOpenApp, kTap, kToggleOn, kToggleOff };

std::string_view ActionKindName(ActionKind kind);
std::optional<ActionKind> ActionKindFromName(std::string_view name);

struct ActionTuple {
  ActionKind kind = ActionKind::kTap;
  std::vector<Token> target;  // never empty
  Span source_span;           // clause the tuple was read from
  double score = 0.0;

  std::string TargetText() const { return JoinTokens(target); }
};

struct ParseBeam {
  std::vector<ActionTuple> tuples;
  // Sum of the rule scores of the sentence readings that produced this beam.
  double score = 0.0;
};

struct ParseResult {
  // Sorted by score, descending; ties keep generation order.
  std::vector<ParseBeam> beams;
  // Set when no beam could be produced (NoActionFound).
  std::optional<std::string> diagnostic;

  bool ok() const { return !beams.empty(); }
};

// Rule scores. Only the ordering they induce carries meaning.
inline constexpr double kVerbTupleScore = 1.0;
inline constexpr double kChainTupleScore = 0.5;
inline constexpr double kNounTapScore = 0.25;
inline constexpr double kNounCommentaryScore = 0.5;

// Sentences split on . ! ? ; the span covers the trimmed sentence including
// its terminator.
std::vector<Span> SplitSentences(std::string_view text);

// Returns at most `k` beams. Throws std::invalid_argument if k < 1.
ParseResult Parse(std::string_view text, int k);

struct SegmentStep {
  std::string text;
  Span span;
  std::size_t tuple_index = 0;
};

struct SegmentedInstruction {
  std::vector<SegmentStep> steps;
};

class MisalignedBeam : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One step per tuple of `beam`. Throws MisalignedBeam when a tuple's span
// falls outside `text`.
SegmentedInstruction Segment(std::string_view text, const ParseBeam& beam);

nlohmann::ordered_json ParseResultToJson(const ParseResult& result);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_PARSER_H_
