#ifndef TUTORSYNTH_SYNTH_H_
#define TUTORSYNTH_SYNTH_H_

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/executor.h"
#include "tutorsynth/parser.h"

namespace tutorsynth {

struct StepAction {
  ActionKind kind = ActionKind::kTap;
  std::string element_id;
  TokenSet element_tokens;
};

// One way of performing a step, with the assets captured while executing it.
// Frames are kept in memory until WriteBundle renders them.
struct StepVariant {
  StepAction action;
  std::string text;
  std::string screen_before;
  std::string overview_ref;
  std::string closeup_ref;
  Rect crop;
  std::vector<std::string> animation_refs;  // empty unless the step scrolled
  TokenSet pre_screen_tokens;
  std::size_t source_beam = 0;
  double beam_score = 0.0;

  std::optional<Frame> overview_frame;
  std::vector<Frame> animation_frames;
};

struct TutorialStep {
  std::size_t index = 0;
  std::string text;
  bool has_visuals = false;
  std::optional<StepVariant> primary;     // absent on text-only steps
  std::vector<StepVariant> alternatives;  // beam score, descending
};

struct Tutorial {
  std::string id;
  std::string source_instruction_id;
  std::optional<std::string> title;
  std::vector<TutorialStep> steps;
  bool complete = false;
  std::vector<double> beam_scores;
  nlohmann::ordered_json merge_report = nlohmann::ordered_json::object();
};

enum class SynthErrorCode { kEmptyInput, kIoFailure, kMalformed };

class SynthError : public std::runtime_error {
 public:
  SynthError(SynthErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  SynthErrorCode code() const { return code_; }

 private:
  SynthErrorCode code_;
};

// `segmented[i]` is the segmentation of the beam that produced `traces[i]`.
// Falls back to Fallback() when no trace reaches its final step.
Tutorial MergeBeams(std::span<const ExecutionTrace> traces,
                    std::span<const SegmentedInstruction> segmented);

// Index of the trace with the most executed steps, ties to the higher
// beam score, then the lower beam index.
std::size_t SelectFallbackTrace(std::span<const ExecutionTrace> traces);

// Visual steps for the executed prefix, text-only steps after it.
Tutorial Fallback(const ExecutionTrace& best,
                  const SegmentedInstruction& segmented);

nlohmann::ordered_json TutorialToJson(const Tutorial& tutorial);
// Inverse of TutorialToJson for the fields served at runtime (no frames).
Tutorial TutorialFromJson(const nlohmann::json& doc);

// Writes <out_dir>/<id>/tutorial.json plus its SVG assets; returns that
// directory. Output bytes depend only on the tutorial.
std::filesystem::path WriteBundle(const Tutorial& tutorial,
                                  const std::filesystem::path& out_dir);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_SYNTH_H_
