#ifndef TUTORSYNTH_EXECUTOR_H_
#define TUTORSYNTH_EXECUTOR_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/device.h"
#include "tutorsynth/parser.h"

namespace tutorsynth {

struct ExecConfig {
  int attempt_budget = 5;  // unsuccessful actions (waits, scrolls) per step
  bool lookahead = false;
  int beams = 3;
  int workers = 1;
};

// Thrown by ValidateExecConfig.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
void ValidateExecConfig(const ExecConfig& cfg);

enum class StepStatus { kExecuted, kSkipped, kFailed };
std::string_view StepStatusName(StepStatus status);

inline constexpr std::string_view kSkipLookahead = "look-ahead";
inline constexpr std::string_view kSkipNotAttempted = "not attempted";

struct ExecutedStep {
  ActionKind kind = ActionKind::kTap;
  std::string element_id;
  std::string screen_before;
  std::string screen_after;
  int scrolls_used = 0;
  int waits = 0;
  // Search-start frame, one frame per scroll, then the post-action frame.
  std::vector<Frame> frames;
  Rect target_bounds;  // on-screen, in the action frame
  Rect closeup;
  TokenSet element_tokens;
  TokenSet pre_screen_tokens;

  const Frame& action_frame() const { return frames[frames.size() - 2]; }
};

struct StepOutcome {
  std::size_t step_index = 0;
  StepStatus status = StepStatus::kFailed;
  std::string reason;            // Skipped / Failed
  int unsuccessful_actions = 0;  // waits + scrolls spent on this step
  std::optional<ExecutedStep> executed;
};

struct ExecutionTrace {
  std::string instruction_id;
  std::size_t beam_index = 0;
  double beam_score = 0.0;
  std::vector<StepOutcome> outcomes;
  bool reached_final = false;
  int actions_executed = 0;
  std::string diagnostic;

  int ExecutedCount() const;
  bool HasLookaheadSkip() const;
};

struct TargetMatch {
  std::string element_id;
  double score = 0.0;
};

inline constexpr double kTargetThreshold = 0.5;

// Best visible clickable-or-toggleable element for `phrase`; toggles only
// when `toggles_only`. Absent when nothing scores >= kTargetThreshold.
std::optional<TargetMatch> FindTarget(const DeviceInstance& inst,
                                      std::span<const Token> phrase,
                                      bool toggles_only = false);

// `target` bounds padded by 10% of the screen width per side, clamped.
Rect CloseupRect(const Rect& target, const Size& screen);

ExecutionTrace ExecuteBeam(std::shared_ptr<const DeviceDef> device,
                           const ParseBeam& beam, const ExecConfig& cfg,
                           const std::string& instruction_id = "",
                           std::size_t beam_index = 0);

struct BatchJob {
  std::string instruction_id;
  std::shared_ptr<const DeviceDef> device;
  std::vector<ParseBeam> beams;
};

// One trace per (job, beam), sorted by instruction_id then beam_index.
std::vector<ExecutionTrace> ExecuteBatch(std::span<const BatchJob> jobs,
                                         const ExecConfig& cfg);

// `frame_ref(step, n)` names frame n of a step; empty string omits refs.
using FrameRefFn = std::function<std::string(std::size_t, std::size_t)>;
nlohmann::ordered_json TraceToJson(const ExecutionTrace& trace,
                                   const FrameRefFn& frame_ref = {});

}  // namespace tutorsynth

#endif  // TUTORSYNTH_EXECUTOR_H_
