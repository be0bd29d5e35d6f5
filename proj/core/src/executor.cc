#include "tutorsynth/executor.h"

#include <algorithm>

#include "tutorsynth/device_io.h"
#include "tutorsynth/jaccard.h"
#include "tutorsynth/worker_pool.h"

namespace tutorsynth {
namespace {

bool IsToggle(ActionKind kind) {
  return kind == ActionKind::kToggleOn || kind == ActionKind::kToggleOff;
}

// Result of searching for and acting on one tuple.
struct StepAttempt {
  std::optional<ExecutedStep> executed;
  int unsuccessful_actions = 0;
  // Set when retrying cannot help (unknown app, device refused the action).
  std::optional<std::string> hard_failure;
};

StepAttempt RunOpenApp(DeviceInstance& inst, const ActionTuple& tuple,
                       const std::shared_ptr<const DeviceDef>& device) {
  StepAttempt attempt;
  const std::string name = tuple.TargetText();
  auto app = device->FindApp(name);
  if (!app) {
    attempt.hard_failure = "unknown app '" + name + "'";
    return attempt;
  }

  ExecutedStep step;
  step.kind = ActionKind::kOpenApp;
  step.screen_before = inst.current_screen_id();
  step.pre_screen_tokens = inst.Snapshot().element_texts;
  step.frames.push_back(inst.Render());
  Rect full{0, 0, device->screen_size.width, device->screen_size.height};
  step.target_bounds = full;
  step.element_id = "app:" + *app;
  step.element_tokens = TokenizeToSet(*app);
  if (auto icon = FindTarget(inst, tuple.target)) {
    const Element* e = inst.screen().FindElement(icon->element_id);
    step.element_id = e->id;
    step.element_tokens = e->AllTokens();
    step.target_bounds = inst.DrawnBounds(*e);
  }
  step.closeup = CloseupRect(step.target_bounds, device->screen_size);

  inst = DeviceInstance::Boot(device, *app);
  step.screen_after = inst.current_screen_id();
  step.frames.push_back(inst.Render());
  attempt.executed = std::move(step);
  return attempt;
}

StepAttempt RunScreenAction(DeviceInstance& inst, const ActionTuple& tuple,
                            const ExecConfig& cfg) {
  StepAttempt attempt;
  // Every search starts from the top of the list.
  while (inst.scroll_offset() > 0) inst.Scroll(ScrollDirection::kUp);

  ExecutedStep step;
  step.kind = tuple.kind;
  step.frames.push_back(inst.Render());
  int remaining = cfg.attempt_budget;
  while (true) {
    if (!inst.IsReady()) {
      if (remaining == 0) break;
      inst.Wait();
      --remaining;
      ++step.waits;
      continue;
    }
    if (auto match = FindTarget(inst, tuple.target, IsToggle(tuple.kind))) {
      const Element* e = inst.screen().FindElement(match->element_id);
      step.element_id = e->id;
      step.element_tokens = e->AllTokens();
      step.target_bounds = inst.DrawnBounds(*e);
      step.closeup = CloseupRect(step.target_bounds, inst.device().screen_size);
      step.screen_before = inst.current_screen_id();
      step.pre_screen_tokens = inst.Snapshot().element_texts;
      try {
        inst.Act(e->id, tuple.kind);
      } catch (const DeviceError& err) {
        attempt.hard_failure = err.what();
        break;
      }
      step.screen_after = inst.current_screen_id();
      step.frames.push_back(inst.Render());
      attempt.executed = std::move(step);
      break;
    }
    if (remaining == 0) break;
    if (inst.screen().scrollable()) {
      inst.Scroll(ScrollDirection::kDown);
      ++step.scrolls_used;
      step.frames.push_back(inst.Render());
    } else {
      inst.Wait();
      ++step.waits;
    }
    --remaining;
  }
  attempt.unsuccessful_actions = cfg.attempt_budget - remaining;
  return attempt;
}

StepAttempt RunStep(DeviceInstance& inst, const ActionTuple& tuple,
                    const ExecConfig& cfg,
                    const std::shared_ptr<const DeviceDef>& device) {
  if (tuple.kind == ActionKind::kOpenApp) return RunOpenApp(inst, tuple, device);
  return RunScreenAction(inst, tuple, cfg);
}

StepOutcome ExecutedOutcome(std::size_t index, StepAttempt attempt) {
  StepOutcome out;
  out.step_index = index;
  out.status = StepStatus::kExecuted;
  out.unsuccessful_actions = attempt.unsuccessful_actions;
  out.executed = std::move(attempt.executed);
  return out;
}

ExecutionTrace FaultTrace(const std::string& instruction_id,
                          std::size_t beam_index, const ParseBeam& beam,
                          const std::string& diagnostic) {
  ExecutionTrace trace;
  trace.instruction_id = instruction_id;
  trace.beam_index = beam_index;
  trace.beam_score = beam.score;
  trace.diagnostic = diagnostic;
  for (std::size_t i = 0; i < beam.tuples.size(); ++i) {
    StepOutcome o;
    o.step_index = i;
    o.status = i == 0 ? StepStatus::kFailed : StepStatus::kSkipped;
    o.reason = i == 0 ? "fault: " + diagnostic : std::string(kSkipNotAttempted);
    trace.outcomes.push_back(std::move(o));
  }
  return trace;
}

}  // namespace

void ValidateExecConfig(const ExecConfig& cfg) {
  if (cfg.attempt_budget < 1) throw InvalidConfig("attempt budget must be >= 1");
  if (cfg.beams < 1) throw InvalidConfig("beam count must be >= 1");
  if (cfg.workers < 1) throw InvalidConfig("worker count must be >= 1");
}

std::string_view StepStatusName(StepStatus status) {
  switch (status) {
    case StepStatus::kExecuted: return "executed";
    case StepStatus::kSkipped: return "skipped";
    case StepStatus::kFailed: return "failed";
  }
  return "failed";
}

int ExecutionTrace::ExecutedCount() const {
  return static_cast<int>(std::count_if(
      outcomes.begin(), outcomes.end(),
      [](const StepOutcome& o) { return o.status == StepStatus::kExecuted; }));
}

bool ExecutionTrace::HasLookaheadSkip() const {
  return std::any_of(outcomes.begin(), outcomes.end(), [](const StepOutcome& o) {
    return o.status == StepStatus::kSkipped && o.reason == kSkipLookahead;
  });
}

std::optional<TargetMatch> FindTarget(const DeviceInstance& inst,
                                      std::span<const Token> phrase,
                                      bool toggles_only) {
  std::vector<std::string> words;
  TokenSet phrase_set;
  for (const auto& t : phrase) {
    words.push_back(t.text);
    phrase_set.insert(t.text);
  }

  std::optional<TargetMatch> best;
  for (const auto& e : inst.VisibleElements()) {
    if (toggles_only ? !e.toggleable : !(e.clickable || e.toggleable)) continue;
    std::vector<std::string> text_words;
    for (auto& t : Tokenize(e.text)) text_words.push_back(std::move(t.text));
    double score = !words.empty() && text_words == words
                       ? 1.0
                       : Jaccard(phrase_set, e.AllTokens());
    if (score >= kTargetThreshold && (!best || score > best->score))
      best = TargetMatch{e.id, score};
  }
  return best;
}

Rect CloseupRect(const Rect& target, const Size& screen) {
  const int pad = screen.width / 10;
  int x0 = std::max(0, target.x - pad);
  int y0 = std::max(0, target.y - pad);
  int x1 = std::min(screen.width, target.x + target.w + pad);
  int y1 = std::min(screen.height, target.y + target.h + pad);
  return Rect{x0, y0, std::max(1, x1 - x0), std::max(1, y1 - y0)};
}

ExecutionTrace ExecuteBeam(std::shared_ptr<const DeviceDef> device,
                           const ParseBeam& beam, const ExecConfig& cfg,
                           const std::string& instruction_id,
                           std::size_t beam_index) {
  ValidateExecConfig(cfg);
  ExecutionTrace trace;
  trace.instruction_id = instruction_id;
  trace.beam_index = beam_index;
  trace.beam_score = beam.score;
  const std::size_t n = beam.tuples.size();
  for (std::size_t i = 0; i < n; ++i) {
    StepOutcome o;
    o.step_index = i;
    o.status = StepStatus::kSkipped;
    o.reason = kSkipNotAttempted;
    trace.outcomes.push_back(std::move(o));
  }
  if (n == 0) {
    trace.diagnostic = "empty beam";
    return trace;
  }

  DeviceInstance inst = DeviceInstance::Boot(device, std::nullopt);
  std::size_t i = 0;
  while (i < n) {
    StepAttempt attempt = RunStep(inst, beam.tuples[i], cfg, device);
    if (attempt.executed) {
      trace.outcomes[i] = ExecutedOutcome(i, std::move(attempt));
      ++trace.actions_executed;
      ++i;
      continue;
    }

    StepOutcome& current = trace.outcomes[i];
    current.unsuccessful_actions = attempt.unsuccessful_actions;
    if (attempt.hard_failure) {
      current.status = StepStatus::kFailed;
      current.reason = *attempt.hard_failure;
      break;
    }
    if (cfg.lookahead && i + 1 < n) {
      StepAttempt next = RunStep(inst, beam.tuples[i + 1], cfg, device);
      if (next.executed) {
        current.status = StepStatus::kSkipped;
        current.reason = kSkipLookahead;
        trace.outcomes[i + 1] = ExecutedOutcome(i + 1, std::move(next));
        ++trace.actions_executed;
        i += 2;
        continue;
      }
      current.status = StepStatus::kFailed;
      current.reason = "target not found; look-ahead to step " +
                       std::to_string(i + 1) + " also failed";
      break;
    }
    current.status = StepStatus::kFailed;
    current.reason = "target not found after " +
                     std::to_string(attempt.unsuccessful_actions) +
                     " unsuccessful actions";
    break;
  }
  trace.reached_final = trace.outcomes.back().status == StepStatus::kExecuted;
  return trace;
}

std::vector<ExecutionTrace> ExecuteBatch(std::span<const BatchJob> jobs,
                                         const ExecConfig& cfg) {
  ValidateExecConfig(cfg);
  struct Task {
    const BatchJob* job;
    std::size_t beam;
  };
  std::vector<Task> tasks;
  for (const auto& job : jobs)
    for (std::size_t b = 0; b < job.beams.size(); ++b) tasks.push_back({&job, b});

  std::vector<ExecutionTrace> traces(tasks.size());
  ParallelFor(tasks.size(), cfg.workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    const ParseBeam& beam = task.job->beams[task.beam];
    try {
      if (!task.job->device) throw std::runtime_error("no device for job");
      traces[t] = ExecuteBeam(task.job->device, beam, cfg,
                              task.job->instruction_id, task.beam);
    } catch (const std::exception& e) {
      traces[t] = FaultTrace(task.job->instruction_id, task.beam, beam, e.what());
    } catch (...) {
      traces[t] = FaultTrace(task.job->instruction_id, task.beam, beam,
                             "unknown fault");
    }
  });

  std::stable_sort(traces.begin(), traces.end(),
                   [](const ExecutionTrace& a, const ExecutionTrace& b) {
                     if (a.instruction_id != b.instruction_id)
                       return a.instruction_id < b.instruction_id;
                     return a.beam_index < b.beam_index;
                   });
  return traces;
}

nlohmann::ordered_json TraceToJson(const ExecutionTrace& trace,
                                   const FrameRefFn& frame_ref) {
  nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
  for (const auto& o : trace.outcomes) {
    nlohmann::ordered_json item;
    item["step"] = o.step_index;
    item["status"] = StepStatusName(o.status);
    if (!o.reason.empty()) item["reason"] = o.reason;
    item["unsuccessful_actions"] = o.unsuccessful_actions;
    if (o.executed) {
      const ExecutedStep& e = *o.executed;
      item["kind"] = ActionKindName(e.kind);
      item["element"] = e.element_id;
      item["screen_before"] = e.screen_before;
      item["screen_after"] = e.screen_after;
      item["scrolls_used"] = e.scrolls_used;
      item["waits"] = e.waits;
      item["target_bounds"] = RectToJson(e.target_bounds);
      item["closeup"] = RectToJson(e.closeup);
      nlohmann::ordered_json frames = nlohmann::ordered_json::array();
      for (std::size_t n = 0; n < e.frames.size(); ++n) {
        if (frame_ref) {
          frames.push_back(frame_ref(o.step_index, n));
        } else {
          frames.push_back({{"screen_id", e.frames[n].screen_id},
                            {"scroll_offset", e.frames[n].scroll_offset},
                            {"tick", e.frames[n].tick}});
        }
      }
      item["frames"] = std::move(frames);
    }
    outcomes.push_back(std::move(item));
  }
  nlohmann::ordered_json out;
  out["beam_index"] = trace.beam_index;
  out["beam_score"] = trace.beam_score;
  out["reached_final"] = trace.reached_final;
  out["actions_executed"] = trace.actions_executed;
  if (!trace.diagnostic.empty()) out["diagnostic"] = trace.diagnostic;
  out["outcomes"] = std::move(outcomes);
  return out;
}

}  // namespace tutorsynth
