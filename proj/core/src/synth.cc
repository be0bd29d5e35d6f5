#include "tutorsynth/synth.h"

#include <algorithm>
#include <fstream>
#include <tuple>

#include "tutorsynth/device_io.h"
#include "tutorsynth/svg.h"

namespace tutorsynth {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

using StepKey = std::tuple<std::string, std::string, ActionKind>;

StepKey KeyOf(const ExecutedStep& e) {
  return {e.screen_before, e.element_id, e.kind};
}
StepKey KeyOf(const StepVariant& v) {
  return {v.screen_before, v.action.element_id, v.action.kind};
}

StepVariant MakeVariant(const ExecutedStep& e, const std::string& text,
                        const ExecutionTrace& trace) {
  StepVariant v;
  v.action = StepAction{e.kind, e.element_id, e.element_tokens};
  v.text = text;
  v.screen_before = e.screen_before;
  v.crop = e.closeup;
  v.pre_screen_tokens = e.pre_screen_tokens;
  v.source_beam = trace.beam_index;
  v.beam_score = trace.beam_score;
  v.overview_frame = e.action_frame();
  if (e.scrolls_used > 0)
    v.animation_frames.assign(e.frames.begin(), e.frames.end() - 1);
  return v;
}

std::string JoinText(const std::string& pending, const std::string& text) {
  if (pending.empty()) return text;
  return pending + " " + text;
}

void AssignAssetRefs(Tutorial& t) {
  for (auto& step : t.steps) {
    if (!step.primary || !step.has_visuals) continue;
    auto assign = [&](StepVariant& v, std::size_t j) {
      std::string stem = "assets/s" + std::to_string(step.index) + "_v" +
                         std::to_string(j) + "_";
      v.overview_ref = stem + "overview.svg";
      v.closeup_ref = stem + "closeup.svg";
      v.animation_refs.clear();
      for (std::size_t n = 0; n < v.animation_frames.size(); ++n)
        v.animation_refs.push_back(stem + "scroll" + std::to_string(n) + ".svg");
    };
    assign(*step.primary, 0);
    for (std::size_t j = 0; j < step.alternatives.size(); ++j)
      assign(step.alternatives[j], j + 1);
  }
}

// Longest common subsequence of two key lists as (i, j) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> Lcs(
    const std::vector<StepKey>& a, const std::vector<StepKey>& b) {
  std::vector<std::vector<int>> dp(a.size() + 1,
                                   std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;)
    for (std::size_t j = b.size(); j-- > 0;)
      dp[i][j] = a[i] == b[j] ? dp[i + 1][j + 1] + 1
                              : std::max(dp[i + 1][j], dp[i][j + 1]);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      out.emplace_back(i++, j++);
    } else if (dp[i + 1][j] >= dp[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

struct BeamStep {
  const ExecutedStep* executed;
  std::string text;
};

// Executed steps of a trace with skipped-step text folded forward.
std::vector<BeamStep> CollectExecuted(const ExecutionTrace& trace,
                                      const SegmentedInstruction& seg,
                                      ojson* skipped_report) {
  std::vector<BeamStep> out;
  std::string pending;
  for (const auto& o : trace.outcomes) {
    const std::string& text = seg.steps.at(o.step_index).text;
    if (o.status == StepStatus::kExecuted) {
      out.push_back(BeamStep{&*o.executed, JoinText(pending, text)});
      pending.clear();
    } else {
      if (skipped_report) {
        skipped_report->push_back({{"beam", trace.beam_index},
                                   {"step", o.step_index},
                                   {"text", text},
                                   {"merged_into_step", out.size()}});
      }
      pending = JoinText(pending, text);
    }
  }
  return out;
}

void AddAlternative(TutorialStep& step, StepVariant v, ojson& report) {
  if (KeyOf(*step.primary) == KeyOf(v)) return;
  for (const auto& alt : step.alternatives)
    if (KeyOf(alt) == KeyOf(v)) return;
  report.push_back({{"step", step.index},
                    {"beam", v.source_beam},
                    {"text", v.text},
                    {"element", v.action.element_id}});
  step.alternatives.push_back(std::move(v));
}

ojson TokensJson(const TokenSet& tokens) {
  ojson arr = ojson::array();
  for (const auto& t : tokens) arr.push_back(t);
  return arr;
}

ojson VariantToJson(const StepVariant& v) {
  ojson animation = ojson::array();
  for (const auto& r : v.animation_refs) animation.push_back(r);
  return {{"action",
           {{"kind", ActionKindName(v.action.kind)},
            {"element", v.action.element_id},
            {"texts", TokensJson(v.action.element_tokens)}}},
          {"text", v.text},
          {"screen", v.screen_before},
          {"overview", v.overview_ref},
          {"closeup", {{"ref", v.closeup_ref}, {"crop", RectToJson(v.crop)}}},
          {"animation", std::move(animation)},
          {"pre_screen_tokens", TokensJson(v.pre_screen_tokens)},
          {"source_beam", v.source_beam},
          {"beam_score", v.beam_score}};
}

TokenSet TokensFromJson(const nlohmann::json& arr) {
  TokenSet out;
  for (const auto& t : arr) out.insert(t.get<std::string>());
  return out;
}

StepVariant VariantFromJson(const nlohmann::json& j) {
  StepVariant v;
  const auto& action = j.at("action");
  auto kind = ActionKindFromName(action.at("kind").get<std::string>());
  if (!kind) throw SynthError(SynthErrorCode::kMalformed, "unknown action kind");
  v.action = StepAction{*kind, action.at("element").get<std::string>(),
                        TokensFromJson(action.at("texts"))};
  v.text = j.value("text", "");
  v.screen_before = j.value("screen", "");
  v.overview_ref = j.at("overview").get<std::string>();
  v.closeup_ref = j.at("closeup").at("ref").get<std::string>();
  const auto& crop = j.at("closeup").at("crop");
  v.crop = Rect{crop.at(0).get<int>(), crop.at(1).get<int>(),
                crop.at(2).get<int>(), crop.at(3).get<int>()};
  for (const auto& r : j.at("animation")) v.animation_refs.push_back(r.get<std::string>());
  v.pre_screen_tokens = TokensFromJson(j.at("pre_screen_tokens"));
  v.source_beam = j.value("source_beam", std::size_t{0});
  v.beam_score = j.value("beam_score", 0.0);
  return v;
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SynthError(SynthErrorCode::kIoFailure, "cannot write " + path.string());
  out << content;
  if (!out) throw SynthError(SynthErrorCode::kIoFailure, "write failed: " + path.string());
}

}  // namespace

std::size_t SelectFallbackTrace(std::span<const ExecutionTrace> traces) {
  if (traces.empty()) throw SynthError(SynthErrorCode::kEmptyInput, "no traces");
  std::size_t best = 0;
  for (std::size_t i = 1; i < traces.size(); ++i) {
    const auto& a = traces[i];
    const auto& b = traces[best];
    int ea = a.ExecutedCount(), eb = b.ExecutedCount();
    if (ea != eb ? ea > eb
                 : a.beam_score != b.beam_score ? a.beam_score > b.beam_score
                                                : a.beam_index < b.beam_index)
      best = i;
  }
  return best;
}

Tutorial Fallback(const ExecutionTrace& best,
                  const SegmentedInstruction& segmented) {
  if (segmented.steps.size() != best.outcomes.size())
    throw std::invalid_argument("segmentation does not match trace");
  Tutorial t;
  t.id = best.instruction_id;
  t.source_instruction_id = best.instruction_id;
  t.beam_scores = {best.beam_score};
  ojson skipped = ojson::array();

  std::string pending;
  for (const auto& o : best.outcomes) {
    const std::string& text = segmented.steps[o.step_index].text;
    if (o.status == StepStatus::kSkipped && o.reason == kSkipLookahead) {
      skipped.push_back({{"beam", best.beam_index},
                         {"step", o.step_index},
                         {"text", text},
                         {"merged_into_step", t.steps.size()}});
      pending = JoinText(pending, text);
      continue;
    }
    TutorialStep step;
    step.index = t.steps.size();
    step.text = JoinText(pending, text);
    pending.clear();
    if (o.status == StepStatus::kExecuted) {
      step.has_visuals = true;
      step.primary = MakeVariant(*o.executed, step.text, best);
    }
    t.steps.push_back(std::move(step));
  }
  if (!pending.empty() && !t.steps.empty())
    t.steps.back().text = JoinText(t.steps.back().text, pending);

  t.complete = !t.steps.empty() &&
               std::all_of(t.steps.begin(), t.steps.end(),
                           [](const TutorialStep& s) { return s.has_visuals; });
  t.merge_report = {{"mode", "fallback"},
                    {"spine_beam", best.beam_index},
                    {"executed_steps", best.ExecutedCount()},
                    {"skipped", std::move(skipped)}};
  AssignAssetRefs(t);
  return t;
}

Tutorial MergeBeams(std::span<const ExecutionTrace> traces,
                    std::span<const SegmentedInstruction> segmented) {
  if (traces.empty())
    throw SynthError(SynthErrorCode::kEmptyInput, "no traces to merge");
  if (segmented.size() != traces.size())
    throw std::invalid_argument("one segmentation per trace is required");

  std::vector<std::size_t> survivors;
  ojson discarded = ojson::array();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (traces[i].reached_final) {
      survivors.push_back(i);
    } else {
      discarded.push_back(traces[i].beam_index);
    }
  }
  std::vector<double> scores;
  for (const auto& tr : traces) scores.push_back(tr.beam_score);

  if (survivors.empty()) {
    std::size_t best = SelectFallbackTrace(traces);
    Tutorial t = Fallback(traces[best], segmented[best]);
    t.beam_scores = scores;
    t.merge_report["discarded_beams"] = std::move(discarded);
    return t;
  }

  std::stable_sort(survivors.begin(), survivors.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (traces[a].beam_score != traces[b].beam_score)
                       return traces[a].beam_score > traces[b].beam_score;
                     return traces[a].beam_index < traces[b].beam_index;
                   });

  const std::size_t spine_idx = survivors.front();
  const ExecutionTrace& spine = traces[spine_idx];
  ojson skipped = ojson::array();
  auto spine_steps = CollectExecuted(spine, segmented[spine_idx], &skipped);

  Tutorial t;
  t.id = spine.instruction_id;
  t.source_instruction_id = spine.instruction_id;
  t.beam_scores = scores;
  std::vector<StepKey> spine_keys;
  for (std::size_t i = 0; i < spine_steps.size(); ++i) {
    TutorialStep step;
    step.index = i;
    step.text = spine_steps[i].text;
    step.has_visuals = true;
    step.primary = MakeVariant(*spine_steps[i].executed, step.text, spine);
    spine_keys.push_back(KeyOf(*spine_steps[i].executed));
    t.steps.push_back(std::move(step));
  }

  ojson alternatives = ojson::array();
  ojson merged = ojson::array();
  for (std::size_t s = 1; s < survivors.size(); ++s) {
    const ExecutionTrace& other = traces[survivors[s]];
    auto other_steps = CollectExecuted(other, segmented[survivors[s]], nullptr);
    std::vector<StepKey> other_keys;
    for (const auto& st : other_steps) other_keys.push_back(KeyOf(*st.executed));
    auto pairs = Lcs(spine_keys, other_keys);
    merged.push_back({{"beam", other.beam_index}, {"shared_steps", pairs.size()}});

    // Unmatched steps between consecutive anchors pair up positionally with
    // the spine's unmatched steps in the same gap.
    pairs.emplace_back(spine_keys.size(), other_keys.size());
    std::size_t s_lo = 0, o_lo = 0;
    for (const auto& [s_hi, o_hi] : pairs) {
      for (std::size_t j = o_lo; j < o_hi; ++j) {
        std::size_t offset = j - o_lo;
        std::size_t target;
        if (offset < s_hi - s_lo) {
          target = s_lo + offset;
        } else if (s_hi > s_lo) {
          target = s_hi - 1;
        } else {
          target = s_hi < spine_keys.size() ? s_hi : s_hi - 1;
        }
        if (target >= t.steps.size()) continue;
        AddAlternative(t.steps[target],
                       MakeVariant(*other_steps[j].executed, other_steps[j].text,
                                   other),
                       alternatives);
      }
      s_lo = s_hi + 1;
      o_lo = o_hi + 1;
    }
  }

  for (auto& step : t.steps) {
    std::stable_sort(step.alternatives.begin(), step.alternatives.end(),
                     [](const StepVariant& a, const StepVariant& b) {
                       if (a.beam_score != b.beam_score)
                         return a.beam_score > b.beam_score;
                       return a.source_beam < b.source_beam;
                     });
  }
  t.complete = !t.steps.empty();
  ojson survivor_beams = ojson::array();
  for (auto i : survivors) survivor_beams.push_back(traces[i].beam_index);
  t.merge_report = {{"mode", "merge"},
                    {"spine_beam", spine.beam_index},
                    {"complete_beams", std::move(survivor_beams)},
                    {"discarded_beams", std::move(discarded)},
                    {"merged", std::move(merged)},
                    {"alternatives", std::move(alternatives)},
                    {"skipped", std::move(skipped)}};
  AssignAssetRefs(t);
  return t;
}

nlohmann::ordered_json TutorialToJson(const Tutorial& t) {
  ojson steps = ojson::array();
  for (const auto& step : t.steps) {
    ojson s;
    s["index"] = step.index;
    s["text"] = step.text;
    s["has_visuals"] = step.has_visuals;
    if (step.has_visuals && step.primary) {
      s["primary"] = VariantToJson(*step.primary);
    } else {
      s["primary"] = {{"text", step.text}};
    }
    ojson alts = ojson::array();
    for (const auto& a : step.alternatives) alts.push_back(VariantToJson(a));
    s["alternatives"] = std::move(alts);
    steps.push_back(std::move(s));
  }
  ojson out;
  out["id"] = t.id;
  out["source"] = t.source_instruction_id;
  if (t.title) out["title"] = *t.title;
  out["complete"] = t.complete;
  out["steps"] = std::move(steps);
  out["provenance"] = {{"beam_scores", t.beam_scores},
                       {"merge_report", t.merge_report}};
  return out;
}

Tutorial TutorialFromJson(const nlohmann::json& doc) {
  try {
    Tutorial t;
    t.id = doc.at("id").get<std::string>();
    t.source_instruction_id = doc.value("source", t.id);
    if (doc.contains("title")) t.title = doc["title"].get<std::string>();
    t.complete = doc.at("complete").get<bool>();
    for (const auto& s : doc.at("steps")) {
      TutorialStep step;
      step.index = s.at("index").get<std::size_t>();
      step.text = s.at("text").get<std::string>();
      step.has_visuals = s.at("has_visuals").get<bool>();
      if (step.has_visuals) step.primary = VariantFromJson(s.at("primary"));
      for (const auto& a : s.at("alternatives"))
        step.alternatives.push_back(VariantFromJson(a));
      t.steps.push_back(std::move(step));
    }
    if (doc.contains("provenance")) {
      for (const auto& v : doc["provenance"].value("beam_scores", nlohmann::json::array()))
        t.beam_scores.push_back(v.get<double>());
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw SynthError(SynthErrorCode::kMalformed,
                     std::string("malformed tutorial.json: ") + e.what());
  }
}

std::filesystem::path WriteBundle(const Tutorial& t, const fs::path& out_dir) {
  const fs::path dir = out_dir / t.id;
  try {
    fs::create_directories(dir);
    fs::remove_all(dir / "assets");
    fs::remove(dir / "tutorial.json");

    bool has_assets = std::any_of(t.steps.begin(), t.steps.end(),
                                  [](const TutorialStep& s) { return s.has_visuals; });
    if (has_assets) fs::create_directories(dir / "assets");

    auto write_variant = [&](const StepVariant& v) {
      if (!v.overview_frame)
        throw SynthError(SynthErrorCode::kMalformed,
                         "variant " + v.overview_ref + " carries no frames");
      WriteFile(dir / v.overview_ref, RenderFrameSvg(*v.overview_frame, v.crop));
      WriteFile(dir / v.closeup_ref, RenderCloseupSvg(*v.overview_frame, v.crop));
      for (std::size_t n = 0; n < v.animation_refs.size(); ++n)
        WriteFile(dir / v.animation_refs[n], RenderFrameSvg(v.animation_frames.at(n)));
    };
    for (const auto& step : t.steps) {
      if (!step.has_visuals || !step.primary) continue;
      write_variant(*step.primary);
      for (const auto& alt : step.alternatives) write_variant(alt);
    }
    WriteFile(dir / "tutorial.json", TutorialToJson(t).dump(2) + "\n");
  } catch (const fs::filesystem_error& e) {
    throw SynthError(SynthErrorCode::kIoFailure, e.what());
  }
  return dir;
}

}  // namespace tutorsynth
