#include "tutorsynth/metrics.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "tutorsynth/synth.h"

namespace tutorsynth {

InstructionStats ComputeInstructionStats(std::span<const ExecutionTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("no traces for instruction");
  InstructionStats stats;
  stats.instruction_id = traces.front().instruction_id;

  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!traces[i].reached_final) continue;
    if (!chosen || traces[i].beam_score > traces[*chosen].beam_score ||
        (traces[i].beam_score == traces[*chosen].beam_score &&
         traces[i].beam_index < traces[*chosen].beam_index))
      chosen = i;
  }
  if (!chosen) chosen = SelectFallbackTrace(traces);

  const ExecutionTrace& pick = traces[*chosen];
  stats.chosen_beam = pick.beam_index;
  stats.chosen_complete = pick.reached_final;
  stats.chosen_has_lookahead = pick.HasLookaheadSkip();
  stats.steps_executed = pick.ExecutedCount();
  stats.total_steps = static_cast<int>(pick.outcomes.size());

  const ExecutionTrace* first = nullptr;
  for (const auto& t : traces)
    if (t.beam_index == 0) first = &t;
  if (first) {
    for (const auto& t : traces)
      if (t.beam_index != 0 && t.ExecutedCount() > first->ExecutedCount())
        stats.improved_by_bs = true;
  }
  return stats;
}

std::vector<std::span<const ExecutionTrace>> GroupByInstruction(
    std::span<const ExecutionTrace> traces) {
  std::vector<std::span<const ExecutionTrace>> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= traces.size(); ++i) {
    if (i == traces.size() ||
        traces[i].instruction_id != traces[start].instruction_id) {
      if (i > start) out.push_back(traces.subspan(start, i - start));
      start = i;
    }
  }
  return out;
}

MetricsRow Aggregate(const std::string& config,
                     std::span<const InstructionStats> stats) {
  MetricsRow row;
  row.config = config;
  row.instructions = stats.size();
  if (stats.empty()) return row;
  double steps = 0.0, completion = 0.0;
  for (const auto& s : stats) {
    steps += s.steps_executed;
    completion += s.completion();
    if (s.improved_by_bs) ++row.tutorials_improved_by_bs;
    if (s.chosen_has_lookahead) ++row.tutorials_improved_by_lh;
  }
  row.mean_steps_executed = steps / static_cast<double>(stats.size());
  row.completion_rate = completion / static_cast<double>(stats.size());
  return row;
}

std::vector<AblationConfig> AblationConfigs() {
  return {{"Baseline", 1, false},
          {"BS", 3, false},
          {"LH", 1, true},
          {"BS+LH", 3, true}};
}

AblationReport RunAblation(const std::vector<Instruction>& corpus,
                           const DeviceSet& devices, const ExecConfig& base) {
  AblationReport report;
  std::vector<std::shared_ptr<const DeviceDef>> device_of;
  for (const auto& ins : corpus) device_of.push_back(DeviceFor(ins, devices));

  bool first_config = true;
  for (const auto& config : AblationConfigs()) {
    ExecConfig cfg = base;
    cfg.beams = config.beams;
    cfg.lookahead = config.lookahead;

    std::vector<BatchJob> jobs;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      ParseResult parsed = Parse(corpus[i].text, cfg.beams);
      if (!parsed.ok()) {
        if (first_config) report.excluded.push_back(corpus[i].id);
        continue;
      }
      jobs.push_back(BatchJob{corpus[i].id, device_of[i], std::move(parsed.beams)});
    }
    first_config = false;

    auto traces = ExecuteBatch(jobs, cfg);
    std::vector<InstructionStats> stats;
    for (auto group : GroupByInstruction(traces))
      stats.push_back(ComputeInstructionStats(group));
    report.rows.push_back(Aggregate(config.name, stats));
    report.per_instruction.push_back(std::move(stats));
  }
  return report;
}

std::string AblationReport::FormatTable() const {
  std::ostringstream out;
  out << std::left << std::setw(18) << "" ;
  for (const auto& row : rows) out << std::right << std::setw(10) << row.config;
  out << "\n" << std::left << std::setw(18) << "Steps Executed";
  for (const auto& row : rows)
    out << std::right << std::setw(10) << std::fixed << std::setprecision(2)
        << row.mean_steps_executed;
  out << "\n" << std::left << std::setw(18) << "Completion Rate";
  for (const auto& row : rows) {
    std::ostringstream pct;
    pct << std::fixed << std::setprecision(1) << row.completion_rate * 100.0 << "%";
    out << std::right << std::setw(10) << pct.str();
  }
  out << "\n" << std::left << std::setw(18) << "Improved by BS";
  for (const auto& row : rows)
    out << std::right << std::setw(10) << row.tutorials_improved_by_bs;
  out << "\n" << std::left << std::setw(18) << "Improved by LH";
  for (const auto& row : rows)
    out << std::right << std::setw(10) << row.tutorials_improved_by_lh;
  out << "\n";
  if (!rows.empty())
    out << "(" << rows.front().instructions << " instructions";
  if (!excluded.empty()) out << ", " << excluded.size() << " unparsable excluded";
  if (!rows.empty()) out << ")\n";
  return out.str();
}

nlohmann::ordered_json AblationReport::ToJson() const {
  nlohmann::ordered_json out;
  out["rows"] = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    nlohmann::ordered_json detail = nlohmann::ordered_json::array();
    for (const auto& s : per_instruction[r]) {
      detail.push_back({{"instruction", s.instruction_id},
                        {"steps_executed", s.steps_executed},
                        {"total_steps", s.total_steps},
                        {"completion", s.completion()},
                        {"chosen_beam", s.chosen_beam},
                        {"chosen_complete", s.chosen_complete},
                        {"lookahead_applied", s.chosen_has_lookahead},
                        {"improved_by_bs", s.improved_by_bs}});
    }
    out["rows"].push_back({{"config", row.config},
                           {"mean_steps_executed", row.mean_steps_executed},
                           {"completion_rate", row.completion_rate},
                           {"tutorials_improved_by_bs", row.tutorials_improved_by_bs},
                           {"tutorials_improved_by_lh", row.tutorials_improved_by_lh},
                           {"instructions", row.instructions},
                           {"per_instruction", std::move(detail)}});
  }
  out["excluded"] = excluded;
  return out;
}

}  // namespace tutorsynth
