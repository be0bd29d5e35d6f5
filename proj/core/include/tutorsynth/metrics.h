#ifndef TUTORSYNTH_METRICS_H_
#define TUTORSYNTH_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/corpus.h"
#include "tutorsynth/executor.h"

namespace tutorsynth {

struct InstructionStats {
  std::string instruction_id;
  int steps_executed = 0;  // Executed outcomes only; skips do not count
  int total_steps = 0;
  std::size_t chosen_beam = 0;
  bool chosen_complete = false;
  bool chosen_has_lookahead = false;
  // A non-first beam executed more steps than the first one.
  bool improved_by_bs = false;

  double completion() const {
    return total_steps == 0 ? 0.0
                            : static_cast<double>(steps_executed) / total_steps;
  }
};

// Counts from the beam a tutorial is built from: the highest-scoring beam
// that reached its final step, else the fallback trace.
InstructionStats ComputeInstructionStats(std::span<const ExecutionTrace> traces);

// Consecutive runs of traces that share an instruction id.
std::vector<std::span<const ExecutionTrace>> GroupByInstruction(
    std::span<const ExecutionTrace> traces);

struct MetricsRow {
  std::string config;
  double mean_steps_executed = 0.0;
  double completion_rate = 0.0;  // mean of per-instruction ratios
  int tutorials_improved_by_bs = 0;
  int tutorials_improved_by_lh = 0;
  std::size_t instructions = 0;
};

MetricsRow Aggregate(const std::string& config,
                     std::span<const InstructionStats> stats);

struct AblationConfig {
  std::string name;
  int beams = 1;
  bool lookahead = false;
};

// Baseline, BS, LH, BS+LH.
std::vector<AblationConfig> AblationConfigs();

struct AblationReport {
  std::vector<MetricsRow> rows;
  std::vector<std::vector<InstructionStats>> per_instruction;  // per row
  std::vector<std::string> excluded;  // unparsable instructions

  std::string FormatTable() const;
  nlohmann::ordered_json ToJson() const;
};

// Runs parse + execute for every configuration. `base` supplies the attempt
// budget and worker count. Device resolution failures propagate.
AblationReport RunAblation(const std::vector<Instruction>& corpus,
                           const DeviceSet& devices, const ExecConfig& base);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_METRICS_H_
