#ifndef TUTORSYNTH_PIPELINE_H_
#define TUTORSYNTH_PIPELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/corpus.h"
#include "tutorsynth/executor.h"
#include "tutorsynth/matcher.h"
#include "tutorsynth/parser.h"

namespace tutorsynth {

struct PipelineConfig {
  std::filesystem::path corpus_dir;
  std::vector<std::filesystem::path> device_paths;
  std::filesystem::path out_dir;
  ExecConfig exec;
  bool lenient = false;
  double match_threshold = kDefaultMatchThreshold;
};

enum class InstructionStatus { kComplete, kFallback, kSkipped, kError };
std::string_view InstructionStatusName(InstructionStatus status);

struct InstructionResult {
  std::string id;
  InstructionStatus status = InstructionStatus::kError;
  std::string device;
  std::string message;
  std::size_t beams = 0;
  std::size_t steps = 0;
};

struct PipelineReport {
  std::vector<InstructionResult> instructions;
  int bundles_written = 0;

  int Count(InstructionStatus status) const;
  nlohmann::ordered_json ToJson() const;
  std::string Summary() const;
};

// Unparsable instructions abort the run (PipelineError) unless lenient.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// parse -> segment -> execute -> merge/fallback -> bundle, for the whole
// corpus. Output layout under cfg.out_dir:
//   parsed/<id>.json, traces/<id>.json, frames/<id>/<beam>/<step>_<n>.svg,
//   frame_manifest.json, tutorials/<id>/{tutorial.json,assets/}, report.json
PipelineReport RunPipeline(const PipelineConfig& cfg);

struct ParsedInstruction {
  Instruction instruction;
  ParseResult result;
};

std::vector<ParsedInstruction> ParseCorpus(const std::vector<Instruction>& corpus,
                                           int k);

// Writes `doc` with two-space indentation and a trailing newline.
void WriteJsonFile(const std::filesystem::path& path,
                   const nlohmann::ordered_json& doc);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_PIPELINE_H_
