#include "tutorsynth/pipeline.h"

#include <fstream>
#include <map>
#include <sstream>

#include "tutorsynth/metrics.h"
#include "tutorsynth/svg.h"
#include "tutorsynth/synth.h"

namespace tutorsynth {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct Prepared {
  Instruction instruction;
  std::shared_ptr<const DeviceDef> device;
  std::vector<ParseBeam> beams;
  std::vector<SegmentedInstruction> segments;
  std::size_t result_index = 0;
};

void WriteText(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string FrameRef(const std::string& id, std::size_t beam, std::size_t step,
                     std::size_t n) {
  return "frames/" + id + "/" + std::to_string(beam) + "/" +
         std::to_string(step) + "_" + std::to_string(n) + ".svg";
}

}  // namespace

std::string_view InstructionStatusName(InstructionStatus status) {
  switch (status) {
    case InstructionStatus::kComplete: return "complete";
    case InstructionStatus::kFallback: return "fallback";
    case InstructionStatus::kSkipped: return "skipped";
    case InstructionStatus::kError: return "error";
  }
  return "error";
}

int PipelineReport::Count(InstructionStatus status) const {
  int n = 0;
  for (const auto& r : instructions) n += r.status == status;
  return n;
}

ojson PipelineReport::ToJson() const {
  ojson items = ojson::array();
  for (const auto& r : instructions) {
    ojson item{{"id", r.id}, {"status", InstructionStatusName(r.status)}};
    if (!r.device.empty()) item["device"] = r.device;
    if (r.beams > 0) item["beams"] = r.beams;
    if (r.steps > 0) item["steps"] = r.steps;
    if (!r.message.empty()) item["message"] = r.message;
    items.push_back(std::move(item));
  }
  return {{"summary",
           {{"bundles_written", bundles_written},
            {"complete", Count(InstructionStatus::kComplete)},
            {"fallback", Count(InstructionStatus::kFallback)},
            {"skipped", Count(InstructionStatus::kSkipped)},
            {"error", Count(InstructionStatus::kError)}}},
          {"instructions", std::move(items)}};
}

std::string PipelineReport::Summary() const {
  std::ostringstream out;
  for (const auto& r : instructions) {
    out << "  " << InstructionStatusName(r.status) << "\t" << r.id;
    if (!r.message.empty()) out << "\t" << r.message;
    out << "\n";
  }
  out << bundles_written << " bundles written: "
      << Count(InstructionStatus::kComplete) << " complete, "
      << Count(InstructionStatus::kFallback) << " fallback, "
      << Count(InstructionStatus::kSkipped) << " skipped, "
      << Count(InstructionStatus::kError) << " error\n";
  return out.str();
}

std::vector<ParsedInstruction> ParseCorpus(const std::vector<Instruction>& corpus,
                                           int k) {
  std::vector<ParsedInstruction> out;
  out.reserve(corpus.size());
  for (const auto& ins : corpus) out.push_back({ins, Parse(ins.text, k)});
  return out;
}

void WriteJsonFile(const fs::path& path, const ojson& doc) {
  WriteText(path, doc.dump(2) + "\n");
}

PipelineReport RunPipeline(const PipelineConfig& cfg) {
  ValidateExecConfig(cfg.exec);
  auto corpus = LoadCorpus(cfg.corpus_dir);
  auto devices = LoadDevices(cfg.device_paths);
  auto parsed = ParseCorpus(corpus, cfg.exec.beams);

  if (!cfg.lenient) {
    for (const auto& p : parsed)
      if (!p.result.ok())
        throw PipelineError(p.instruction.id + ": " + p.result.diagnostic.value_or(""));
  }

  PipelineReport report;
  std::vector<Prepared> prepared;
  for (auto& p : parsed) {
    InstructionResult result;
    result.id = p.instruction.id;
    WriteJsonFile(cfg.out_dir / "parsed" / (p.instruction.id + ".json"),
                  ParseResultToJson(p.result));
    if (!p.result.ok()) {
      result.status = InstructionStatus::kSkipped;
      result.message = p.result.diagnostic.value_or("no action found");
      report.instructions.push_back(std::move(result));
      continue;
    }
    try {
      Prepared prep;
      prep.instruction = p.instruction;
      prep.device = DeviceFor(p.instruction, devices);
      result.device = prep.device->id;
      for (const auto& beam : p.result.beams)
        prep.segments.push_back(Segment(p.instruction.text, beam));
      prep.beams = p.result.beams;
      result.beams = prep.beams.size();
      prep.result_index = report.instructions.size();
      prepared.push_back(std::move(prep));
    } catch (const std::exception& e) {
      result.status = InstructionStatus::kError;
      result.message = e.what();
    }
    report.instructions.push_back(std::move(result));
  }

  std::vector<BatchJob> jobs;
  for (const auto& prep : prepared)
    jobs.push_back(BatchJob{prep.instruction.id, prep.device, prep.beams});
  auto traces = ExecuteBatch(jobs, cfg.exec);
  std::map<std::string, std::span<const ExecutionTrace>> groups;
  for (auto group : GroupByInstruction(traces))
    groups.emplace(group.front().instruction_id, group);

  ojson manifest = ojson::array();
  for (const auto& prep : prepared) {
    InstructionResult& result = report.instructions[prep.result_index];
    const std::string& id = prep.instruction.id;
    auto found = groups.find(id);
    if (found == groups.end()) {
      result.status = InstructionStatus::kError;
      result.message = "no traces produced";
      continue;
    }
    auto group = found->second;
    try {
      ojson trace_doc{{"instruction_id", id}, {"traces", ojson::array()}};
      for (const auto& trace : group) {
        auto ref = [&](std::size_t step, std::size_t n) {
          return FrameRef(id, trace.beam_index, step, n);
        };
        trace_doc["traces"].push_back(TraceToJson(trace, ref));
        for (const auto& o : trace.outcomes) {
          if (!o.executed) continue;
          for (std::size_t n = 0; n < o.executed->frames.size(); ++n) {
            const Frame& frame = o.executed->frames[n];
            std::string path = ref(o.step_index, n);
            WriteText(cfg.out_dir / path, RenderFrameSvg(frame));
            manifest.push_back({{"path", path},
                                {"instruction", id},
                                {"beam", trace.beam_index},
                                {"step", o.step_index},
                                {"n", n},
                                {"screen_id", frame.screen_id},
                                {"scroll_offset", frame.scroll_offset},
                                {"tick", frame.tick}});
          }
        }
      }
      WriteJsonFile(cfg.out_dir / "traces" / (id + ".json"), trace_doc);

      Tutorial tutorial = MergeBeams(group, prep.segments);
      WriteBundle(tutorial, cfg.out_dir / "tutorials");
      ++report.bundles_written;
      result.status = tutorial.complete ? InstructionStatus::kComplete
                                        : InstructionStatus::kFallback;
      result.steps = tutorial.steps.size();
    } catch (const std::exception& e) {
      result.status = InstructionStatus::kError;
      result.message = e.what();
    }
  }

  WriteJsonFile(cfg.out_dir / "frame_manifest.json", manifest);
  WriteJsonFile(cfg.out_dir / "report.json", report.ToJson());
  return report;
}

}  // namespace tutorsynth
