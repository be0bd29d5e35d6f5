// tutorsynth command-line entry point: parse, pipeline, ablation, serve.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tutorsynth/corpus.h"
#include "tutorsynth/device_io.h"
#include "tutorsynth/http_service.h"
#include "tutorsynth/metrics.h"
#include "tutorsynth/pipeline.h"
#include "tutorsynth/service.h"

namespace fs = std::filesystem;
using namespace tutorsynth;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string corpus;
  std::vector<std::string> devices;
  std::string out = "out";
  int beams = 3;
  bool lookahead = false;
  int attempts = 5;
  int workers = 1;
  double threshold = kDefaultMatchThreshold;
  int port = 8080;
  std::string host = "127.0.0.1";
  bool lenient = false;
};

ExecConfig ToExecConfig(const Options& o) {
  ExecConfig cfg;
  cfg.beams = o.beams;
  cfg.lookahead = o.lookahead;
  cfg.attempt_budget = o.attempts;
  cfg.workers = o.workers;
  return cfg;
}

std::vector<fs::path> DevicePaths(const Options& o) {
  return {o.devices.begin(), o.devices.end()};
}

int CmdParse(const Options& o) {
  std::vector<Instruction> corpus = LoadCorpus(o.corpus);
  auto parsed = ParseCorpus(corpus, o.beams);
  fs::path dir = fs::path(o.out) / "parsed";
  fs::create_directories(dir);
  int failures = 0;
  for (const auto& p : parsed) {
    WriteJsonFile(dir / (p.instruction.id + ".json"), ParseResultToJson(p.result));
    if (!p.result.ok()) {
      ++failures;
      std::cerr << p.instruction.id << ": " << p.result.diagnostic.value_or("")
                << "\n";
    }
  }
  std::cout << "parsed " << parsed.size() << " instructions into " << dir.string()
            << " (" << failures << " without actions)\n";
  return failures > 0 && !o.lenient ? kExitFailure : 0;
}

int CmdPipeline(const Options& o) {
  PipelineConfig cfg;
  cfg.corpus_dir = o.corpus;
  cfg.device_paths = DevicePaths(o);
  cfg.out_dir = o.out;
  cfg.exec = ToExecConfig(o);
  cfg.lenient = o.lenient;
  cfg.match_threshold = o.threshold;
  PipelineReport report = RunPipeline(cfg);
  std::cout << report.Summary();
  return report.bundles_written > 0 ? 0 : kExitFailure;
}

int CmdAblation(const Options& o) {
  std::vector<Instruction> corpus = LoadCorpus(o.corpus);
  DeviceSet devices = LoadDevices(DevicePaths(o));
  AblationReport report = RunAblation(corpus, devices, ToExecConfig(o));
  std::cout << report.FormatTable();
  fs::create_directories(o.out);
  WriteJsonFile(fs::path(o.out) / "metrics.json", report.ToJson());
  for (const auto& id : report.excluded)
    std::cerr << "excluded (no actions): " << id << "\n";
  return 0;
}

HttpServer* g_server = nullptr;

void OnSignal(int) {
  if (g_server) g_server->Stop();
}

int CmdServe(const Options& o) {
  fs::path bundles = o.out;
  if (fs::is_directory(bundles / "tutorials")) bundles /= "tutorials";
  TutorialService service(bundles, LoadDevices(DevicePaths(o)), o.threshold);
  HttpServer server(service);
  int port = server.Bind(o.host, o.port);
  if (port < 0) {
    std::cerr << "cannot bind " << o.host << ":" << o.port << "\n";
    return kExitFailure;
  }
  g_server = &server;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  std::cout << "serving " << service.tutorial_count() << " tutorials on http://"
            << o.host << ":" << port << std::endl;
  server.Listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turns text instructions into visual tutorials"};
  app.require_subcommand(1);
  Options o;

  auto add_corpus = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", o.corpus, "Instruction corpus directory")->required();
  };
  auto add_devices = [&](CLI::App* cmd) {
    cmd->add_option("--device", o.devices, "Device JSON file or directory (repeatable)")
        ->required();
  };
  auto add_exec = [&](CLI::App* cmd) {
    cmd->add_option("--attempts", o.attempts, "Unsuccessful actions allowed per step")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "Parallel workers")->check(CLI::PositiveNumber);
  };

  CLI::App* parse = app.add_subcommand("parse", "Parse instructions into k-best beams");
  add_corpus(parse);
  parse->add_option("--out", o.out, "Output directory");
  parse->add_option("--beams", o.beams, "Beams per instruction")->check(CLI::PositiveNumber);
  parse->add_flag("--lenient", o.lenient, "Exit 0 even if some files have no actions");

  CLI::App* pipeline = app.add_subcommand("pipeline", "Run the full pipeline");
  add_corpus(pipeline);
  add_devices(pipeline);
  pipeline->add_option("--out", o.out, "Output directory");
  pipeline->add_option("--beams", o.beams, "Beams per instruction")
      ->check(CLI::PositiveNumber);
  pipeline->add_flag("--lookahead", o.lookahead, "Enable one-step look-ahead");
  add_exec(pipeline);
  pipeline->add_option("--threshold", o.threshold, "Match threshold")
      ->check(CLI::Range(0.0, 1.0));
  pipeline->add_flag("--lenient", o.lenient, "Skip unparsable instructions");

  CLI::App* ablation = app.add_subcommand("ablation", "Baseline/BS/LH/BS+LH table");
  add_corpus(ablation);
  add_devices(ablation);
  ablation->add_option("--out", o.out, "Directory for metrics.json");
  add_exec(ablation);

  CLI::App* serve = app.add_subcommand("serve", "Serve tutorial bundles over HTTP");
  serve->add_option("--out", o.out, "Pipeline output or bundle directory");
  add_devices(serve);
  serve->add_option("--port", o.port, "Port (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--threshold", o.threshold, "Match threshold")
      ->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return CmdParse(o);
    if (pipeline->parsed()) return CmdPipeline(o);
    if (ablation->parsed()) return CmdAblation(o);
    if (serve->parsed()) return CmdServe(o);
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DeviceDefError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
