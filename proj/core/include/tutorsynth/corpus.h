#ifndef TUTORSYNTH_CORPUS_H_
#define TUTORSYNTH_CORPUS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tutorsynth/device.h"

namespace tutorsynth {

struct Instruction {
  std::string id;  // relative path without extension, '/' replaced by "__"
  std::filesystem::path relative_path;
  std::string text;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every *.txt file under `dir`, recursively, in lexicographic path order.
// Throws CorpusError when the directory cannot be read.
std::vector<Instruction> LoadCorpus(const std::filesystem::path& dir);

using DeviceSet = std::map<std::string, std::shared_ptr<const DeviceDef>>;

// Accepts device JSON files and directories of them. Throws DeviceDefError
// on invalid definitions and CorpusError on duplicate ids or missing paths.
DeviceSet LoadDevices(const std::vector<std::filesystem::path>& paths);

// The device whose id equals the instruction's first path component, or
// the only device when exactly one is loaded. Throws CorpusError otherwise.
std::shared_ptr<const DeviceDef> DeviceFor(const Instruction& instruction,
                                           const DeviceSet& devices);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_CORPUS_H_
