#include "tutorsynth/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tutorsynth/device_io.h"

namespace tutorsynth {

namespace fs = std::filesystem;

std::vector<Instruction> LoadCorpus(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw CorpusError("corpus directory not readable: " + dir.string());

  std::vector<fs::path> files;
  fs::recursive_directory_iterator it(dir, ec), end;
  if (ec) throw CorpusError("cannot read corpus " + dir.string() + ": " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw CorpusError("cannot read corpus " + dir.string() + ": " + ec.message());
    if (it->is_regular_file() && it->path().extension() == ".txt" &&
        it->path().filename().string().front() != '.')
      files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Instruction> out;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    Instruction ins;
    ins.relative_path = fs::relative(file, dir);
    std::string id = (ins.relative_path.parent_path() / ins.relative_path.stem())
                         .generic_string();
    for (std::size_t p = id.find('/'); p != std::string::npos; p = id.find('/', p))
      id.replace(p, 1, "__");
    ins.id = id;
    ins.text = buf.str();
    out.push_back(std::move(ins));
  }
  return out;
}

DeviceSet LoadDevices(const std::vector<fs::path>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw CorpusError("device path not found: " + p.string());
    }
  }
  DeviceSet out;
  for (const auto& f : files) {
    auto def = std::make_shared<const DeviceDef>(LoadDeviceDef(f));
    if (!out.emplace(def->id, def).second)
      throw CorpusError("duplicate device id '" + def->id + "' in " + f.string());
  }
  return out;
}

std::shared_ptr<const DeviceDef> DeviceFor(const Instruction& instruction,
                                           const DeviceSet& devices) {
  auto first = instruction.relative_path.begin();
  if (instruction.relative_path.has_parent_path() &&
      first != instruction.relative_path.end()) {
    auto it = devices.find(first->string());
    if (it != devices.end()) return it->second;
  }
  if (devices.size() == 1) return devices.begin()->second;
  throw CorpusError("no device for instruction '" + instruction.id + "'");
}

}  // namespace tutorsynth
