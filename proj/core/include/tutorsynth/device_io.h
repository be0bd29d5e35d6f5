#ifndef TUTORSYNTH_DEVICE_IO_H_
#define TUTORSYNTH_DEVICE_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tutorsynth/device.h"

namespace tutorsynth {

// Thrown when a device definition is malformed. Each entry of errors() is
// prefixed with the JSON path of the offending value, e.g.
// "screens[2].transitions[0].to: unknown screen 'wifi'".
class DeviceDefError : public std::runtime_error {
 public:
  explicit DeviceDefError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Returns every problem found; empty means valid.
std::vector<std::string> ValidateDeviceJson(const nlohmann::json& doc);

DeviceDef DeviceDefFromJson(const nlohmann::json& doc);
DeviceDef LoadDeviceDef(const std::filesystem::path& path);
nlohmann::ordered_json DeviceDefToJson(const DeviceDef& device);

nlohmann::ordered_json FrameToJson(const Frame& frame);
nlohmann::ordered_json RectToJson(const Rect& rect);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_DEVICE_IO_H_
