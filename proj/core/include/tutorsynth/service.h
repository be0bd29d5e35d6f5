#ifndef TUTORSYNTH_SERVICE_H_
#define TUTORSYNTH_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "tutorsynth/corpus.h"
#include "tutorsynth/matcher.h"
#include "tutorsynth/synth.h"

namespace tutorsynth {

struct ServiceResponse {
  int status = 200;
  nlohmann::ordered_json body;
  // Non-JSON payloads (assets) go here with their content type.
  std::string raw;
  std::string content_type = "application/json";
};

// Transport-independent request handlers behind the HTTP API. Thread-safe;
// events for one session are serialized in arrival order.
class TutorialService {
 public:
  // `bundle_dir` holds one <id>/tutorial.json per tutorial.
  TutorialService(std::filesystem::path bundle_dir, DeviceSet devices,
                  double threshold = kDefaultMatchThreshold);
  ~TutorialService();

  ServiceResponse ListTutorials() const;
  ServiceResponse GetTutorial(const std::string& id) const;
  ServiceResponse GetAsset(const std::string& path) const;

  // {tutorial, device?}
  ServiceResponse CreateSession(const std::string& body);
  // {element, action?} | {scroll: "down"|"up"} | {open_app}
  ServiceResponse Act(const std::string& session_id, const std::string& body);
  // {session, element_texts: [...]}
  ServiceResponse PostSnapshot(const std::string& body);
  ServiceResponse GetSession(const std::string& session_id) const;

  std::size_t tutorial_count() const { return tutorials_.size(); }

 private:
  struct Session;

  std::shared_ptr<Session> FindSession(const std::string& id) const;

  std::filesystem::path bundle_dir_;
  DeviceSet devices_;
  double threshold_;
  std::map<std::string, std::shared_ptr<const Tutorial>> tutorials_;

  mutable std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_session_ = 1;
};

}  // namespace tutorsynth

#endif  // TUTORSYNTH_SERVICE_H_
