#include "tutorsynth/service.h"

#include <fstream>
#include <sstream>

#include "tutorsynth/device_io.h"
#include "tutorsynth/svg.h"

namespace tutorsynth {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct TutorialService::Session {
  std::mutex mu;
  std::string id;
  std::string tutorial_id;
  std::string device_id;
  DeviceInstance device;
  MatchState match;
  MatchResult last;
  bool flash = false;

  Session(std::string id, std::string tutorial_id, DeviceInstance inst,
          std::shared_ptr<const Tutorial> tutorial, double threshold)
      : id(std::move(id)),
        tutorial_id(std::move(tutorial_id)),
        device_id(inst.device().id),
        device(std::move(inst)),
        match(std::move(tutorial), threshold) {}

  // Resolves the current screen and returns the match payload.
  ojson Update(const ScreenSnapshot& snap) {
    std::size_t prev = match.last_viewed();
    last = match.Resolve(snap);
    HighlightSignal signal = Highlight(prev, last.current_step);
    flash = signal.flash;
    return {{"current_step", last.current_step},
            {"similarity", last.similarity},
            {"flash", signal.flash},
            {"matched", last.matched},
            {"fade_ms", signal.fade_ms}};
  }

  ojson FramePayload() const {
    Frame frame = device.Render();
    ojson out = FrameToJson(frame);
    out["svg"] = RenderFrameSvg(frame);
    return out;
  }
};

namespace {

ServiceResponse Json(int status, ojson body) {
  ServiceResponse r;
  r.status = status;
  r.body = std::move(body);
  return r;
}

ServiceResponse Error(int status, const std::string& message) {
  return Json(status, {{"error", message}});
}

std::optional<nlohmann::json> ParseBody(const std::string& body) {
  try {
    auto doc = nlohmann::json::parse(body);
    if (doc.is_object()) return doc;
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

bool SafeRelative(const std::string& path) {
  if (path.empty() || path.front() == '/') return false;
  for (const auto& part : fs::path(path))
    if (part == "..") return false;
  return true;
}

}  // namespace

TutorialService::TutorialService(fs::path bundle_dir, DeviceSet devices,
                                 double threshold)
    : bundle_dir_(std::move(bundle_dir)),
      devices_(std::move(devices)),
      threshold_(threshold) {
  std::error_code ec;
  if (!fs::is_directory(bundle_dir_, ec))
    throw std::runtime_error("bundle directory not found: " + bundle_dir_.string());
  for (const auto& entry : fs::directory_iterator(bundle_dir_)) {
    fs::path doc_path = entry.path() / "tutorial.json";
    if (!entry.is_directory() || !fs::is_regular_file(doc_path)) continue;
    std::ifstream in(doc_path);
    auto tutorial = std::make_shared<const Tutorial>(
        TutorialFromJson(nlohmann::json::parse(in)));
    tutorials_.emplace(entry.path().filename().string(), std::move(tutorial));
  }
}

TutorialService::~TutorialService() = default;

ServiceResponse TutorialService::ListTutorials() const {
  ojson ids = ojson::array();
  for (const auto& [id, t] : tutorials_) ids.push_back(id);
  return Json(200, {{"tutorials", std::move(ids)}});
}

ServiceResponse TutorialService::GetTutorial(const std::string& id) const {
  if (!tutorials_.count(id)) return Error(404, "unknown tutorial '" + id + "'");
  std::ifstream in(bundle_dir_ / id / "tutorial.json");
  ServiceResponse r;
  r.body = ojson::parse(in);
  return r;
}

ServiceResponse TutorialService::GetAsset(const std::string& path) const {
  if (!SafeRelative(path)) return Error(404, "invalid asset path");
  fs::path full = bundle_dir_ / path;
  std::error_code ec;
  if (!fs::is_regular_file(full, ec)) return Error(404, "unknown asset '" + path + "'");
  std::ifstream in(full, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  ServiceResponse r;
  r.raw = buf.str();
  r.content_type = full.extension() == ".svg" ? "image/svg+xml"
                                              : "application/octet-stream";
  return r;
}

std::shared_ptr<TutorialService::Session> TutorialService::FindSession(
    const std::string& id) const {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse TutorialService::CreateSession(const std::string& body) {
  auto doc = ParseBody(body);
  if (!doc || !doc->contains("tutorial") || !(*doc)["tutorial"].is_string())
    return Error(400, "expected {\"tutorial\": id, \"device\": id}");
  std::string tutorial_id = (*doc)["tutorial"].get<std::string>();
  auto t = tutorials_.find(tutorial_id);
  if (t == tutorials_.end()) return Error(404, "unknown tutorial '" + tutorial_id + "'");

  std::shared_ptr<const DeviceDef> device;
  if (doc->contains("device")) {
    if (!(*doc)["device"].is_string()) return Error(400, "device must be a string");
    auto d = devices_.find((*doc)["device"].get<std::string>());
    if (d == devices_.end()) return Error(404, "unknown device");
    device = d->second;
  } else {
    // Tutorials produced from <device>/<name>.txt carry the device prefix.
    for (const auto& [id, def] : devices_)
      if (tutorial_id.rfind(id + "__", 0) == 0) device = def;
    if (!device && devices_.size() == 1) device = devices_.begin()->second;
    if (!device) return Error(400, "device is required");
  }

  std::string session_id;
  {
    std::lock_guard lock(sessions_mu_);
    session_id = "s" + std::to_string(next_session_++);
  }
  auto session = std::make_shared<Session>(
      session_id, tutorial_id, DeviceInstance::Boot(device, std::nullopt),
      t->second, threshold_);
  ojson out{{"session_id", session_id}};
  {
    std::lock_guard lock(session->mu);
    ojson match = session->Update(session->device.Snapshot());
    out["frame"] = session->FramePayload();
    out.update(match);
  }
  std::lock_guard lock(sessions_mu_);
  sessions_.emplace(session_id, std::move(session));
  return Json(200, std::move(out));
}

ServiceResponse TutorialService::Act(const std::string& session_id,
                                     const std::string& body) {
  auto session = FindSession(session_id);
  if (!session) return Error(404, "unknown session '" + session_id + "'");
  auto doc = ParseBody(body);
  if (!doc) return Error(400, "expected a JSON object");

  std::lock_guard lock(session->mu);
  DeviceInstance& inst = session->device;
  try {
    if (doc->contains("element") && (*doc)["element"].is_string()) {
      ActionKind kind = ActionKind::kTap;
      if (doc->contains("action")) {
        auto parsed = (*doc)["action"].is_string()
                          ? ActionKindFromName((*doc)["action"].get<std::string>())
                          : std::nullopt;
        if (!parsed || *parsed == ActionKind::kOpenApp)
          return Error(400, "unknown action");
        kind = *parsed;
      }
      // The simulated user waits for loading screens.
      while (!inst.IsReady()) inst.Wait();
      inst.Act((*doc)["element"].get<std::string>(), kind);
    } else if (doc->contains("scroll") && (*doc)["scroll"].is_string()) {
      const std::string dir = (*doc)["scroll"].get<std::string>();
      if (dir != "down" && dir != "up") return Error(400, "scroll must be up or down");
      inst.Scroll(dir == "down" ? ScrollDirection::kDown : ScrollDirection::kUp);
    } else if (doc->contains("open_app") && (*doc)["open_app"].is_string()) {
      inst = DeviceInstance::Boot(
          devices_.at(session->device_id),
          std::optional<std::string>((*doc)["open_app"].get<std::string>()));
    } else {
      return Error(400, "expected one of element, scroll, open_app");
    }
  } catch (const DeviceError& e) {
    return Error(400, e.what());
  }

  ojson out{{"frame", session->FramePayload()}};
  out.update(session->Update(inst.Snapshot()));
  return Json(200, std::move(out));
}

ServiceResponse TutorialService::PostSnapshot(const std::string& body) {
  auto doc = ParseBody(body);
  if (!doc || !doc->contains("session") || !(*doc)["session"].is_string() ||
      !doc->contains("element_texts") || !(*doc)["element_texts"].is_array())
    return Error(400, "expected {\"session\": id, \"element_texts\": [tokens]}");
  ScreenSnapshot snap;
  for (const auto& t : (*doc)["element_texts"]) {
    if (!t.is_string()) return Error(400, "element_texts must be strings");
    snap.element_texts.merge(TokenizeToSet(t.get<std::string>()));
  }
  auto session = FindSession((*doc)["session"].get<std::string>());
  if (!session) return Error(404, "unknown session");
  std::lock_guard lock(session->mu);
  ojson out = session->Update(snap);
  return Json(200, std::move(out));
}

ServiceResponse TutorialService::GetSession(const std::string& session_id) const {
  auto session = FindSession(session_id);
  if (!session) return Error(404, "unknown session '" + session_id + "'");
  std::lock_guard lock(session->mu);
  ojson history = ojson::array();
  for (const auto& h : session->match.history())
    history.push_back({{"digest", h.snapshot_digest},
                       {"step", h.resolved_step},
                       {"similarity", h.similarity}});
  return Json(
      200,
      {{"session_id", session->id},
       {"tutorial", session->tutorial_id},
       {"device", session->device_id},
       {"current_step", session->last.current_step},
       {"last_viewed", session->match.last_viewed()},
       {"similarity", session->last.similarity},
       {"frame", session->FramePayload()},
       {"history", std::move(history)}});
}

}  // namespace tutorsynth
