#include "tutorsynth/device_io.h"

#include <fstream>
#include <set>
#include <sstream>

namespace tutorsynth {
namespace {

using nlohmann::json;

std::string JoinErrors(const std::vector<std::string>& errors) {
  std::ostringstream out;
  out << "invalid device definition";
  for (const auto& e : errors) out << "\n  " << e;
  return out.str();
}

class Checker {
 public:
  void Fail(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }

  bool Require(const json& obj, const std::string& path, const char* key,
               json::value_t type) {
    if (!obj.contains(key)) {
      Fail(path, std::string("missing field '") + key + "'");
      return false;
    }
    return Type(obj.at(key), path + "." + key, type);
  }

  bool Type(const json& value, const std::string& path, json::value_t type) {
    bool ok = value.type() == type ||
              (type == json::value_t::number_integer && value.is_number_integer());
    if (!ok) Fail(path, std::string("expected ") + json(type).type_name());
    return ok;
  }

  bool IntPair(const json& obj, const std::string& path, const char* key,
               std::size_t n) {
    if (!Require(obj, path, key, json::value_t::array)) return false;
    const json& arr = obj.at(key);
    if (arr.size() != n) {
      Fail(path + "." + key, "expected " + std::to_string(n) + " integers");
      return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!arr[i].is_number_integer()) {
        Fail(path + "." + key + "[" + std::to_string(i) + "]",
             "expected integer");
        return false;
      }
    }
    return true;
  }

  std::vector<std::string> errors;
};

std::string OptString(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_string() ? it->get<std::string>() : "";
}

bool OptBool(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_boolean() && it->get<bool>();
}

int OptInt(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_number_integer() ? it->get<int>() : 0;
}

}  // namespace

DeviceDefError::DeviceDefError(std::vector<std::string> errors)
    : std::runtime_error(JoinErrors(errors)), errors_(std::move(errors)) {}

std::vector<std::string> ValidateDeviceJson(const json& doc) {
  Checker c;
  if (!doc.is_object()) {
    c.Fail("$", "expected object");
    return c.errors;
  }
  c.Require(doc, "$", "id", json::value_t::string);
  if (c.IntPair(doc, "$", "screen_size", 2)) {
    if (doc["screen_size"][0].get<int>() <= 0 ||
        doc["screen_size"][1].get<int>() <= 0)
      c.Fail("$.screen_size", "dimensions must be positive");
  }
  c.Require(doc, "$", "home", json::value_t::string);
  if (doc.contains("apps")) c.Type(doc["apps"], "$.apps", json::value_t::object);
  if (!c.Require(doc, "$", "screens", json::value_t::array)) return c.errors;

  std::set<std::string> screen_ids;
  const json& screens = doc["screens"];
  for (std::size_t i = 0; i < screens.size(); ++i) {
    const json& s = screens[i];
    std::string path = "screens[" + std::to_string(i) + "]";
    if (!s.is_object()) {
      c.Fail(path, "expected object");
      continue;
    }
    if (c.Require(s, path, "id", json::value_t::string)) {
      if (!screen_ids.insert(s["id"].get<std::string>()).second)
        c.Fail(path + ".id", "duplicate screen id '" +
                                 s["id"].get<std::string>() + "'");
    }
  }

  for (std::size_t i = 0; i < screens.size(); ++i) {
    const json& s = screens[i];
    if (!s.is_object()) continue;
    std::string path = "screens[" + std::to_string(i) + "]";
    int ready_delay = OptInt(s, "ready_delay");
    int viewport = OptInt(s, "viewport_rows");
    if (ready_delay < 0) c.Fail(path + ".ready_delay", "must be >= 0");
    if (viewport < 0) c.Fail(path + ".viewport_rows", "must be >= 0");

    std::set<std::string> element_ids;
    if (c.Require(s, path, "elements", json::value_t::array)) {
      const json& elements = s["elements"];
      if (viewport > 0 && static_cast<std::size_t>(viewport) > elements.size())
        c.Fail(path + ".viewport_rows",
               "exceeds element count " + std::to_string(elements.size()));
      for (std::size_t j = 0; j < elements.size(); ++j) {
        const json& e = elements[j];
        std::string epath = path + ".elements[" + std::to_string(j) + "]";
        if (!e.is_object()) {
          c.Fail(epath, "expected object");
          continue;
        }
        if (c.Require(e, epath, "id", json::value_t::string) &&
            !element_ids.insert(e["id"].get<std::string>()).second)
          c.Fail(epath + ".id",
                 "duplicate element id '" + e["id"].get<std::string>() + "'");
        if (c.IntPair(e, epath, "bounds", 4)) {
          if (e["bounds"][2].get<int>() <= 0 || e["bounds"][3].get<int>() <= 0)
            c.Fail(epath + ".bounds", "width and height must be positive");
        }
        bool interactive = OptBool(e, "clickable") || OptBool(e, "toggleable");
        if (interactive && OptString(e, "text").empty() &&
            OptString(e, "content_desc").empty() &&
            OptString(e, "hint_text").empty())
          c.Fail(epath, "interactive element needs text, content_desc or hint_text");
      }
    }

    if (s.contains("transitions") &&
        c.Type(s["transitions"], path + ".transitions", json::value_t::array)) {
      const json& transitions = s["transitions"];
      for (std::size_t j = 0; j < transitions.size(); ++j) {
        const json& t = transitions[j];
        std::string tpath = path + ".transitions[" + std::to_string(j) + "]";
        if (!t.is_object()) {
          c.Fail(tpath, "expected object");
          continue;
        }
        if (c.Require(t, tpath, "element", json::value_t::string) &&
            !element_ids.count(t["element"].get<std::string>()))
          c.Fail(tpath + ".element", "unknown element '" +
                                         t["element"].get<std::string>() + "'");
        if (c.Require(t, tpath, "action", json::value_t::string)) {
          auto kind = ActionKindFromName(t["action"].get<std::string>());
          if (!kind || *kind == ActionKind::kOpenApp)
            c.Fail(tpath + ".action", "unknown action '" +
                                          t["action"].get<std::string>() + "'");
        }
        if (c.Require(t, tpath, "to", json::value_t::string) &&
            !screen_ids.count(t["to"].get<std::string>()))
          c.Fail(tpath + ".to",
                 "unknown screen '" + t["to"].get<std::string>() + "'");
      }
    }
  }

  if (doc.contains("home") && doc["home"].is_string() &&
      !screen_ids.count(doc["home"].get<std::string>()))
    c.Fail("$.home", "unknown screen '" + doc["home"].get<std::string>() + "'");
  if (doc.contains("apps") && doc["apps"].is_object()) {
    for (const auto& [name, screen] : doc["apps"].items()) {
      if (!screen.is_string() || !screen_ids.count(screen.get<std::string>()))
        c.Fail("$.apps." + name, "unknown screen " + screen.dump());
    }
  }
  return c.errors;
}

DeviceDef DeviceDefFromJson(const json& doc) {
  auto errors = ValidateDeviceJson(doc);
  if (!errors.empty()) throw DeviceDefError(std::move(errors));

  DeviceDef def;
  def.id = doc["id"].get<std::string>();
  def.screen_size = Size{doc["screen_size"][0].get<int>(),
                         doc["screen_size"][1].get<int>()};
  def.home_screen_id = doc["home"].get<std::string>();
  if (doc.contains("apps"))
    for (const auto& [name, screen] : doc["apps"].items())
      def.apps[name] = screen.get<std::string>();

  for (const json& s : doc["screens"]) {
    Screen screen;
    screen.id = s["id"].get<std::string>();
    screen.ready_delay = OptInt(s, "ready_delay");
    screen.viewport_rows = OptInt(s, "viewport_rows");
    for (const json& e : s["elements"]) {
      Element el;
      el.id = e["id"].get<std::string>();
      el.text = OptString(e, "text");
      el.content_desc = OptString(e, "content_desc");
      el.hint_text = OptString(e, "hint_text");
      const json& b = e["bounds"];
      el.bounds = Rect{b[0].get<int>(), b[1].get<int>(), b[2].get<int>(),
                       b[3].get<int>()};
      el.clickable = OptBool(e, "clickable");
      el.toggleable = OptBool(e, "toggleable");
      el.checked = OptBool(e, "checked");
      screen.elements.push_back(std::move(el));
    }
    if (s.contains("transitions")) {
      for (const json& t : s["transitions"]) {
        screen.transitions[{t["element"].get<std::string>(),
                            *ActionKindFromName(t["action"].get<std::string>())}] =
            t["to"].get<std::string>();
      }
    }
    std::string id = screen.id;
    def.screens.emplace(std::move(id), std::move(screen));
  }
  return def;
}

DeviceDef LoadDeviceDef(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read device file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DeviceDefError({path.string() + ": " + e.what()});
  }
  return DeviceDefFromJson(doc);
}

nlohmann::ordered_json RectToJson(const Rect& r) {
  return nlohmann::ordered_json::array({r.x, r.y, r.w, r.h});
}

nlohmann::ordered_json DeviceDefToJson(const DeviceDef& device) {
  nlohmann::ordered_json out;
  out["id"] = device.id;
  out["screen_size"] = {device.screen_size.width, device.screen_size.height};
  out["home"] = device.home_screen_id;
  out["apps"] = nlohmann::ordered_json::object();
  for (const auto& [name, screen] : device.apps) out["apps"][name] = screen;
  out["screens"] = nlohmann::ordered_json::array();
  for (const auto& [id, s] : device.screens) {
    nlohmann::ordered_json screen;
    screen["id"] = s.id;
    screen["ready_delay"] = s.ready_delay;
    screen["viewport_rows"] = s.viewport_rows;
    screen["elements"] = nlohmann::ordered_json::array();
    for (const auto& e : s.elements) {
      screen["elements"].push_back({{"id", e.id},
                                    {"text", e.text},
                                    {"content_desc", e.content_desc},
                                    {"hint_text", e.hint_text},
                                    {"bounds", RectToJson(e.bounds)},
                                    {"clickable", e.clickable},
                                    {"toggleable", e.toggleable},
                                    {"checked", e.checked}});
    }
    screen["transitions"] = nlohmann::ordered_json::array();
    for (const auto& [key, to] : s.transitions) {
      screen["transitions"].push_back({{"element", key.first},
                                       {"action", ActionKindName(key.second)},
                                       {"to", to}});
    }
    out["screens"].push_back(std::move(screen));
  }
  return out;
}

nlohmann::ordered_json FrameToJson(const Frame& frame) {
  nlohmann::ordered_json drawn = nlohmann::ordered_json::array();
  for (const auto& d : frame.drawn) {
    nlohmann::ordered_json item{{"element", d.element_id},
                                {"bounds", RectToJson(d.bounds)},
                                {"text", d.text}};
    if (d.toggleable) item["checked"] = d.checked;
    drawn.push_back(std::move(item));
  }
  return {{"screen_id", frame.screen_id},
          {"scroll_offset", frame.scroll_offset},
          {"tick", frame.tick},
          {"screen_size", {frame.screen_size.width, frame.screen_size.height}},
          {"drawn", std::move(drawn)}};
}

}  // namespace tutorsynth
