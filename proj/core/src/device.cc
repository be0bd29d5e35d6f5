#include "tutorsynth/device.h"

#include <algorithm>

namespace tutorsynth {

TokenSet Element::AllTokens() const {
  TokenSet out = TokenizeToSet(text);
  out.merge(TokenizeToSet(content_desc));
  out.merge(TokenizeToSet(hint_text));
  return out;
}

const std::string& Element::DisplayText() const {
  if (!text.empty()) return text;
  if (!content_desc.empty()) return content_desc;
  return hint_text;
}

int Screen::max_scroll_offset() const {
  if (!scrollable()) return 0;
  return std::max(0, static_cast<int>(elements.size()) - viewport_rows);
}

const Element* Screen::FindElement(const std::string& element_id) const {
  for (const auto& e : elements)
    if (e.id == element_id) return &e;
  return nullptr;
}

const Screen& DeviceDef::GetScreen(const std::string& screen_id) const {
  auto it = screens.find(screen_id);
  if (it == screens.end())
    throw std::out_of_range("device '" + id + "' has no screen '" +
                            screen_id + "'");
  return it->second;
}

std::optional<std::string> DeviceDef::FindApp(const std::string& name) const {
  const std::string wanted = JoinTokens(Tokenize(name));
  for (const auto& [app, screen] : apps)
    if (JoinTokens(Tokenize(app)) == wanted) return app;
  return std::nullopt;
}

DeviceInstance::DeviceInstance(std::shared_ptr<const DeviceDef> device,
                               std::string screen)
    : device_(std::move(device)), screen_id_(std::move(screen)) {
  pending_until_ = this->screen().ready_delay;
}

DeviceInstance DeviceInstance::Boot(std::shared_ptr<const DeviceDef> device,
                                    const std::optional<std::string>& app) {
  std::string entry = device->home_screen_id;
  if (app) {
    auto name = device->FindApp(*app);
    if (!name)
      throw DeviceError(DeviceErrorCode::kUnknownApp,
                        "unknown app '" + *app + "' on device '" +
                            device->id + "'");
    entry = device->apps.at(*name);
  }
  return DeviceInstance(std::move(device), std::move(entry));
}

void DeviceInstance::Wait() { ++tick_; }

void DeviceInstance::Scroll(ScrollDirection direction) {
  const Screen& s = screen();
  if (!s.scrollable())
    throw DeviceError(DeviceErrorCode::kNotScrollable,
                      "screen '" + s.id + "' is not scrollable");
  int offset = scroll_offset_ + (direction == ScrollDirection::kDown
                                     ? s.viewport_rows
                                     : -s.viewport_rows);
  scroll_offset_ = std::clamp(offset, 0, s.max_scroll_offset());
  ++tick_;
}

bool DeviceInstance::IsChecked(const std::string& screen_id,
                               const Element& element) const {
  auto it = toggle_overrides_.find({screen_id, element.id});
  return it == toggle_overrides_.end() ? element.checked : it->second;
}

std::vector<Element> DeviceInstance::CurrentElements() const {
  std::vector<Element> out = screen().elements;
  for (auto& e : out) e.checked = IsChecked(screen_id_, e);
  return out;
}

std::vector<Element> DeviceInstance::VisibleElements() const {
  const Screen& s = screen();
  std::vector<Element> all = CurrentElements();
  if (!s.scrollable()) return all;
  auto first = all.begin() + scroll_offset_;
  auto last = first + std::min<std::ptrdiff_t>(s.viewport_rows, all.end() - first);
  return std::vector<Element>(first, last);
}

Rect DeviceInstance::DrawnBounds(const Element& element) const {
  const Screen& s = screen();
  Rect r = element.bounds;
  if (s.scrollable() && scroll_offset_ > 0 && !s.elements.empty()) {
    r.y -= s.elements[scroll_offset_].bounds.y - s.elements.front().bounds.y;
  }
  return r;
}

void DeviceInstance::Act(const std::string& element_id, ActionKind kind) {
  if (kind == ActionKind::kOpenApp)
    throw std::invalid_argument("open_app is not an on-screen action");
  const Screen& s = screen();
  if (!IsReady())
    throw DeviceError(DeviceErrorCode::kNotReady,
                      "screen '" + s.id + "' is still loading");
  auto visible = VisibleElements();
  auto it = std::find_if(visible.begin(), visible.end(),
                         [&](const Element& e) { return e.id == element_id; });
  if (it == visible.end())
    throw DeviceError(DeviceErrorCode::kElementNotVisible,
                      "element '" + element_id + "' is not visible on '" +
                          s.id + "'");
  if (kind != ActionKind::kTap && !it->toggleable)
    throw DeviceError(DeviceErrorCode::kNotToggleable,
                      "element '" + element_id + "' is not toggleable");

  if (it->toggleable) {
    bool value = kind == ActionKind::kToggleOn    ? true
                 : kind == ActionKind::kToggleOff ? false
                                                  : !it->checked;
    toggle_overrides_[{screen_id_, element_id}] = value;
  }

  ++tick_;
  auto transition = s.transitions.find({element_id, kind});
  if (transition != s.transitions.end()) {
    screen_id_ = transition->second;
    scroll_offset_ = 0;
    pending_until_ = tick_ + screen().ready_delay;
  }
}

Frame DeviceInstance::Render() const {
  Frame frame;
  frame.screen_id = screen_id_;
  frame.scroll_offset = scroll_offset_;
  frame.tick = tick_;
  frame.screen_size = device_->screen_size;
  for (const auto& e : VisibleElements()) {
    frame.drawn.push_back(DrawnElement{e.id, DrawnBounds(e), e.DisplayText(),
                                       e.toggleable, e.checked});
  }
  return frame;
}

ScreenSnapshot DeviceInstance::Snapshot() const {
  ScreenSnapshot snap;
  snap.screen_id = screen_id_;
  for (const auto& e : screen().elements) snap.element_texts.merge(e.AllTokens());
  return snap;
}

}  // namespace tutorsynth
