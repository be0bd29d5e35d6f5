#ifndef TUTORSYNTH_DEVICE_H_
#define TUTORSYNTH_DEVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tutorsynth/parser.h"
#include "tutorsynth/tokenizer.h"

namespace tutorsynth {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Size {
  int width = 0;
  int height = 0;

  friend bool operator==(const Size&, const Size&) = default;
};

struct Element {
  std::string id;
  std::string text;
  std::string content_desc;
  std::string hint_text;
  Rect bounds;  // layout coordinates; scrolled screens shift on render
  bool clickable = false;
  bool toggleable = false;
  bool checked = false;

  // Tokens of text, content_desc and hint_text together.
  TokenSet AllTokens() const;
  // What a screenshot would show: text, else content_desc, else hint_text.
  const std::string& DisplayText() const;
};

using TransitionKey = std::pair<std::string, ActionKind>;

struct Screen {
  std::string id;
  std::vector<Element> elements;  // document order, top to bottom
  int viewport_rows = 0;          // 0: everything visible, not scrollable
  int ready_delay = 0;            // ticks before the screen accepts actions
  std::map<TransitionKey, std::string> transitions;

  bool scrollable() const { return viewport_rows > 0; }
  int max_scroll_offset() const;
  const Element* FindElement(const std::string& element_id) const;
};

struct DeviceDef {
  std::string id;
  Size screen_size;
  std::string home_screen_id;
  std::map<std::string, std::string> apps;  // app name -> entry screen
  std::map<std::string, Screen> screens;

  const Screen& GetScreen(const std::string& screen_id) const;
  // Case-insensitive, token-normalized app lookup.
  std::optional<std::string> FindApp(const std::string& name) const;
};

enum class DeviceErrorCode {
  kUnknownApp,
  kNotReady,
  kElementNotVisible,
  kNotToggleable,
  kNotScrollable,
};

class DeviceError : public std::runtime_error {
 public:
  DeviceError(DeviceErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  DeviceErrorCode code() const { return code_; }

 private:
  DeviceErrorCode code_;
};

struct DrawnElement {
  std::string element_id;
  Rect bounds;  // on-screen coordinates
  std::string text;
  bool toggleable = false;
  bool checked = false;

  friend bool operator==(const DrawnElement&, const DrawnElement&) = default;
};

struct Frame {
  std::string screen_id;
  int scroll_offset = 0;
  std::int64_t tick = 0;
  Size screen_size;
  std::vector<DrawnElement> drawn;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct ScreenSnapshot {
  std::string screen_id;
  TokenSet element_texts;
};

enum class ScrollDirection { kDown, kUp };

// One running device. Confined to a single thread at a time; the DeviceDef
// it points at is immutable and may be shared.
class DeviceInstance {
 public:
  static DeviceInstance Boot(std::shared_ptr<const DeviceDef> device,
                             const std::optional<std::string>& app);

  bool IsReady() const { return tick_ >= pending_until_; }
  void Wait();
  void Scroll(ScrollDirection direction);
  void Act(const std::string& element_id, ActionKind kind);

  // Visible window with toggle overrides applied.
  std::vector<Element> VisibleElements() const;
  // All elements of the current screen with toggle overrides applied.
  std::vector<Element> CurrentElements() const;
  // On-screen rectangle of a visible element.
  Rect DrawnBounds(const Element& element) const;

  Frame Render() const;
  ScreenSnapshot Snapshot() const;

  const DeviceDef& device() const { return *device_; }
  const Screen& screen() const { return device_->GetScreen(screen_id_); }
  const std::string& current_screen_id() const { return screen_id_; }
  int scroll_offset() const { return scroll_offset_; }
  std::int64_t tick() const { return tick_; }
  std::int64_t pending_until() const { return pending_until_; }
  bool IsChecked(const std::string& screen_id, const Element& element) const;

 private:
  DeviceInstance(std::shared_ptr<const DeviceDef> device, std::string screen);

  std::shared_ptr<const DeviceDef> device_;
  std::string screen_id_;
  int scroll_offset_ = 0;
  std::int64_t tick_ = 0;
  std::int64_t pending_until_ = 0;
  std::map<std::pair<std::string, std::string>, bool> toggle_overrides_;
};

}  // namespace tutorsynth

#endif  // TUTORSYNTH_DEVICE_H_
