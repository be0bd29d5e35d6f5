#ifndef TUTORSYNTH_SVG_H_
#define TUTORSYNTH_SVG_H_

#include <optional>
#include <string>

#include "tutorsynth/device.h"

namespace tutorsynth {

// Full-screen screenshot. `highlight`, when set, is outlined on top.
std::string RenderFrameSvg(const Frame& frame,
                           const std::optional<Rect>& highlight = std::nullopt);

// The same screenshot cropped to `crop` via the viewBox.
std::string RenderCloseupSvg(const Frame& frame, const Rect& crop);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_SVG_H_
