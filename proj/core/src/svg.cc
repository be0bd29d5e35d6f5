#include "tutorsynth/svg.h"

#include <sstream>

namespace tutorsynth {
namespace {

std::string Escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void WriteBody(std::ostringstream& out, const Frame& frame) {
  out << "  <rect x=\"0\" y=\"0\" width=\"" << frame.screen_size.width
      << "\" height=\"" << frame.screen_size.height
      << "\" fill=\"#fafafa\"/>\n";
  for (const auto& d : frame.drawn) {
    const Rect& b = d.bounds;
    out << "  <g data-element=\"" << Escape(d.element_id) << "\">\n"
        << "    <rect x=\"" << b.x << "\" y=\"" << b.y << "\" width=\"" << b.w
        << "\" height=\"" << b.h
        << "\" fill=\"#ffffff\" stroke=\"#d0d0d0\"/>\n";
    if (!d.text.empty()) {
      out << "    <text x=\"" << b.x + 24 << "\" y=\"" << b.y + b.h / 2 + 12
          << "\" font-family=\"sans-serif\" font-size=\"36\">"
          << Escape(d.text) << "</text>\n";
    }
    if (d.toggleable) {
      int cx = b.x + b.w - 96;
      int cy = b.y + b.h / 2 - 24;
      out << "    <rect x=\"" << cx << "\" y=\"" << cy
          << "\" width=\"72\" height=\"48\" rx=\"24\" fill=\""
          << (d.checked ? "#1a73e8" : "#9e9e9e") << "\"/>\n";
    }
    out << "  </g>\n";
  }
}

}  // namespace

std::string RenderFrameSvg(const Frame& frame,
                           const std::optional<Rect>& highlight) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << frame.screen_size.width << "\" height=\"" << frame.screen_size.height
      << "\" viewBox=\"0 0 " << frame.screen_size.width << " "
      << frame.screen_size.height << "\" data-screen=\""
      << Escape(frame.screen_id) << "\" data-scroll=\"" << frame.scroll_offset
      << "\">\n";
  WriteBody(out, frame);
  if (highlight) {
    out << "  <rect class=\"highlight\" x=\"" << highlight->x << "\" y=\""
        << highlight->y << "\" width=\"" << highlight->w << "\" height=\""
        << highlight->h
        << "\" fill=\"none\" stroke=\"#e8710a\" stroke-width=\"8\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string RenderCloseupSvg(const Frame& frame, const Rect& crop) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << crop.w
      << "\" height=\"" << crop.h << "\" viewBox=\"" << crop.x << " "
      << crop.y << " " << crop.w << " " << crop.h << "\" data-screen=\""
      << Escape(frame.screen_id) << "\">\n";
  WriteBody(out, frame);
  out << "</svg>\n";
  return out.str();
}

}  // namespace tutorsynth
