#include "levyprem_cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace levyprem::cli {
namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const {
    return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  }
};

std::string header(const std::string& title, const Frame& f, const std::string& x_label,
                   const std::string& y_label) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
                  "\" height=\"" + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  s += "<rect x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kMargin) + "\" width=\"" +
       fmt(kWidth - 2 * kMargin) + "\" height=\"" + fmt(kHeight - 2 * kMargin) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 12) +
       "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + fmt(kHeight / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fmt(kHeight / 2) + ")\">" + escape(y_label) + "</text>\n";
  const auto tick = [&](double x, double y, const std::string& label, const char* anchor) {
    s += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" text-anchor=\"" + anchor + "\">" + label +
         "</text>\n";
  };
  tick(f.px(f.x0), kHeight - kMargin + 16, fmt(f.x0), "start");
  tick(f.px(f.x1), kHeight - kMargin + 16, fmt(f.x1), "end");
  tick(kMargin - 4, f.py(f.y0), fmt(f.y0), "end");
  tick(kMargin - 4, f.py(f.y1) + 10, fmt(f.y1), "end");
  return s;
}

}  // namespace

std::string scatter_svg(std::span<const std::array<double, 2>> points, const std::string& title,
                        const std::string& x_label, const std::string& y_label, bool diagonal) {
  Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (const auto& p : points) {
    f.x0 = std::min(f.x0, p[0]);
    f.x1 = std::max(f.x1, p[0]);
    f.y0 = std::min(f.y0, p[1]);
    f.y1 = std::max(f.y1, p[1]);
  }
  if (points.empty()) f = {0.0, 1.0, 0.0, 1.0};
  if (diagonal) {
    f.x0 = f.y0 = std::min(f.x0, f.y0);
    f.x1 = f.y1 = std::max(f.x1, f.y1);
  }
  if (f.x1 <= f.x0) f.x1 = f.x0 + 1.0;
  if (f.y1 <= f.y0) f.y1 = f.y0 + 1.0;

  std::string s = header(title, f, x_label, y_label);
  if (diagonal) {
    s += "<line x1=\"" + fmt(f.px(f.x0)) + "\" y1=\"" + fmt(f.py(f.y0)) + "\" x2=\"" +
         fmt(f.px(f.x1)) + "\" y2=\"" + fmt(f.py(f.y1)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  const std::size_t stride = std::max<std::size_t>(1, points.size() / 2000);
  for (std::size_t i = 0; i < points.size(); i += stride) {
    s += "<circle cx=\"" + fmt(f.px(points[i][0])) + "\" cy=\"" + fmt(f.py(points[i][1])) +
         "\" r=\"1.5\" fill=\"steelblue\"/>\n";
  }
  return s + "</svg>\n";
}

std::string histogram_svg(std::span<const std::size_t> counts, const std::string& title) {
  std::size_t total = 0;
  std::size_t top = 1;
  for (std::size_t c : counts) {
    total += c;
    top = std::max(top, c);
  }
  const double expected = counts.empty() ? 0.0 : static_cast<double>(total) / counts.size();
  const Frame f{0.0, 1.0, 0.0, std::max(static_cast<double>(top), expected) * 1.1};
  std::string s = header(title, f, "PIT value", "count");
  const double width = 1.0 / static_cast<double>(std::max<std::size_t>(1, counts.size()));
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double x = static_cast<double>(k) * width;
    const double h = static_cast<double>(counts[k]);
    s += "<rect x=\"" + fmt(f.px(x)) + "\" y=\"" + fmt(f.py(h)) + "\" width=\"" +
         fmt(f.px(x + width) - f.px(x)) + "\" height=\"" + fmt(f.py(0.0) - f.py(h)) +
         "\" fill=\"lightsteelblue\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  s += "<line x1=\"" + fmt(f.px(0.0)) + "\" y1=\"" + fmt(f.py(expected)) + "\" x2=\"" +
       fmt(f.px(1.0)) + "\" y2=\"" + fmt(f.py(expected)) + "\" stroke=\"firebrick\" stroke-dasharray=\"4 3\"/>\n";
  return s + "</svg>\n";
}

}  // namespace levyprem::cli
