#include "halo/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "halo/sweep_io.hpp"

namespace halo {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kMargin = 70;

struct Axis {
  double lo, hi;
  double to_px(double v, bool vertical) const {
    const double t = (v - lo) / (hi - lo);
    return vertical ? kHeight - kMargin - t * (kHeight - 2 * kMargin)
                    : kMargin + t * (kWidth - 2 * kMargin);
  }
};

void tag(std::string& out, const std::string& s) {
  out += s;
  out += "\n";
}

}  // namespace

std::string render_loglog_svg(std::span<const std::pair<double, double>> alpha_value,
                              const std::optional<ExponentFit>& fit, const std::string& title) {
  std::vector<std::pair<double, double>> pts;  // (log(1/a-1), log(value-1))
  for (const auto& [a, v] : alpha_value)
    if (a > 0.0 && a < 1.0 && v > 1.0)
      pts.emplace_back(std::log(1.0 / a - 1.0), std::log(v - 1.0));
  if (pts.empty()) throw std::domain_error("render_loglog_svg: no plottable records");

  Axis xa{pts[0].first, pts[0].first}, ya{pts[0].second, pts[0].second};
  for (const auto& [x, y] : pts) {
    xa.lo = std::min(xa.lo, x);
    xa.hi = std::max(xa.hi, x);
    ya.lo = std::min(ya.lo, y);
    ya.hi = std::max(ya.hi, y);
  }
  const double xpad = std::max(0.5, 0.05 * (xa.hi - xa.lo));
  const double ypad = std::max(0.5, 0.05 * (ya.hi - ya.lo));
  xa.lo -= xpad;
  xa.hi += xpad;
  ya.lo -= ypad;
  ya.hi += ypad;

  std::string svg;
  tag(svg, R"(<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">)");
  tag(svg, R"(<rect width="800" height="600" fill="white"/>)");
  tag(svg, "<text x=\"400\" y=\"32\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"16\">" + title + "</text>");

  // Frame and ticks (5 per axis, labeled in the log coordinate).
  tag(svg, "<rect x=\"" + format_double(kMargin) + "\" y=\"" + format_double(kMargin) +
               "\" width=\"" + format_double(kWidth - 2 * kMargin) + "\" height=\"" +
               format_double(kHeight - 2 * kMargin) + "\" fill=\"none\" stroke=\"black\"/>");
  for (int t = 0; t <= 4; ++t) {
    const double xv = xa.lo + (xa.hi - xa.lo) * t / 4;
    const double yv = ya.lo + (ya.hi - ya.lo) * t / 4;
    const double px = xa.to_px(xv, false), py = ya.to_px(yv, true);
    tag(svg, "<line x1=\"" + format_double(px) + "\" y1=\"" + format_double(kHeight - kMargin) +
                 "\" x2=\"" + format_double(px) + "\" y2=\"" +
                 format_double(kHeight - kMargin + 6) + "\" stroke=\"black\"/>");
    tag(svg, "<text x=\"" + format_double(px) + "\" y=\"" + format_double(kHeight - kMargin + 22) +
                 "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
                 format_double(xv) + "</text>");
    tag(svg, "<line x1=\"" + format_double(kMargin - 6) + "\" y1=\"" + format_double(py) +
                 "\" x2=\"" + format_double(kMargin) + "\" y2=\"" + format_double(py) +
                 "\" stroke=\"black\"/>");
    tag(svg, "<text x=\"" + format_double(kMargin - 10) + "\" y=\"" + format_double(py + 4) +
                 "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
                 format_double(yv) + "</text>");
  }
  tag(svg, "<text x=\"400\" y=\"" + format_double(kHeight - 14) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
               "log(1/alpha - 1)</text>");
  tag(svg, "<text x=\"20\" y=\"300\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"13\" transform=\"rotate(-90 20 300)\">log(value - 1)</text>");

  if (fit) {
    const double y0 = fit->intercept + fit->slope * xa.lo;
    const double y1 = fit->intercept + fit->slope * xa.hi;
    tag(svg, "<line x1=\"" + format_double(xa.to_px(xa.lo, false)) + "\" y1=\"" +
                 format_double(ya.to_px(y0, true)) + "\" x2=\"" +
                 format_double(xa.to_px(xa.hi, false)) + "\" y2=\"" +
                 format_double(ya.to_px(y1, true)) + "\" stroke=\"#c02020\" stroke-width=\"1.5\"/>");
    tag(svg, "<text x=\"" + format_double(kWidth - kMargin - 8) + "\" y=\"" +
                 format_double(kMargin + 20) +
                 "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"14\" "
                 "fill=\"#c02020\">slope = " + format_double(fit->slope) + "</text>");
  }

  for (const auto& [x, y] : pts)
    tag(svg, "<circle cx=\"" + format_double(xa.to_px(x, false)) + "\" cy=\"" +
                 format_double(ya.to_px(y, true)) + "\" r=\"3\" fill=\"#1f4e99\"/>");

  tag(svg, "</svg>");
  return svg;
}

std::string render_records_svg(std::span<const SweepRecord> records,
                               const std::optional<ExponentFit>& fit, const std::string& title) {
  if (records.empty()) throw std::domain_error("render_records_svg: no records");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.emplace_back(r.alpha, r.lower_ratio);
  return render_loglog_svg(pts, fit, title);
}

}  // namespace halo
