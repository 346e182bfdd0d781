#include "nsw/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nsw {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double margin = 0.05 * (hi - lo);
      lo -= margin;
      hi += margin;
    }
  }
};

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  bool has_point = false;
  for (const auto& s : series) has_point |= !s.x.empty();
  if (series.empty() || !has_point) throw std::domain_error("nothing to plot");

  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::domain_error("x/y size mismatch");
    if (!s.y_err.empty() && s.y_err.size() != s.y.size()) {
      throw std::domain_error("y_err size mismatch");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double xv = spec.log_x ? std::log2(s.x[i]) : s.x[i];
      rx.include(xv);
      const double err = s.y_err.empty() ? 0.0 : s.y_err[i];
      ry.include(s.y[i] - err);
      ry.include(s.y[i] + err);
    }
  }
  rx.pad();
  ry.pad();

  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;
  auto px = [&](double v) {
    const double xv = spec.log_x ? std::log2(v) : v;
    return ml + (xv - rx.lo) / (rx.hi - rx.lo) * pw;
  };
  auto py = [&](double v) { return mt + (ry.hi - v) / (ry.hi - ry.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
     << spec.height << "\">\n";
  os << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << spec.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"15\">" << spec.title << "</text>\n";

  // Axes.
  os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
     << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
     << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";

  // Ticks: 6 evenly spaced in plot coordinates.
  for (int i = 0; i <= 5; ++i) {
    const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
    const double vx = spec.log_x ? std::exp2(fx) : fx;
    const double cx = ml + pw * i / 5.0;
    os << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
       << fmt(cx) << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(mt + ph + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << fmt_tick(spec.log_x ? vx : fx) << "</text>\n";
    const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
    const double cy = mt + ph - ph * i / 5.0;
    os << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(cy) << "\" x2=\""
       << fmt(ml) << "\" y2=\"" << fmt(cy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(cy + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << fmt_tick(fy) << "</text>\n";
  }
  os << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << spec.x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << spec.height / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << spec.height / 2 << ")\">" << spec.y_label
     << "</text>\n";

  for (const auto& s : series) {
    if (s.line && s.x.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
      if (s.dashed) os << " stroke-dasharray=\"6 4\"";
      os << " points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) os << " ";
        os << fmt(px(s.x[i])) << "," << fmt(py(s.y[i]));
      }
      os << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!s.y_err.empty() && s.y_err[i] > 0.0) {
        const double cx = px(s.x[i]);
        os << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(py(s.y[i] - s.y_err[i]))
           << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(py(s.y[i] + s.y_err[i]))
           << "\" stroke=\"" << s.color << "\"/>\n";
      }
      if (s.markers) {
        os << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
           << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    }
  }

  // Legend.
  double ly = mt + 10;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    os << "<line x1=\"" << fmt(ml + pw - 140) << "\" y1=\"" << fmt(ly) << "\" x2=\""
       << fmt(ml + pw - 120) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << s.color
       << "\" stroke-width=\"2\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n";
    os << "<text x=\"" << fmt(ml + pw - 114) << "\" y=\"" << fmt(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
    ly += 16;
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace nsw
