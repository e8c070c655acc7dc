#include "acfilter/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace acfilter::plot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double map(double v) const {
    const double t = log ? std::log10(v) : v;
    return (t - lo) / (hi - lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += std::max(1.0, std::ceil((hi - lo) / 8))) {
        out.push_back(std::pow(10.0, e));
      }
      return out;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
      out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
  }
};

Axis make_axis(const std::vector<const std::vector<double>*>& data, bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* d : data) {
    for (double v : *d) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      const double t = log ? std::log10(v) : v;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-300) {
    lo -= 0.5;
    hi += 0.5;
  } else if (!log) {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log};
}

}  // namespace

void write_svg(const std::filesystem::path& path, const LinePlot& plot) {
  std::vector<const std::vector<double>*> xs;
  std::vector<const std::vector<double>*> ys;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("write_svg: series length mismatch");
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  const Axis ax = make_axis(xs, plot.log_x);
  const Axis ay = make_axis(ys, plot.log_y);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + pw * ax.map(v); };
  auto py = [&](double v) { return kTop + ph * (1.0 - ay.map(v)); };

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(plot.title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = px(t);
    out << "<line x1=\"" << x << "\" y1=\"" << kTop + ph << "\" x2=\"" << x << "\" y2=\""
        << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = py(t);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
        << "\" stroke=\"#e0e0e0\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* color = kColors[s % std::size(kColors)];
    std::ostringstream pts;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      const double x = series.x[i];
      const double y = series.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((plot.log_x && x <= 0.0) || (plot.log_y && y <= 0.0)) continue;
      pts << px(x) << ',' << py(y) << ' ';
      if (series.markers) {
        out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"" << color
            << "\"/>\n";
      }
    }
    if (!series.markers) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
          << pts.str() << "\"/>\n";
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    out << "<line x1=\"" << kLeft + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 32
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly + 4 << "\">" << escape(series.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

void write_heatmap_svg(const std::filesystem::path& path, const SpectralField2D& u,
                       const std::string& title) {
  const auto& g = u.grid();
  // at most 128 blocks per axis; each block shows its lower-left sample
  const int sx = (g.nx() + 127) / 128;
  const int sy = (g.ny() + 127) / 128;
  const int bx = (g.nx() + sx - 1) / sx;
  const int by = (g.ny() + sy - 1) / sy;
  const double cell = std::max(1.0, 400.0 / std::max(bx, by));
  const double w = cell * bx;
  const double h = cell * by;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 40 << "\" height=\"" << h + 60
      << "\" font-family=\"sans-serif\" font-size=\"13\" shape-rendering=\"crispEdges\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << 20 + w / 2 << "\" y=\"24\" text-anchor=\"middle\">" << escape(title)
      << "</text>\n";
  for (int b = 0; b < by; ++b) {
    for (int a = 0; a < bx; ++a) {
      const double v = std::clamp(u.value(a * sx, b * sy), -1.0, 1.0);
      int r = 255, gr = 255, bl = 255;
      if (v >= 0) {
        gr = bl = static_cast<int>(std::lround(255 * (1.0 - v)));
      } else {
        r = gr = static_cast<int>(std::lround(255 * (1.0 + v)));
      }
      out << "<rect x=\"" << 20 + cell * a << "\" y=\"" << 40 + cell * (by - 1 - b)
          << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ','
          << gr << ',' << bl << ")\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace acfilter::plot
