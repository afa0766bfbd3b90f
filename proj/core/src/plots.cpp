#include "smaneck/plots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smaneck/errors.hpp"

namespace smaneck {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v, int digits = 6) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, digits);
  return std::string(buf, r.ptr);
}

struct Series {
  std::string label;
  std::vector<double> y;
  bool dashed = false;
};

struct Range {
  double lo, hi;
};

// Rounds a span to 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

Range padded(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {0.0, 1.0};
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(1.0, std::abs(hi) * 0.05);
    return {lo - pad, hi + pad};
  }
  const double step = nice_step(hi - lo, 5);
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step};
}

class Panel {
public:
  Panel(std::string title, std::string x_label, std::string y_label,
        std::vector<double> x)
      : title_(std::move(title)), x_label_(std::move(x_label)),
        y_label_(std::move(y_label)), x_(std::move(x)) {}

  void add(Series s) { series_.push_back(std::move(s)); }
  void hline(double y, std::string label) { hlines_.push_back({y, std::move(label)}); }
  void marker(double x, double y, std::string id) {
    markers_.push_back({x, y, std::move(id)});
  }

  std::string render() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series_) {
      for (double v : s.y) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    for (const auto& h : hlines_) {
      lo = std::min(lo, h.y);
      hi = std::max(hi, h.y);
    }
    const Range yr = padded(lo, hi);
    const Range xr{x_.front(), x_.back() > x_.front() ? x_.back() : x_.front() + 1.0};

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string o;
    o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         title_ + "</text>\n";

    o += "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
    o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\"/>\n</g>\n";

    o += "<g class=\"ticks\">\n";
    const double ys = nice_step(yr.hi - yr.lo, 5);
    for (double v = yr.lo; v <= yr.hi + 0.5 * ys; v += ys) {
      const double y = sy(v);
      o += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" stroke=\"black\"/>";
      o += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + num(std::abs(v) < 1e-9 * ys ? 0.0 : v, 5) + "</text>\n";
    }
    const double xs = nice_step(xr.hi - xr.lo, 5);
    for (double v = std::ceil(xr.lo / xs) * xs; v <= xr.hi + 1e-9 * xs; v += xs) {
      const double x = sx(v);
      o += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kTop + ph + 4) + "\" stroke=\"black\"/>";
      o += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + num(std::abs(v) < 1e-9 * xs ? 0.0 : v, 5) + "</text>\n";
    }
    o += "</g>\n";
    o += "<text class=\"xlabel\" x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\">" + x_label_ + "</text>\n";
    o += "<text class=\"ylabel\" x=\"18\" y=\"" + num(kTop + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + num(kTop + ph / 2) + ")\">" +
         y_label_ + "</text>\n";

    for (const auto& h : hlines_) {
      const double y = sy(h.y);
      o += "<line class=\"threshold\" x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kLeft + pw) + "\" y2=\"" + num(y) +
           "\" stroke=\"gray\" stroke-dasharray=\"6 3\"/>";
      o += "<text x=\"" + num(kLeft + pw - 4) + "\" y=\"" + num(y - 4) +
           "\" text-anchor=\"end\" fill=\"gray\">" + h.label + "</text>\n";
    }

    for (std::size_t i = 0; i < series_.size(); ++i) {
      const auto& s = series_[i];
      const char* color = kPalette[i % std::size(kPalette)];
      o += "<polyline class=\"series\" fill=\"none\" stroke=\"";
      o += color;
      o += "\" stroke-width=\"1.5\"";
      if (s.dashed) o += " stroke-dasharray=\"4 2\"";
      o += " points=\"";
      for (std::size_t j = 0; j < s.y.size(); ++j) {
        if (j) o += ' ';
        o += num(sx(x_[j])) + "," + num(sy(s.y[j]));
      }
      o += "\"/>\n";
      o += "<text x=\"" + num(kLeft + 8) + "\" y=\"" + num(kTop + 16 + 14 * double(i)) +
           "\" fill=\"" + color + "\">" + s.label + "</text>\n";
    }

    for (const auto& m : markers_) {
      o += "<circle id=\"" + m.id + "\" cx=\"" + num(sx(m.x)) + "\" cy=\"" + num(sy(m.y)) +
           "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    o += "</svg>\n";
    return o;
  }

private:
  struct HLine {
    double y;
    std::string label;
  };
  struct Marker {
    double x, y;
    std::string id;
  };

  std::string title_, x_label_, y_label_;
  std::vector<double> x_;
  std::vector<Series> series_;
  std::vector<HLine> hlines_;
  std::vector<Marker> markers_;
};

std::size_t lead_spring(const SimTrace& trace) {
  std::size_t lead = 0;
  double hottest = -std::numeric_limits<double>::infinity();
  for (const auto& row : trace.rows) {
    for (std::size_t i = 0; i < row.springs.size(); ++i) {
      if (row.springs[i].temperature > hottest) {
        hottest = row.springs[i].temperature;
        lead = i;
      }
    }
  }
  return lead;
}

}  // namespace

long austenite_crossing_row(const SimTrace& trace) {
  if (trace.rows.empty() || trace.rows.front().springs.empty()) return -1;
  const std::size_t lead = lead_spring(trace);
  for (std::size_t n = 1; n < trace.rows.size(); ++n) {
    if (trace.rows[n].springs[lead].fraction <
        trace.rows[n - 1].springs[lead].fraction) {
      return static_cast<long>(n);
    }
  }
  return -1;
}

std::vector<PlotFile> render_plots(const SimTrace& trace,
                                   const std::string& run_id) {
  if (trace.rows.empty()) throw std::invalid_argument("cannot plot an empty trace");
  constexpr double deg = 180.0 / std::numbers::pi;

  std::vector<double> t;
  for (const auto& row : trace.rows) t.push_back(row.time);
  const std::size_t springs = trace.rows.front().springs.size();

  std::vector<PlotFile> files;
  const auto emit = [&](const char* panel, const Panel& chart) {
    files.push_back({run_id + "_" + panel + ".svg", chart.render()});
  };

  {
    Panel c("Bending-plane angle", "time (s)", "phi (deg)", t);
    Series s{"phi", {}};
    for (const auto& row : trace.rows) s.y.push_back(row.reported_phi * deg);
    c.add(std::move(s));
    emit("phi", c);
  }
  {
    Panel c("Bending angle", "time (s)", "theta (deg)", t);
    Series s{"theta", {}};
    for (const auto& row : trace.rows) s.y.push_back(row.bending_angle * deg);
    c.add(std::move(s));
    emit("theta", c);
  }
  {
    Panel c("Unit tendon forces", "time (s)", "force (N)", t);
    for (int k = 0; k < kUnitCount; ++k) {
      Series s{"F" + std::to_string(k + 1), {}};
      for (const auto& row : trace.rows) s.y.push_back(row.unit_forces[k]);
      c.add(std::move(s));
    }
    emit("force", c);
  }
  {
    Panel c("Fiber temperature", "time (s)", "temperature (K)", t);
    for (std::size_t i = 0; i < springs; ++i) {
      Series s{"T" + std::to_string(i + 1), {}};
      for (const auto& row : trace.rows) s.y.push_back(row.springs[i].temperature);
      c.add(std::move(s));
    }
    if (springs > 0) {
      const std::size_t lead = lead_spring(trace);
      const long cross = austenite_crossing_row(trace);
      const auto& ref = trace.rows[cross >= 0 ? std::size_t(cross) : 0].springs[lead];
      c.hline(ref.austenite_start, "A_s' = " + num(ref.austenite_start, 5) + " K");
      c.hline(ref.austenite_finish, "A_f' = " + num(ref.austenite_finish, 5) + " K");
      if (cross >= 0) {
        c.marker(t[std::size_t(cross)], ref.temperature, "as-crossing");
      }
    }
    emit("temperature", c);
  }
  {
    Panel c("Martensite fraction", "time (s)", "xi (1)", t);
    for (std::size_t i = 0; i < springs; ++i) {
      Series s{"xi" + std::to_string(i + 1), {}};
      for (const auto& row : trace.rows) s.y.push_back(row.springs[i].fraction);
      c.add(std::move(s));
    }
    emit("xi", c);
  }
  return files;
}

std::vector<std::filesystem::path> emit_plots(
    const SimTrace& trace, const std::filesystem::path& directory,
    const std::string& run_id) {
  std::vector<std::filesystem::path> written;
  // Render everything first so a bad trace leaves no partial output.
  for (const auto& f : render_plots(trace, run_id)) {
    const auto path = directory / f.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << f.content;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
    written.push_back(path);
  }
  return written;
}

}  // namespace smaneck
