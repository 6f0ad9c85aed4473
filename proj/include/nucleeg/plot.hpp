#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "nuclear.hpp"

namespace nucleeg {
namespace svg {

// Minimal data-plot canvas: fixed frame, linear axes with a handful of
// ticks, polylines and markers. Enough for the plot command, nothing more.
class Canvas {
public:
  Canvas(double xmin, double xmax, double ymin, double ymax, std::string title)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), title_(std::move(title)) {
    if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
    if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
    body_ << "<rect x='0' y='0' width='" << width_ << "' height='" << height_
          << "' fill='white'/>\n";
  }

  double sx(double x) const {
    return margin_ + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2 * margin_);
  }
  double sy(double y) const {
    return height_ - margin_ - (y - ymin_) / (ymax_ - ymin_) * (height_ - 2 * margin_);
  }

  void circle(double x, double y, double r, const std::string& color) {
    body_ << "<circle cx='" << sx(x) << "' cy='" << sy(y) << "' r='" << r << "' fill='"
          << color << "' fill-opacity='0.7'/>\n";
  }

  void cross(double x, double y, double r, const std::string& color) {
    const double cx = sx(x), cy = sy(y);
    body_ << "<path d='M" << cx - r << ' ' << cy - r << " L" << cx + r << ' ' << cy + r
          << " M" << cx - r << ' ' << cy + r << " L" << cx + r << ' ' << cy - r
          << "' stroke='" << color << "' stroke-width='1.5'/>\n";
  }

  void rect(double x0, double x1, double y0, double y1, const std::string& color) {
    const double left = sx(x0), right = sx(x1);
    const double top = sy(y1), bottom = sy(y0);
    body_ << "<rect x='" << left << "' y='" << top << "' width='" << right - left
          << "' height='" << bottom - top << "' fill='" << color
          << "' fill-opacity='0.55' stroke='" << color << "'/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double opacity = 1.0) {
    if (pts.empty()) return;
    body_ << "<polyline fill='none' stroke='" << color << "' stroke-opacity='" << opacity
          << "' points='";
    for (const auto& [x, y] : pts) body_ << sx(x) << ',' << sy(y) << ' ';
    body_ << "'/>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = margin_ + 6;
    for (const auto& [name, color] : entries) {
      body_ << "<rect x='" << width_ - margin_ - 110 << "' y='" << y - 9
            << "' width='10' height='10' fill='" << color << "'/>\n"
            << "<text x='" << width_ - margin_ - 95 << "' y='" << y
            << "' font-size='12' font-family='sans-serif'>" << name << "</text>\n";
      y += 16;
    }
  }

  void save(const std::filesystem::path& path, const std::string& xlabel,
            const std::string& ylabel, const std::string& note = "") {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write plot file " + path.string());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width_ << "' height='"
        << height_ << "' viewBox='0 0 " << width_ << ' ' << height_ << "'>\n";
    if (!note.empty()) out << "<desc>" << note << "</desc>\n";
    out << body_.str();
    axes(out, xlabel, ylabel);
    out << "<text x='" << width_ / 2 << "' y='18' text-anchor='middle' font-size='14' "
        << "font-family='sans-serif'>" << title_ << "</text>\n";
    out << "</svg>\n";
  }

private:
  static std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }

  void axes(std::ofstream& out, const std::string& xlabel, const std::string& ylabel) {
    out << "<rect x='" << margin_ << "' y='" << margin_ << "' width='"
        << width_ - 2 * margin_ << "' height='" << height_ - 2 * margin_
        << "' fill='none' stroke='black'/>\n";
    constexpr int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
      const double fx = xmin_ + (xmax_ - xmin_) * i / ticks;
      const double fy = ymin_ + (ymax_ - ymin_) * i / ticks;
      out << "<line x1='" << sx(fx) << "' y1='" << height_ - margin_ << "' x2='" << sx(fx)
          << "' y2='" << height_ - margin_ + 5 << "' stroke='black'/>\n"
          << "<text x='" << sx(fx) << "' y='" << height_ - margin_ + 18
          << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
          << tick_label(fx) << "</text>\n"
          << "<line x1='" << margin_ - 5 << "' y1='" << sy(fy) << "' x2='" << margin_
          << "' y2='" << sy(fy) << "' stroke='black'/>\n"
          << "<text x='" << margin_ - 8 << "' y='" << sy(fy) + 4
          << "' text-anchor='end' font-size='11' font-family='sans-serif'>"
          << tick_label(fy) << "</text>\n";
    }
    out << "<text x='" << width_ / 2 << "' y='" << height_ - 8
        << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << xlabel
        << "</text>\n"
        << "<text x='14' y='" << height_ / 2
        << "' text-anchor='middle' font-size='12' font-family='sans-serif' "
        << "transform='rotate(-90 14 " << height_ / 2 << ")'>" << ylabel << "</text>\n";
  }

  static constexpr double width_ = 720, height_ = 540, margin_ = 60;
  double xmin_, xmax_, ymin_, ymax_;
  std::string title_;
  std::ostringstream body_;
};

}  // namespace svg

namespace detail {

inline std::vector<std::string> row_labels(const std::vector<FeatureRow>& rows) {
  std::vector<std::string> labels;
  for (const auto& r : rows)
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end())
      labels.push_back(r.label);
  return labels;
}

inline const char* class_color(std::size_t index) {
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};
  return palette[index % 4];
}

}  // namespace detail

// 2-D scatter of the two dominant features, one marker style per class.
inline void write_scatter_svg(const std::vector<FeatureRow>& rows,
                              const std::filesystem::path& path) {
  if (rows.empty()) throw DataError("scatter plot: empty feature table");
  if (rows.front().values.size() < 2)
    throw DataError("scatter plot: needs at least 2 features per row");
  double xmin = rows[0].values[0], xmax = xmin, ymin = rows[0].values[1], ymax = ymin;
  for (const auto& r : rows) {
    xmin = std::min(xmin, r.values[0]);
    xmax = std::max(xmax, r.values[0]);
    ymin = std::min(ymin, r.values[1]);
    ymax = std::max(ymax, r.values[1]);
  }
  const double padx = 0.05 * (xmax - xmin + 1e-12), pady = 0.05 * (ymax - ymin + 1e-12);
  svg::Canvas canvas(xmin - padx, xmax + padx, ymin - pady, ymax + pady,
                     "Dominant feature pair by class");
  const auto labels = detail::row_labels(rows);
  for (const auto& r : rows) {
    const auto c = static_cast<std::size_t>(
        std::find(labels.begin(), labels.end(), r.label) - labels.begin());
    if (c == 0)
      canvas.circle(r.values[0], r.values[1], 3.0, detail::class_color(c));
    else
      canvas.cross(r.values[0], r.values[1], 3.0, detail::class_color(c));
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < labels.size(); ++i)
    legend.emplace_back(labels[i], detail::class_color(i));
  canvas.legend(legend);
  canvas.save(path, "f1", "f2");
}

inline void write_scatter_csv(const std::vector<FeatureRow>& rows,
                              const std::filesystem::path& path) {
  if (rows.empty()) throw DataError("scatter data: empty feature table");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "trial_id,label,f1,f2\n";
  for (const auto& r : rows) {
    if (r.values.size() < 2) throw DataError("scatter data: needs at least 2 features");
    out << r.trial_id << ',' << r.label << ',' << format_double(r.values[0]) << ','
        << format_double(r.values[1]) << '\n';
  }
}

struct HistogramBins {
  double lo = 0.0;
  double width = 1.0;
  std::size_t count = 1;
  // per class label, counts per bin
  std::vector<std::pair<std::string, std::vector<std::size_t>>> per_class;
};

// Freedman-Diaconis bin width on the pooled first feature; degenerate
// spreads collapse to a single bin.
inline HistogramBins histogram_first_feature(const std::vector<FeatureRow>& rows) {
  if (rows.empty()) throw DataError("histogram: empty feature table");
  std::vector<double> pooled;
  pooled.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.values.empty()) throw DataError("histogram: row without features");
    pooled.push_back(r.values[0]);
  }
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front(), hi = pooled.back();
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(pooled.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < pooled.size() ? pooled[i] * (1.0 - frac) + pooled[i + 1] * frac
                                 : pooled[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double fd_width =
      2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));

  HistogramBins bins;
  if (hi <= lo || fd_width <= 0.0) {
    bins.lo = lo;
    bins.width = std::max(1.0, std::abs(lo) * 1e-9);
    bins.count = 1;
  } else {
    bins.count = std::min<std::size_t>(
        200, static_cast<std::size_t>(std::ceil((hi - lo) / fd_width)));
    bins.count = std::max<std::size_t>(1, bins.count);
    bins.lo = lo;
    bins.width = (hi - lo) / static_cast<double>(bins.count);
  }
  for (const auto& label : detail::row_labels(rows))
    bins.per_class.emplace_back(label, std::vector<std::size_t>(bins.count, 0));
  for (const auto& r : rows) {
    auto slot = static_cast<std::size_t>((r.values[0] - bins.lo) / bins.width);
    if (slot >= bins.count) slot = bins.count - 1;  // right edge closes the last bin
    for (auto& [label, counts] : bins.per_class)
      if (label == r.label) ++counts[slot];
  }
  return bins;
}

inline void write_histogram_csv(const HistogramBins& bins,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# histogram of f1; bin rule: Freedman-Diaconis on pooled values\n";
  out << "bin_lo,bin_hi";
  for (const auto& [label, counts] : bins.per_class) out << ",count_" << label;
  out << '\n';
  for (std::size_t b = 0; b < bins.count; ++b) {
    out << format_double(bins.lo + bins.width * static_cast<double>(b)) << ','
        << format_double(bins.lo + bins.width * static_cast<double>(b + 1));
    for (const auto& [label, counts] : bins.per_class) out << ',' << counts[b];
    out << '\n';
  }
}

inline void write_histogram_svg(const HistogramBins& bins,
                                const std::filesystem::path& path) {
  std::size_t peak = 1;
  for (const auto& [label, counts] : bins.per_class)
    for (std::size_t c : counts) peak = std::max(peak, c);
  svg::Canvas canvas(bins.lo, bins.lo + bins.width * static_cast<double>(bins.count), 0.0,
                     static_cast<double>(peak) * 1.05, "First feature by class");
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t c = 0; c < bins.per_class.size(); ++c) {
    const auto& [label, counts] = bins.per_class[c];
    for (std::size_t b = 0; b < bins.count; ++b) {
      if (counts[b] == 0) continue;
      canvas.rect(bins.lo + bins.width * static_cast<double>(b),
                  bins.lo + bins.width * static_cast<double>(b + 1), 0.0,
                  static_cast<double>(counts[b]), detail::class_color(c));
    }
    legend.emplace_back(label, detail::class_color(c));
  }
  canvas.legend(legend);
  canvas.save(path, "f1", "count",
              "bin rule: Freedman-Diaconis on pooled values");
}

// Per-trial singular-value spectra as polylines colored by class, plus a
// long-format CSV twin (trial_id,label,component,value).
inline void write_spectrum_svg(const std::vector<FeatureRow>& spectra,
                               const std::filesystem::path& path) {
  if (spectra.empty()) throw DataError("spectrum plot: empty table");
  double ymax = 0.0;
  std::size_t n = 0;
  for (const auto& r : spectra) {
    n = std::max(n, r.values.size());
    for (double v : r.values) ymax = std::max(ymax, v);
  }
  if (n < 2) throw DataError("spectrum plot: needs at least 2 components");
  svg::Canvas canvas(1.0, static_cast<double>(n), 0.0, ymax * 1.05,
                     "Singular-value spectra by class");
  const auto labels = detail::row_labels(spectra);
  for (const auto& r : spectra) {
    const auto c = static_cast<std::size_t>(
        std::find(labels.begin(), labels.end(), r.label) - labels.begin());
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < r.values.size(); ++i)
      pts.emplace_back(static_cast<double>(i + 1), r.values[i]);
    canvas.polyline(pts, detail::class_color(c), 0.25);
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t i = 0; i < labels.size(); ++i)
    legend.emplace_back(labels[i], detail::class_color(i));
  canvas.legend(legend);
  canvas.save(path, "component", "singular value");
}

inline void write_spectrum_csv(const std::vector<FeatureRow>& spectra,
                               const std::filesystem::path& path) {
  if (spectra.empty()) throw DataError("spectrum data: empty table");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "trial_id,label,component,value\n";
  for (const auto& r : spectra)
    for (std::size_t i = 0; i < r.values.size(); ++i)
      out << r.trial_id << ',' << r.label << ',' << i + 1 << ','
          << format_double(r.values[i]) << '\n';
}

}  // namespace nucleeg
