#include "proxsmooth/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "proxsmooth/errors.hpp"

namespace proxsmooth {

namespace {

std::string xml_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
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

std::string format_fixed(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct ChartPoint {
  double x;  // log10 delta
  double y;  // log10 value
};

// Maps data space (log10) to pixel space for one axis.
struct AxisMap {
  double lo = 0.0;
  double hi = 1.0;
  double pix_lo = 0.0;
  double pix_hi = 1.0;
  double at(double v) const {
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

void extend(double v, double& lo, double& hi) {
  lo = std::min(lo, v);
  hi = std::max(hi, v);
}

std::string polyline(const std::vector<ChartPoint>& pts, const AxisMap& xm,
                     const AxisMap& ym, const char* style) {
  if (pts.empty()) return "";
  std::string out = "  <polyline fill=\"none\" ";
  out += style;
  out += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += format_fixed(xm.at(pts[i].x), "%.2f");
    out += ',';
    out += format_fixed(ym.at(pts[i].y), "%.2f");
  }
  out += "\"/>\n";
  return out;
}

std::string tick_label(int exponent) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "1e%d", exponent);
  return buf;
}

}  // namespace

std::string format_csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const RateSweep& sweep, const SweepPoint& point) {
  std::string row;
  row += csv_field(sweep.instance_id);
  row += ',';
  row += to_string(sweep.method);
  row += ',';
  row += std::to_string(sweep.n);
  row += ',';
  row += format_csv_number(sweep.lambda);
  row += ',';
  row += format_csv_number(sweep.mu);
  row += ',';
  row += format_csv_number(point.delta);
  row += ',';
  row += format_csv_number(point.err);
  row += ',';
  row += format_csv_number(point.spread);
  row += ',';
  row += format_csv_number(point.bound);
  row += ',';
  row += to_string(sweep.bound_kind);
  row += ',';
  row += format_csv_number(point.ess);
  row += ',';
  row += format_csv_number(point.acceptance);
  row += ',';
  row += csv_field(point.status);
  row += ',';
  row += std::to_string(point.seed);
  row += '\n';
  return row;
}

std::string to_csv(const RateSweep& sweep) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepPoint& point : sweep.points) out += csv_row(sweep, point);
  return out;
}

std::string to_svg(const RateSweep& sweep, const std::optional<RateFit>& fit) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 540.0;
  constexpr double kLeft = 84.0;
  constexpr double kRight = 696.0;
  constexpr double kTop = 56.0;
  constexpr double kBottom = 476.0;

  std::vector<ChartPoint> err_pts;
  std::vector<ChartPoint> bound_pts;
  double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
  for (const SweepPoint& pt : sweep.points) {
    if (pt.status != "ok") continue;
    const double x = std::log10(pt.delta);
    if (std::isfinite(pt.err) && pt.err > 0.0) {
      const double y = std::log10(pt.err);
      err_pts.push_back({x, y});
      extend(x, xlo, xhi);
      extend(y, ylo, yhi);
    }
    if (std::isfinite(pt.bound) && pt.bound > 0.0) {
      const double y = std::log10(pt.bound);
      bound_pts.push_back({x, y});
      extend(x, xlo, xhi);
      extend(y, ylo, yhi);
    }
  }

  std::vector<ChartPoint> fit_pts;
  if (fit && !fit->window.empty()) {
    const double d_first =
        sweep.points[static_cast<std::size_t>(fit->window.front())].delta;
    const double d_last =
        sweep.points[static_cast<std::size_t>(fit->window.back())].delta;
    for (double d : {d_first, d_last}) {
      const double v = fit->intercept + fit->slope * std::log(d);
      const double y = v / std::log(10.0);  // log10 of exp(v)
      fit_pts.push_back({std::log10(d), y});
      extend(y, ylo, yhi);
    }
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  const std::string title = xml_escape(sweep.instance_id) + "  (" +
                            to_string(sweep.method) + ", bound " +
                            to_string(sweep.bound_kind) + ")";
  svg << "  <text x=\"" << kLeft << "\" y=\"30\" font-family=\"monospace\" "
         "font-size=\"16\">" << title << "</text>\n";

  if (err_pts.empty() && bound_pts.empty()) {
    svg << "  <text x=\"" << kLeft << "\" y=\"260\" font-family=\"monospace\" "
           "font-size=\"14\">no plottable points (all grid points failed)</text>\n";
    svg << "</svg>\n";
    return svg.str();
  }

  if (!(xhi > xlo)) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  if (!(yhi > ylo)) {
    ylo -= 0.5;
    yhi += 0.5;
  }
  xlo -= 0.15;
  xhi += 0.15;
  ylo -= 0.25;
  yhi += 0.25;
  const AxisMap xm{xlo, xhi, kLeft, kRight};
  const AxisMap ym{ylo, yhi, kBottom, kTop};  // pixel y grows downward

  // frame and decade gridlines with tick labels
  svg << "  <rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kRight - kLeft << "\" height=\"" << kBottom - kTop
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(xlo)); e <= static_cast<int>(std::floor(xhi));
       ++e) {
    const double px = xm.at(e);
    svg << "  <line x1=\"" << format_fixed(px, "%.2f") << "\" y1=\"" << kTop
        << "\" x2=\"" << format_fixed(px, "%.2f") << "\" y2=\"" << kBottom
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "  <text x=\"" << format_fixed(px, "%.2f") << "\" y=\"" << kBottom + 22
        << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">"
        << tick_label(e) << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ylo)); e <= static_cast<int>(std::floor(yhi));
       ++e) {
    const double py = ym.at(e);
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << format_fixed(py, "%.2f")
        << "\" x2=\"" << kRight << "\" y2=\"" << format_fixed(py, "%.2f")
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "  <text x=\"" << kLeft - 8 << "\" y=\"" << format_fixed(py + 4, "%.2f")
        << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">"
        << tick_label(e) << "</text>\n";
  }
  svg << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 44
      << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">"
         "delta</text>\n";
  svg << "  <text x=\"20\" y=\"" << (kTop + kBottom) / 2
      << "\" font-family=\"monospace\" font-size=\"13\" "
         "transform=\"rotate(-90 20 " << (kTop + kBottom) / 2
      << ")\" text-anchor=\"middle\">error</text>\n";

  svg << polyline(bound_pts, xm, ym,
                  "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
  if (!fit_pts.empty()) {
    svg << polyline(fit_pts, xm, ym, "stroke=\"#2ca02c\" stroke-width=\"1.5\"");
  }
  svg << polyline(err_pts, xm, ym, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
  for (const ChartPoint& pt : err_pts) {
    svg << "  <circle cx=\"" << format_fixed(xm.at(pt.x), "%.2f") << "\" cy=\""
        << format_fixed(ym.at(pt.y), "%.2f")
        << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
  }

  // legend
  double ly = kTop + 18.0;
  auto legend_line = [&](const char* style, const std::string& label) {
    svg << "  <line x1=\"" << kRight - 190 << "\" y1=\"" << ly << "\" x2=\""
        << kRight - 150 << "\" y2=\"" << ly << "\" " << style << "/>\n";
    svg << "  <text x=\"" << kRight - 142 << "\" y=\"" << ly + 4
        << "\" font-family=\"monospace\" font-size=\"12\">" << label << "</text>\n";
    ly += 18.0;
  };
  legend_line("stroke=\"#1f77b4\" stroke-width=\"1.5\"", "error");
  if (!bound_pts.empty()) {
    legend_line("stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"",
                "bound");
  }
  if (fit && !fit_pts.empty()) {
    legend_line("stroke=\"#2ca02c\" stroke-width=\"1.5\"",
                "fit: slope " + format_fixed(fit->slope, "%.4g") + " (R^2 " +
                    format_fixed(fit->r_squared, "%.4g") + ")");
  }

  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ParameterError("cannot open '" + path + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw ParameterError("failed while writing '" + path + "'");
  }
}

std::string to_text(const RunManifest& manifest) {
  std::string out = "manifest:\n";
  out += "  version: ";
  out += manifest.version;
  out += '\n';
  out += "  command: ";
  out += manifest.command_line;
  out += '\n';
  out += "  seed: ";
  out += std::to_string(manifest.seed);
  out += '\n';
  out += "  instances: ";
  for (std::size_t i = 0; i < manifest.instance_ids.size(); ++i) {
    if (i) out += "; ";
    out += manifest.instance_ids[i];
  }
  if (manifest.instance_ids.empty()) out += "-";
  out += '\n';
  out += "  grid: ";
  out += manifest.grid.empty() ? "-" : manifest.grid;
  out += '\n';
  out += "  outputs: ";
  for (std::size_t i = 0; i < manifest.outputs.size(); ++i) {
    if (i) out += "; ";
    out += manifest.outputs[i];
  }
  if (manifest.outputs.empty()) out += "-";
  out += '\n';
  return out;
}

}  // namespace proxsmooth
