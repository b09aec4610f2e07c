#include "rlk/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <system_error>

#include <fmt/format.h>

#include "report_io.hpp"

namespace rlk {

namespace detail {

void
write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot write " + path.string());
  }
}

} // namespace detail

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string
escape_xml(const std::string& s) {
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

std::string
file_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "trace" : out;
}

// "Nice" tick step of about range / target.
double
tick_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      return m * mag;
    }
  }
  return 10.0 * mag;
}

struct Frame {
  double width{640};
  double height{420};
  double left{70};
  double right{150};
  double top{40};
  double bottom{50};
  double x0, x1, y0, y1;

  double
  px(double x) const {
    return left + (x - x0) / (x1 - x0) * (width - left - right);
  }
  double
  py(double y) const {
    return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom);
  }
};

void
axes(std::string& svg, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double xs = tick_step(f.x1 - f.x0, 8);
  const double ys = tick_step(f.y1 - f.y0, 8);
  svg += fmt::format(R"(<rect x="{:.1f}" y="{:.1f}" width="{:.1f}" height="{:.1f}" fill="none" stroke="#000"/>)"
                     "\n",
                     f.left, f.top, f.width - f.left - f.right, f.height - f.top - f.bottom);
  for (double x = std::ceil(f.x0 / xs) * xs; x <= f.x1 + 1e-9 * xs; x += xs) {
    svg += fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{0:.1f}" y2="{2:.1f}" stroke="#000"/>)"
                       R"(<text x="{0:.1f}" y="{3:.1f}" font-size="11" text-anchor="middle">{4:g}</text>)"
                       "\n",
                       f.px(x), f.height - f.bottom, f.height - f.bottom + 5, f.height - f.bottom + 18, x);
  }
  for (double y = std::ceil(f.y0 / ys) * ys; y <= f.y1 + 1e-9 * ys; y += ys) {
    svg += fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{2:.1f}" y2="{1:.1f}" stroke="#000"/>)"
                       R"(<text x="{3:.1f}" y="{4:.1f}" font-size="11" text-anchor="end">{5:g}</text>)"
                       "\n",
                       f.left - 5, f.py(y), f.left, f.left - 8, f.py(y) + 4, y);
  }
  svg += fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="12" text-anchor="middle">{}</text>)"
                     "\n",
                     (f.left + f.width - f.right) / 2, f.height - 12, escape_xml(xlabel));
  svg += fmt::format(R"svg(<text x="16" y="{:.1f}" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.1f})">{}</text>)svg"
                     "\n",
                     (f.top + f.height - f.bottom) / 2, (f.top + f.height - f.bottom) / 2, escape_xml(ylabel));
}

std::string
svg_open(const Frame& f, const std::string& title) {
  return fmt::format(R"(<?xml version="1.0" encoding="UTF-8"?>)"
                     "\n"
                     R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)"
                     "\n"
                     R"(<rect width="100%" height="100%" fill="#fff"/>)"
                     "\n"
                     R"(<text x="{:.1f}" y="24" font-size="14" text-anchor="middle">{}</text>)"
                     "\n",
                     f.width, f.height, f.width, f.height, (f.left + f.width - f.right) / 2, escape_xml(title));
}

} // namespace

std::string
trace_csv(const TraceSeries& series) {
  std::string out = series.bound ? "iter,residual,relresid,bound\n" : "iter,residual,relresid\n";
  for (std::size_t i = 0; i < series.residual.size(); ++i) {
    const double r = series.residual[i];
    out += fmt::format("{},{:.17g},{:.17g}", i, r, r / series.rhs_norm);
    if (series.bound) {
      out += ',';
      if (i < series.bound->size()) {
        out += fmt::format("{:.17g}", (*series.bound)[i]);
      }
    }
    out += '\n';
  }
  return out;
}

std::string
residual_chart_svg(const std::vector<TraceSeries>& series, const std::string& title) {
  Frame f;
  f.x0 = 0.0;
  f.x1 = 1.0;
  f.y0 = std::numeric_limits<double>::infinity();
  f.y1 = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    f.x1 = std::max(f.x1, static_cast<double>(s.residual.size()) - 1.0);
    for (double r : s.residual) {
      if (r > 0.0) {
        const double y = std::log10(r / s.rhs_norm);
        f.y0 = std::min(f.y0, y);
        f.y1 = std::max(f.y1, y);
      }
    }
  }
  if (!std::isfinite(f.y0)) {
    f.y0 = -1.0;
    f.y1 = 0.0;
  }
  f.y0 = std::floor(f.y0);
  f.y1 = std::max(std::ceil(f.y1), f.y0 + 1.0);

  std::string svg = svg_open(f, title);
  axes(svg, f, "iteration", "log10 relative residual");
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = palette[k % std::size(palette)];
    std::string points;
    for (std::size_t i = 0; i < s.residual.size(); ++i) {
      if (s.residual[i] > 0.0) {
        points += fmt::format("{:.2f},{:.2f} ", f.px(static_cast<double>(i)), f.py(std::log10(s.residual[i] / s.rhs_norm)));
      }
    }
    if (!points.empty()) {
      points.pop_back();
    }
    svg += fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)"
                       "\n",
                       colour, points);
    const double ly = f.top + 10 + 18.0 * static_cast<double>(k);
    const double lx = f.width - f.right + 12;
    svg += fmt::format(R"(<line x1="{:.1f}" y1="{:.1f}" x2="{:.1f}" y2="{:.1f}" stroke="{}" stroke-width="2"/>)"
                       R"(<text x="{:.1f}" y="{:.1f}" font-size="12">{}</text>)"
                       "\n",
                       lx, ly, lx + 20, ly, colour, lx + 26, ly + 4, escape_xml(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

std::string
spectrum_scatter_svg(const std::vector<cdouble>& points, const std::string& title) {
  double extent = 1.0;
  for (const auto& z : points) {
    extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
  }
  extent = tick_step(extent, 1) * std::ceil(extent / tick_step(extent, 1));
  Frame f;
  f.width = 480;
  f.height = 480;
  f.right = 30;
  f.x0 = -extent;
  f.x1 = extent;
  f.y0 = -extent;
  f.y1 = extent;
  std::string svg = svg_open(f, title);
  axes(svg, f, "Re", "Im");
  svg += fmt::format(R"(<line x1="{0:.1f}" y1="{1:.1f}" x2="{0:.1f}" y2="{2:.1f}" stroke="#aaa"/>)"
                     R"(<line x1="{3:.1f}" y1="{4:.1f}" x2="{5:.1f}" y2="{4:.1f}" stroke="#aaa"/>)"
                     "\n",
                     f.px(0.0), f.py(f.y0), f.py(f.y1), f.px(f.x0), f.py(0.0), f.px(f.x1));
  for (const auto& z : points) {
    svg += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="2" fill="#1f77b4"/>)"
                       "\n",
                       f.px(z.real()), f.py(z.imag()));
  }
  svg += "</svg>\n";
  return svg;
}

void
write_text_file(const std::filesystem::path& path, const std::string& content) {
  detail::write_file_atomically(path, content);
}

std::vector<std::filesystem::path>
emit_outputs(const std::vector<TraceSeries>& series, const std::vector<cdouble>& spectrum,
             const std::filesystem::path& prefix, const std::string& title) {
  std::vector<std::filesystem::path> written;
  auto with_suffix = [&](const std::string& suffix) {
    auto p = prefix;
    p += suffix;
    return p;
  };
  for (const auto& s : series) {
    const auto path = series.size() == 1 ? with_suffix(".csv") : with_suffix("_" + file_label(s.label) + ".csv");
    detail::write_file_atomically(path, trace_csv(s));
    written.push_back(path);
  }
  if (!series.empty()) {
    const auto path = with_suffix("_residual.svg");
    detail::write_file_atomically(path, residual_chart_svg(series, title));
    written.push_back(path);
  }
  if (!spectrum.empty()) {
    const auto path = with_suffix("_spectrum.svg");
    detail::write_file_atomically(path, spectrum_scatter_svg(spectrum, title));
    written.push_back(path);
  }
  return written;
}

} // namespace rlk
