#pragma once

//
// CSV and SVG output for residual traces and spectra.
//

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rlk/dense.hpp"

namespace rlk {

struct TraceSeries {
  std::string label;
  std::vector<double> residual; ///< absolute norms, entry 0 = ||b||
  double rhs_norm{1.0};
  std::optional<std::vector<double>> bound; ///< absolute bound values, may be shorter than residual
};

/// `iter,residual,relresid[,bound]`; the bound column appears only when
/// the series carries one, and is left empty past its last value.
std::string
trace_csv(const TraceSeries& series);

/// log10 of the relative residual against the iteration index, one
/// polyline per series, with axes and a legend.
std::string
residual_chart_svg(const std::vector<TraceSeries>& series, const std::string& title);

/// Points in the complex plane with axes through the origin.
std::string
spectrum_scatter_svg(const std::vector<cdouble>& points, const std::string& title);

/// Same as `path` but replaced atomically; throws Error on failure.
void
write_text_file(const std::filesystem::path& path, const std::string& content);

/// Writes <prefix>.csv for a single series or <prefix>_<label>.csv for
/// several, <prefix>_residual.svg, and <prefix>_spectrum.svg when
/// `spectrum` is non-empty. Returns the paths written.
std::vector<std::filesystem::path>
emit_outputs(const std::vector<TraceSeries>& series, const std::vector<cdouble>& spectrum,
             const std::filesystem::path& prefix, const std::string& title);

} // namespace rlk
