#pragma once

//
// Problem files: a Matrix Market section for M followed by one for b,
//
//   %%MatrixMarket matrix coordinate complex general
//   %%kappa 1 -1
//   2 2 2
//   1 1 1 0
//   2 2 2 0
//   %%MatrixMarket matrix array complex general
//   2 1
//   1 0
//   1 0
//
// Fields complex, real and integer are accepted, with general, symmetric
// or skew-symmetric storage. A `%%kappa re im` comment anywhere in the
// file sets kappa (default 0).
//

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rlk/dense.hpp"

namespace rlk {

struct Problem {
  cdouble kappa{0.0};
  CMatrix<double> M;
  CVector<double> b;
};

/// Throws ParseError (with the offending line) on malformed input and
/// DimensionError when b does not match M or M is not square.
Problem
parse_problem(std::istream& in);

/// Throws Error when the file cannot be opened.
Problem
read_problem(const std::filesystem::path& path);

/// M in coordinate format (nonzeros only), b in array format.
void
write_problem(std::ostream& out, const Problem& problem);

void
write_problem(const std::filesystem::path& path, const Problem& problem);

} // namespace rlk
