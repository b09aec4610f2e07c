#include "rlk/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "report_io.hpp"

namespace rlk {

namespace {

enum class Field { complex, real, integer };
enum class Symmetry { general, symmetric, skew };

struct Header {
  bool coordinate{true};
  Field field{Field::complex};
  Symmetry symmetry{Symmetry::general};
};

std::string
lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_{in} {}

  // Next line, or nullopt at end of input. `%%kappa` lines are consumed
  // here wherever they appear.
  std::optional<std::string>
  next_raw() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (lower(line.substr(0, 7)) == "%%kappa") {
        std::istringstream ss(line.substr(7));
        double re = 0.0;
        double im = 0.0;
        if (!(ss >> re >> im)) {
          throw ParseError("%%kappa needs two numbers", line_no_);
        }
        kappa = cdouble{re, im};
        continue;
      }
      return line;
    }
    return std::nullopt;
  }

  // Next line that is neither blank nor a comment.
  std::optional<std::string>
  next_data() {
    while (auto line = next_raw()) {
      const auto first = line->find_first_not_of(" \t");
      if (first == std::string::npos || (*line)[first] == '%') {
        continue;
      }
      return line;
    }
    return std::nullopt;
  }

  std::size_t
  line_no() const noexcept {
    return line_no_;
  }

  cdouble kappa{0.0};

private:
  std::istream& in_;
  std::size_t line_no_{0};
};

Header
parse_banner(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") {
    throw ParseError("expected a %%MatrixMarket banner", line_no);
  }
  if (lower(object) != "matrix") {
    throw ParseError("unsupported object '" + object + "'", line_no);
  }
  Header h;
  format = lower(format);
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format == "array") {
    h.coordinate = false;
  } else {
    throw ParseError("unsupported format '" + format + "'", line_no);
  }
  field = lower(field);
  if (field == "complex") {
    h.field = Field::complex;
  } else if (field == "real" || field == "double") {
    h.field = Field::real;
  } else if (field == "integer") {
    h.field = Field::integer;
  } else {
    throw ParseError("unsupported field '" + field + "'", line_no);
  }
  symmetry = lower(symmetry);
  if (symmetry == "general" || symmetry.empty()) {
    h.symmetry = Symmetry::general;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::symmetric;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = Symmetry::skew;
  } else {
    throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
  }
  return h;
}

cdouble
parse_value(std::istringstream& ss, Field field, std::size_t line_no) {
  double re = 0.0;
  double im = 0.0;
  if (!(ss >> re)) {
    throw ParseError("missing value", line_no);
  }
  if (field == Field::complex && !(ss >> im)) {
    throw ParseError("complex entry needs real and imaginary parts", line_no);
  }
  return {re, im};
}

void
expect_end(std::istringstream& ss, std::size_t line_no) {
  std::string extra;
  if (ss >> extra) {
    throw ParseError("unexpected trailing token '" + extra + "'", line_no);
  }
}

// Reads one section whose banner was already consumed.
CMatrix<double>
read_section(LineReader& reader, const Header& h) {
  const auto size_line = reader.next_data();
  if (!size_line) {
    throw ParseError("missing size line", reader.line_no());
  }
  std::istringstream ss(*size_line);
  long long rows = -1;
  long long cols = -1;
  long long nnz = -1;
  if (!(ss >> rows >> cols) || (h.coordinate && !(ss >> nnz))) {
    throw ParseError("malformed size line", reader.line_no());
  }
  expect_end(ss, reader.line_no());
  if (rows <= 0 || cols <= 0 || (h.coordinate && nnz < 0)) {
    throw ParseError("sizes must be positive", reader.line_no());
  }
  if (h.symmetry != Symmetry::general && rows != cols) {
    throw ParseError("symmetric storage needs a square matrix", reader.line_no());
  }
  const auto nr = static_cast<std::size_t>(rows);
  const auto nc = static_cast<std::size_t>(cols);
  CMatrix<double> A(nr, nc);
  const double mirror = h.symmetry == Symmetry::skew ? -1.0 : 1.0;

  if (h.coordinate) {
    for (long long k = 0; k < nnz; ++k) {
      const auto line = reader.next_data();
      if (!line) {
        throw ParseError(fmt::format("expected {} entries, found {}", nnz, k), reader.line_no());
      }
      std::istringstream es(*line);
      long long i = 0;
      long long j = 0;
      if (!(es >> i >> j)) {
        throw ParseError("malformed entry", reader.line_no());
      }
      if (i < 1 || j < 1 || i > rows || j > cols) {
        throw ParseError(fmt::format("index ({}, {}) outside {} x {}", i, j, rows, cols), reader.line_no());
      }
      const cdouble v = parse_value(es, h.field, reader.line_no());
      expect_end(es, reader.line_no());
      const auto r = static_cast<std::size_t>(i - 1);
      const auto c = static_cast<std::size_t>(j - 1);
      A(r, c) += v;
      if (h.symmetry != Symmetry::general && r != c) {
        A(c, r) += mirror * v;
      }
    }
  } else {
    // Column-major; symmetric storage lists the lower triangle only.
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t start = h.symmetry == Symmetry::general ? 0 : c + (h.symmetry == Symmetry::skew ? 1 : 0);
      for (std::size_t r = start; r < nr; ++r) {
        const auto line = reader.next_data();
        if (!line) {
          throw ParseError(fmt::format("array data ends early at entry ({}, {})", r + 1, c + 1),
                           reader.line_no());
        }
        std::istringstream es(*line);
        const cdouble v = parse_value(es, h.field, reader.line_no());
        expect_end(es, reader.line_no());
        A(r, c) = v;
        if (h.symmetry != Symmetry::general && r != c) {
          A(c, r) = mirror * v;
        }
      }
    }
  }
  return A;
}

std::optional<Header>
next_banner(LineReader& reader) {
  while (auto line = reader.next_raw()) {
    const auto first = line->find_first_not_of(" \t");
    if (first == std::string::npos) {
      continue;
    }
    if (lower(line->substr(first, 14)) == "%%matrixmarket") {
      return parse_banner(line->substr(first), reader.line_no());
    }
    if ((*line)[first] == '%') {
      continue;
    }
    throw ParseError("expected a %%MatrixMarket banner", reader.line_no());
  }
  return std::nullopt;
}

} // namespace

Problem
parse_problem(std::istream& in) {
  LineReader reader(in);
  const auto mh = next_banner(reader);
  if (!mh) {
    throw ParseError("empty problem file", 0);
  }
  Problem p;
  p.M = read_section(reader, *mh);
  const std::size_t m_end = reader.line_no();
  const auto bh = next_banner(reader);
  if (!bh) {
    throw ParseError("missing right-hand side section after the matrix", m_end);
  }
  const auto B = read_section(reader, *bh);
  if (reader.next_data()) {
    throw ParseError("unexpected data after the right-hand side", reader.line_no());
  }
  if (p.M.rows() != p.M.cols()) {
    throw DimensionError(fmt::format("matrix is {} x {}, expected square", p.M.rows(), p.M.cols()));
  }
  if (B.cols() != 1 || B.rows() != p.M.rows()) {
    throw DimensionError(
        fmt::format("right-hand side is {} x {}, expected {} x 1", B.rows(), B.cols(), p.M.rows()));
  }
  p.b = CVector<double>(B.rows());
  for (std::size_t i = 0; i < B.rows(); ++i) {
    p.b[i] = B(i, 0);
  }
  p.kappa = reader.kappa;
  return p;
}

Problem
read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  return parse_problem(in);
}

void
write_problem(std::ostream& out, const Problem& problem) {
  const auto& M = problem.M;
  std::size_t nnz = 0;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      nnz += M(i, j) != cdouble{} ? 1 : 0;
    }
  }
  fmt::print(out, "%%MatrixMarket matrix coordinate complex general\n");
  fmt::print(out, "%%kappa {} {}\n", problem.kappa.real(), problem.kappa.imag());
  fmt::print(out, "{} {} {}\n", M.rows(), M.cols(), nnz);
  for (std::size_t j = 0; j < M.cols(); ++j) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (M(i, j) != cdouble{}) {
        fmt::print(out, "{} {} {} {}\n", i + 1, j + 1, M(i, j).real(), M(i, j).imag());
      }
    }
  }
  fmt::print(out, "%%MatrixMarket matrix array complex general\n");
  fmt::print(out, "{} 1\n", problem.b.size());
  for (std::size_t i = 0; i < problem.b.size(); ++i) {
    fmt::print(out, "{} {}\n", problem.b[i].real(), problem.b[i].imag());
  }
}

void
write_problem(const std::filesystem::path& path, const Problem& problem) {
  std::ostringstream ss;
  write_problem(ss, problem);
  detail::write_file_atomically(path, ss.str());
}

} // namespace rlk
