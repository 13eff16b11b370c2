#pragma once

// Matrices with unit-modulus entries.
//
// Entries are either exact rational phases p/q, meaning exp(2 pi i p/q), or
// plain doubles on the unit circle. A matrix holding any float entry stores
// every entry as float.
//
// Index convention: operations that take row/column numbers (row_quotient,
// minor_det, delete_row, reports) are 1-based. The raw accessor `at(r, c)` is
// 0-based like Eigen.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "parthad/cyclotomic.hpp"
#include "parthad/error.hpp"

namespace parthad {

using cplx = std::complex<double>;

class TorusScalar {
 public:
  TorusScalar() = default;  // 1 = exp(2 pi i 0/1)

  static TorusScalar root(std::int64_t num, std::int64_t den) {
    if (den < 1) throw Error(ErrorKind::InvalidArgument, "phase denominator must be >= 1");
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    TorusScalar s;
    s.num_ = num / g;
    s.den_ = den / g;
    s.exact_ = true;
    return s;
  }

  static TorusScalar from_complex(cplx z, double tol = kDefaultTol) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > tol)
      throw Error(ErrorKind::InvalidArgument, "entry is not unit modulus");
    TorusScalar s;
    s.exact_ = false;
    s.value_ = z;
    return s;
  }

  /// exp(i * angle)
  static TorusScalar phase(double angle) { return from_complex(std::polar(1.0, angle)); }

  bool is_exact() const noexcept { return exact_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  cplx value() const {
    if (!exact_) return value_;
    // Quarter points are returned exactly.
    if (den_ == 1) return {1.0, 0.0};
    if (den_ == 2) return {-1.0, 0.0};
    if (den_ == 4) return num_ == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    // Angle folded into (-pi, pi] to keep the argument small.
    std::int64_t n = num_;
    if (2 * n > den_) n -= den_;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(den_));
  }

  TorusScalar as_float() const {
    TorusScalar s;
    s.exact_ = false;
    s.value_ = value();
    return s;
  }

  TorusScalar conj() const {
    if (exact_) return root(-num_, den_);
    return from_complex(std::conj(value_), 1.0);
  }

  friend TorusScalar operator*(const TorusScalar& a, const TorusScalar& b) {
    if (a.exact_ && b.exact_) {
      const std::int64_t l = std::lcm(a.den_, b.den_);
      return root(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
    }
    return from_complex(a.value() * b.value(), 1.0);
  }

  friend TorusScalar operator/(const TorusScalar& a, const TorusScalar& b) { return a * b.conj(); }

  /// Structural equality: exact scalars compare as reduced fractions, floats bitwise.
  friend bool operator==(const TorusScalar& a, const TorusScalar& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.value_ == b.value_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool exact_ = true;
  cplx value_{1.0, 0.0};
};

inline bool approx_equal(const TorusScalar& a, const TorusScalar& b, double tol = kDefaultTol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.value() - b.value()) <= tol;
}

using TorusVector = std::vector<TorusScalar>;

/// <x, y> = sum_l x_l conj(y_l)
inline cplx inner(std::span<const TorusScalar> x, std::span<const TorusScalar> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "vector lengths differ");
  cplx s{0.0, 0.0};
  for (std::size_t l = 0; l < x.size(); ++l) s += x[l].value() * std::conj(y[l].value());
  return s;
}

class TorusMatrix {
 public:
  TorusMatrix() = default;

  TorusMatrix(std::size_t rows, std::size_t cols, std::vector<TorusScalar> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
    if (entries_.size() != rows_ * cols_) throw Error(ErrorKind::SizeMismatch, "entry count does not match dimensions");
    exact_ = std::all_of(entries_.begin(), entries_.end(), [](const TorusScalar& s) { return s.is_exact(); });
    if (!exact_)
      for (auto& e : entries_) e = e.as_float();
  }

  static TorusMatrix from_rows(const std::vector<std::vector<TorusScalar>>& rows) {
    if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "matrix needs at least one row");
    std::vector<TorusScalar> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw Error(ErrorKind::SizeMismatch, "ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return TorusMatrix(rows.size(), rows.front().size(), std::move(flat));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_exact() const noexcept { return exact_; }

  const TorusScalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const TorusScalar> row(std::size_t r) const {
    return std::span<const TorusScalar>(entries_).subspan(r * cols_, cols_);
  }

  std::span<const TorusScalar> entries() const noexcept { return entries_; }

  Eigen::MatrixXcd to_eigen() const {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = at(r, c).value();
    return m;
  }

  friend bool operator==(const TorusMatrix&, const TorusMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<TorusScalar> entries_;
  bool exact_ = true;
};

/// F_{n_1} (x) ... (x) F_{n_k} with (F_n)_{jk} = exp(2 pi i jk/n), 0-based.
inline TorusMatrix tensor(const TorusMatrix& h, const TorusMatrix& k);

inline TorusMatrix fourier(std::span<const int> orders) {
  if (orders.empty()) throw Error(ErrorKind::InvalidArgument, "fourier needs at least one order");
  std::optional<TorusMatrix> acc;
  for (int n : orders) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "fourier orders must be positive");
    const auto sz = static_cast<std::size_t>(n);
    std::vector<TorusScalar> e;
    e.reserve(sz * sz);
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k) e.push_back(TorusScalar::root(j * k, n));
    TorusMatrix f(sz, sz, std::move(e));
    acc = acc ? tensor(*acc, f) : f;
  }
  return *acc;
}

inline TorusMatrix fourier(int n) {
  const int orders[] = {n};
  return fourier(orders);
}

/// (H (x) K)_{ia,jb} = H_ij K_ab, double indices lexicographic.
inline TorusMatrix tensor(const TorusMatrix& h, const TorusMatrix& k) {
  const std::size_t rows = h.rows() * k.rows();
  const std::size_t cols = h.cols() * k.cols();
  std::vector<TorusScalar> e;
  e.reserve(rows * cols);
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t a = 0; a < k.rows(); ++a)
      for (std::size_t j = 0; j < h.cols(); ++j)
        for (std::size_t b = 0; b < k.cols(); ++b) e.push_back(h.at(i, j) * k.at(a, b));
  return TorusMatrix(rows, cols, std::move(e));
}

/// Keeps the listed rows (1-based) in the given order.
inline TorusMatrix select_rows(const TorusMatrix& h, std::span<const std::size_t> rows) {
  std::vector<TorusScalar> e;
  for (std::size_t r : rows) {
    if (r < 1 || r > h.rows()) throw Error(ErrorKind::InvalidArgument, "row index out of range");
    auto row = h.row(r - 1);
    e.insert(e.end(), row.begin(), row.end());
  }
  return TorusMatrix(rows.size(), h.cols(), std::move(e));
}

inline TorusMatrix delete_row(const TorusMatrix& h, std::size_t r) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i <= h.rows(); ++i)
    if (i != r) keep.push_back(i);
  if (keep.size() == h.rows()) throw Error(ErrorKind::InvalidArgument, "row index out of range");
  return select_rows(h, keep);
}

/// Copy of `h` with entry (r, c) (1-based) replaced.
inline TorusMatrix with_entry(const TorusMatrix& h, std::size_t r, std::size_t c, const TorusScalar& value) {
  std::vector<TorusScalar> e(h.entries().begin(), h.entries().end());
  e.at((r - 1) * h.cols() + (c - 1)) = value;
  return TorusMatrix(h.rows(), h.cols(), std::move(e));
}

struct PartialHadamardReport {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;  // 1-based rows
  double worst_value = 0.0;
  bool exact = false;  // orthogonality decided by exact cyclotomic arithmetic
};

namespace detail {

inline constexpr std::int64_t kMaxExactOrder = 4096;

inline std::optional<std::int64_t> common_order(const TorusMatrix& h) {
  std::int64_t l = 1;
  for (const auto& s : h.entries()) {
    l = std::lcm(l, s.den());
    if (l > kMaxExactOrder) return std::nullopt;
  }
  return l;
}

inline bool exactly_orthogonal(std::span<const TorusScalar> x, std::span<const TorusScalar> y, std::int64_t order) {
  std::vector<std::int64_t> exps;
  exps.reserve(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) {
    const TorusScalar t = x[l] / y[l];
    exps.push_back(t.num() * (order / t.den()));
  }
  return cyclotomic::sum_of_roots_is_zero(exps, order);
}

}  // namespace detail

/// Rows pairwise orthogonal: |<R_i,R_j>| <= tol*N, entries unit modulus within tol.
/// Exact matrices have orthogonality decided exactly.
inline PartialHadamardReport is_partial_hadamard(const TorusMatrix& h, double tol = kDefaultTol) {
  PartialHadamardReport rep;
  const double n = static_cast<double>(h.cols());
  for (const auto& s : h.entries())
    if (!s.is_exact() && std::abs(std::abs(s.value()) - 1.0) > tol) rep.ok = false;

  const auto order = h.is_exact() ? detail::common_order(h) : std::nullopt;
  rep.exact = order.has_value();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = i + 1; j < h.rows(); ++j) {
      const double v = std::abs(inner(h.row(i), h.row(j)));
      const bool orth = order ? detail::exactly_orthogonal(h.row(i), h.row(j), *order) : v <= tol * n;
      if (!rep.worst_pair || v > rep.worst_value) {
        rep.worst_pair = std::pair{i + 1, j + 1};
        rep.worst_value = v;
      }
      if (!orth) rep.ok = false;
    }
  }
  return rep;
}

/// xi_ij = R_i / R_j, 1-based rows.
inline TorusVector row_quotient(const TorusMatrix& h, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > h.rows() || j > h.rows()) throw Error(ErrorKind::InvalidArgument, "row index out of range");
  TorusVector out;
  out.reserve(h.cols());
  for (std::size_t l = 0; l < h.cols(); ++l) out.push_back(h.at(i - 1, l) / h.at(j - 1, l));
  return out;
}

inline Eigen::VectorXcd to_eigen(std::span<const TorusScalar> v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t l = 0; l < v.size(); ++l) out(static_cast<Eigen::Index>(l)) = v[l].value();
  return out;
}

/// Determinant by partially pivoted LU. Throws IllConditioned when the
/// estimated relative error n * eps / rcond exceeds `tol`.
inline cplx checked_determinant(const Eigen::MatrixXcd& a, double tol = kDefaultTol) {
  if (a.rows() == 0) return {1.0, 0.0};
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = lu.rcond();
  const double rel_err = static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() / rcond;
  if (!(rel_err <= tol)) throw Error(ErrorKind::IllConditioned, "determinant relative error estimate too large", rel_err);
  return lu.determinant();
}

/// det H^(j): H is (N-1) x N, column j (1-based) removed.
inline cplx minor_det(const TorusMatrix& h, std::size_t j, double tol = kDefaultTol) {
  if (h.rows() + 1 != h.cols()) throw Error(ErrorKind::SizeMismatch, "minor_det needs an (N-1) x N matrix");
  if (j < 1 || j > h.cols()) throw Error(ErrorKind::InvalidArgument, "column index out of range");
  const auto m = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    Eigen::Index cc = 0;
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (c + 1 == j) continue;
      a(r, cc++) = h.at(static_cast<std::size_t>(r), c).value();
    }
  }
  return checked_determinant(a, tol);
}

// ---------------------------------------------------------------------------
// .phm text format

namespace detail {

inline std::string_view strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  s = strip(s);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

inline std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

/// Lines with comments (`#...`) and blank lines dropped.
inline std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    const auto s = strip(line);
    if (s.empty() || s.front() == '#') continue;
    out.emplace_back(s);
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::pair<std::size_t, std::size_t> parse_dims(std::string_view line, std::string_view what) {
  const auto toks = split_ws(line);
  if (toks.size() != 2) throw Error(ErrorKind::Parse, "expected '" + std::string(what) + "' line");
  const auto a = parse_number<std::size_t>(toks[0], what);
  const auto b = parse_number<std::size_t>(toks[1], what);
  if (a == 0 || b == 0) throw Error(ErrorKind::Parse, "dimensions must be positive");
  return {a, b};
}

}  // namespace detail

inline TorusScalar parse_scalar(std::string_view tok, double tol = kDefaultTol) {
  tok = detail::strip(tok);
  if (tok == "1") return TorusScalar::root(0, 1);
  if (tok == "-1") return TorusScalar::root(1, 2);
  if (tok == "i") return TorusScalar::root(1, 4);
  if (tok == "-i") return TorusScalar::root(3, 4);
  if (!tok.empty() && tok.front() == '(') {
    if (tok.back() != ')') throw Error(ErrorKind::Parse, "unterminated complex token");
    const auto body = tok.substr(1, tok.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::Parse, "complex token needs a comma");
    const double re = detail::parse_number<double>(body.substr(0, comma), "real part");
    const double im = detail::parse_number<double>(body.substr(comma + 1), "imaginary part");
    try {
      return TorusScalar::from_complex({re, im}, tol);
    } catch (const Error&) {
      throw Error(ErrorKind::Parse, "entry " + std::string(tok) + " is not unit modulus");
    }
  }
  const auto slash = tok.find('/');
  if (slash == std::string_view::npos) throw Error(ErrorKind::Parse, "unknown token '" + std::string(tok) + "'");
  const auto p = detail::parse_number<std::int64_t>(tok.substr(0, slash), "phase numerator");
  const auto q = detail::parse_number<std::int64_t>(tok.substr(slash + 1), "phase denominator");
  if (q < 1) throw Error(ErrorKind::Parse, "phase denominator must be >= 1");
  return TorusScalar::root(p, q);
}

inline std::string format_scalar(const TorusScalar& s) {
  if (!s.is_exact()) {
    const cplx z = s.value();
    return "(" + detail::format_double(z.real()) + "," + detail::format_double(z.imag()) + ")";
  }
  if (s.den() == 1) return "1";
  if (s.den() == 2) return "-1";
  if (s.den() == 4) return s.num() == 1 ? "i" : "-i";
  return std::to_string(s.num()) + "/" + std::to_string(s.den());
}

inline TorusMatrix parse_phm(std::string_view text, double tol = kDefaultTol) {
  const auto lines = detail::content_lines(text);
  if (lines.empty() || lines[0] != "phm v1") throw Error(ErrorKind::Parse, "missing 'phm v1' header");
  if (lines.size() < 2) throw Error(ErrorKind::Parse, "missing 'M N' line");
  const auto [m, n] = detail::parse_dims(lines[1], "M N");
  if (lines.size() != 2 + m) throw Error(ErrorKind::Parse, "expected " + std::to_string(m) + " matrix rows");
  std::vector<TorusScalar> e;
  e.reserve(m * n);
  for (std::size_t r = 0; r < m; ++r) {
    const auto toks = detail::split_ws(lines[2 + r]);
    if (toks.size() != n)
      throw Error(ErrorKind::Parse, "row " + std::to_string(r + 1) + " has " + std::to_string(toks.size()) + " entries");
    for (const auto& t : toks) e.push_back(parse_scalar(t, tol));
  }
  return TorusMatrix(m, n, std::move(e));
}

inline std::string to_phm(const TorusMatrix& h) {
  std::string out = "phm v1\n" + std::to_string(h.rows()) + " " + std::to_string(h.cols()) + "\n";
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (c) out += ' ';
      out += format_scalar(h.at(r, c));
    }
    out += '\n';
  }
  return out;
}

inline TorusMatrix read_phm(const std::string& path, double tol = kDefaultTol) {
  return parse_phm(detail::read_file(path), tol);
}

}  // namespace parthad
