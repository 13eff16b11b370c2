#pragma once

// Pre-Latin squares: M x M arrays over {1..N} with distinct entries along every
// row and every column. Each label x defines the partial permutation
// sigma_x(j) = i  <=>  L_ij = x.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "parthad/error.hpp"
#include "parthad/pperm.hpp"
#include "parthad/torus_matrix.hpp"

namespace parthad {

class PreLatinSquare {
 public:
  std::size_t size() const noexcept { return m_; }
  std::size_t alphabet() const noexcept { return n_; }

  /// L_ij, 1-based.
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return entries_.at((i - 1) * m_ + (j - 1)); }

  std::vector<std::vector<std::uint32_t>> rows() const {
    std::vector<std::vector<std::uint32_t>> out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * m_),
                                                       entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_));
    return out;
  }

  friend bool operator==(const PreLatinSquare&, const PreLatinSquare&) = default;

  friend PreLatinSquare validate(const std::vector<std::vector<std::uint32_t>>& entries, std::size_t n);

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> entries_;
};

/// Checks rows first (alphabet, duplicates), then squareness, then columns.
inline PreLatinSquare validate(const std::vector<std::vector<std::uint32_t>>& entries, std::size_t n) {
  if (entries.empty()) throw Error(ErrorKind::InvalidArgument, "pre-Latin square needs at least one row");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::vector<bool> seen(n + 1, false);
    for (std::size_t j = 0; j < entries[i].size(); ++j) {
      const auto x = entries[i][j];
      if (x < 1 || x > n)
        throw Error(ErrorKind::OutOfAlphabet,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + std::to_string(x),
                    static_cast<double>(i + 1));
      if (seen[x]) throw Error(ErrorKind::DuplicateInRow, "row " + std::to_string(i + 1), static_cast<double>(i + 1));
      seen[x] = true;
    }
  }
  const std::size_t m = entries.size();
  for (const auto& row : entries)
    if (row.size() != m) throw Error(ErrorKind::InvalidArgument, "pre-Latin square must be square");
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < m; ++i) {
      const auto x = entries[i][j];
      if (seen[x]) throw Error(ErrorKind::DuplicateInColumn, "column " + std::to_string(j + 1), static_cast<double>(j + 1));
      seen[x] = true;
    }
  }
  PreLatinSquare sq;
  sq.m_ = m;
  sq.n_ = n;
  for (const auto& row : entries) sq.entries_.insert(sq.entries_.end(), row.begin(), row.end());
  return sq;
}

/// sigma_x(j) = i  <=>  L_ij = x. An absent label gives the empty map.
inline PartialPermutation sigma_of(const PreLatinSquare& l, std::uint32_t x) {
  if (x < 1 || x > l.alphabet()) throw Error(ErrorKind::InvalidArgument, "label out of alphabet");
  const auto m = l.size();
  std::vector<std::uint32_t> img(m, 0);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      if (l(i, j) == x) img[j - 1] = static_cast<std::uint32_t>(i);
  return PartialPermutation(std::move(img));
}

/// Semigroup generated by sigma_1, ..., sigma_N.
inline Semigroup semigroup_of(const PreLatinSquare& l) {
  std::vector<PartialPermutation> gens;
  for (std::uint32_t x = 1; x <= l.alphabet(); ++x) gens.push_back(sigma_of(l, x));
  return generate_semigroup(gens);
}

/// L_ij = ((i - j) mod n) + 1, the square of the cyclic group Z_n.
inline PreLatinSquare cyclic_square(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> e(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i][j] = static_cast<std::uint32_t>((i + n - j) % n + 1);
  return validate(e, n);
}

// .pls format: `pls v1`, `M N`, then M rows of integers.

inline PreLatinSquare parse_pls(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty() || lines[0] != "pls v1") throw Error(ErrorKind::Parse, "missing 'pls v1' header");
  if (lines.size() < 2) throw Error(ErrorKind::Parse, "missing 'M N' line");
  const auto [m, n] = detail::parse_dims(lines[1], "M N");
  if (lines.size() != 2 + m) throw Error(ErrorKind::Parse, "expected " + std::to_string(m) + " rows");
  std::vector<std::vector<std::uint32_t>> e;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::uint32_t> row;
    for (const auto& t : detail::split_ws(lines[2 + r])) row.push_back(detail::parse_number<std::uint32_t>(t, "label"));
    if (row.size() != m) throw Error(ErrorKind::Parse, "row " + std::to_string(r + 1) + " has wrong length");
    e.push_back(std::move(row));
  }
  return validate(e, n);
}

inline std::string to_pls(const PreLatinSquare& l) {
  std::string out = "pls v1\n" + std::to_string(l.size()) + " " + std::to_string(l.alphabet()) + "\n";
  for (const auto& row : l.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
    out += '\n';
  }
  return out;
}

inline PreLatinSquare read_pls(const std::string& path) { return parse_pls(detail::read_file(path)); }

}  // namespace parthad
