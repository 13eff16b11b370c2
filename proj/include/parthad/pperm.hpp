#pragma once

// Partial permutations of {1, ..., M} and finite semigroups of them.
//
// A partial permutation is stored as its image array: image[j-1] = sigma(j),
// with 0 meaning sigma(j) is undefined.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parthad/error.hpp"

namespace parthad {

using BigInt = boost::multiprecision::cpp_int;

class PartialPermutation {
 public:
  PartialPermutation() = default;

  explicit PartialPermutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
    const auto m = image_.size();
    std::vector<bool> seen(m + 1, false);
    for (auto v : image_) {
      if (v > m) throw Error(ErrorKind::InvalidArgument, "image value out of range");
      if (v == 0) continue;
      if (seen[v]) throw Error(ErrorKind::InvalidArgument, "image values must be distinct");
      seen[v] = true;
    }
  }

  static PartialPermutation identity(std::size_t m) {
    std::vector<std::uint32_t> img(m);
    for (std::size_t j = 0; j < m; ++j) img[j] = static_cast<std::uint32_t>(j + 1);
    return PartialPermutation(std::move(img));
  }

  static PartialPermutation empty(std::size_t m) { return PartialPermutation(std::vector<std::uint32_t>(m, 0)); }

  /// The single arrow j -> i.
  static PartialPermutation arrow(std::size_t m, std::uint32_t j, std::uint32_t i) {
    std::vector<std::uint32_t> img(m, 0);
    img.at(j - 1) = i;
    return PartialPermutation(std::move(img));
  }

  std::size_t size() const noexcept { return image_.size(); }
  std::span<const std::uint32_t> image() const noexcept { return image_; }

  /// sigma(j), 1-based; nullopt when undefined.
  std::optional<std::uint32_t> operator()(std::size_t j) const {
    const auto v = image_.at(j - 1);
    if (v == 0) return std::nullopt;
    return v;
  }

  std::size_t defined_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(image_.begin(), image_.end(), [](auto v) { return v != 0; }));
  }
  std::size_t undefined_count() const noexcept { return size() - defined_count(); }
  bool is_total() const noexcept { return undefined_count() == 0; }

  std::vector<std::uint32_t> domain() const {
    std::vector<std::uint32_t> out;
    for (std::size_t j = 0; j < image_.size(); ++j)
      if (image_[j]) out.push_back(static_cast<std::uint32_t>(j + 1));
    return out;
  }

  std::vector<std::uint32_t> range() const {
    std::vector<std::uint32_t> out;
    for (auto v : image_)
      if (v) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;

  /// Canonical order: size, then number of defined points, then image lexicographically.
  friend std::strong_ordering operator<=>(const PartialPermutation& a, const PartialPermutation& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = a.defined_count() <=> b.defined_count(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.image_.begin(), a.image_.end(), b.image_.begin(), b.image_.end());
  }

 private:
  std::vector<std::uint32_t> image_;
};

struct PartialPermutationHash {
  std::size_t operator()(const PartialPermutation& p) const noexcept {
    std::size_t h = p.size();
    for (auto v : p.image()) h = h * 1000003u ^ v;
    return h;
  }
};

/// (sigma tau)(j) = sigma(tau(j)) when both are defined.
inline PartialPermutation compose(const PartialPermutation& sigma, const PartialPermutation& tau) {
  if (sigma.size() != tau.size()) throw Error(ErrorKind::SizeMismatch, "compose needs equal sizes");
  std::vector<std::uint32_t> img(tau.size(), 0);
  auto s = sigma.image();
  auto t = tau.image();
  for (std::size_t j = 0; j < t.size(); ++j)
    if (t[j]) img[j] = s[t[j] - 1];
  return PartialPermutation(std::move(img));
}

inline PartialPermutation invert(const PartialPermutation& sigma) {
  std::vector<std::uint32_t> img(sigma.size(), 0);
  auto s = sigma.image();
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j]) img[s[j] - 1] = static_cast<std::uint32_t>(j + 1);
  return PartialPermutation(std::move(img));
}

/// 0/1 matrix u with u_ij = [sigma(j) = i], row-major, 0-based storage.
inline std::vector<std::uint8_t> to_matrix(const PartialPermutation& sigma) {
  const auto m = sigma.size();
  std::vector<std::uint8_t> u(m * m, 0);
  auto s = sigma.image();
  for (std::size_t j = 0; j < m; ++j)
    if (s[j]) u[(s[j] - 1) * m + j] = 1;
  return u;
}

/// |S_N~| = sum_k k! C(N,k)^2
inline BigInt count_all(unsigned n) {
  BigInt total = 0;
  BigInt binom = 1;  // C(n, k)
  BigInt fact = 1;   // k!
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      fact *= k;
    }
    total += fact * binom * binom;
  }
  return total;
}

inline constexpr std::size_t kDefaultEnumerationLimit = 7;

/// Visits every partial permutation of {1..n} once, ordered by number of
/// defined points and then lexicographically on the image array.
inline void for_each_partial_permutation(std::size_t n, const std::function<void(const PartialPermutation&)>& visit,
                                         std::size_t limit = kDefaultEnumerationLimit) {
  if (n > limit)
    throw Error(ErrorKind::LimitExceeded, "enumeration size " + std::to_string(n) + " exceeds limit " + std::to_string(limit));
  std::vector<std::uint32_t> img(n, 0);
  std::vector<bool> used(n + 1, false);
  for (std::size_t k = 0; k <= n; ++k) {
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t placed) {
      if (pos == n) {
        if (placed == k) visit(PartialPermutation(img));
        return;
      }
      const std::size_t remaining = n - pos;
      if (placed + remaining > k) {
        img[pos] = 0;
        rec(pos + 1, placed);
      }
      if (placed < k) {
        for (std::uint32_t v = 1; v <= n; ++v) {
          if (used[v]) continue;
          used[v] = true;
          img[pos] = v;
          rec(pos + 1, placed + 1);
          used[v] = false;
        }
        img[pos] = 0;
      }
    };
    rec(0, 0);
  }
}

inline std::vector<PartialPermutation> enumerate(std::size_t n, std::size_t limit = kDefaultEnumerationLimit) {
  std::vector<PartialPermutation> out;
  for_each_partial_permutation(n, [&](const PartialPermutation& p) { out.push_back(p); }, limit);
  return out;
}

/// Finite semigroup of partial permutations. Elements keep insertion order.
class Semigroup {
 public:
  Semigroup(std::size_t m, std::vector<PartialPermutation> generators, std::vector<PartialPermutation> elements)
      : m_(m), generators_(std::move(generators)), elements_(std::move(elements)) {
    lookup_.insert(elements_.begin(), elements_.end());
  }

  std::size_t degree() const noexcept { return m_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<PartialPermutation>& elements() const noexcept { return elements_; }
  const std::vector<PartialPermutation>& generators() const noexcept { return generators_; }
  bool contains(const PartialPermutation& p) const { return lookup_.contains(p); }

  std::vector<PartialPermutation> sorted_elements() const {
    auto out = elements_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PartialPermutation> idempotents() const {
    std::vector<PartialPermutation> out;
    for (const auto& e : elements_)
      if (compose(e, e) == e) out.push_back(e);
    return out;
  }

  /// True iff every element is total and the set contains an identity and inverses.
  bool is_group() const {
    if (elements_.empty()) return false;
    for (const auto& e : elements_)
      if (!e.is_total() || !contains(invert(e))) return false;
    return contains(PartialPermutation::identity(m_));
  }

  /// Element-set equality, independent of insertion order.
  bool same_elements(const Semigroup& other) const {
    if (order() != other.order()) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](const auto& e) { return other.contains(e); });
  }

 private:
  std::size_t m_;
  std::vector<PartialPermutation> generators_;
  std::vector<PartialPermutation> elements_;
  std::unordered_set<PartialPermutation, PartialPermutationHash> lookup_;
};

/// Breadth-first closure under right multiplication by generators.
inline Semigroup generate_semigroup(std::span<const PartialPermutation> gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "generate_semigroup needs at least one generator");
  const std::size_t m = gens.front().size();
  std::vector<PartialPermutation> unique_gens;
  std::unordered_set<PartialPermutation, PartialPermutationHash> seen;
  std::vector<PartialPermutation> elements;
  std::deque<std::size_t> queue;
  for (const auto& g : gens) {
    if (g.size() != m) throw Error(ErrorKind::SizeMismatch, "generators have different sizes");
    if (seen.insert(g).second) {
      unique_gens.push_back(g);
      elements.push_back(g);
      queue.push_back(elements.size() - 1);
    }
  }
  while (!queue.empty()) {
    const auto x = elements[queue.front()];
    queue.pop_front();
    for (const auto& g : unique_gens) {
      auto p = compose(x, g);
      if (seen.insert(p).second) {
        elements.push_back(std::move(p));
        queue.push_back(elements.size() - 1);
      }
    }
  }
  return Semigroup(m, std::move(unique_gens), std::move(elements));
}

/// Extends sigma in S_M~ to a total permutation of {1..n}; sigma may have at
/// most n - M undefined values. Undefined points x_r go to M + r, and M + r
/// goes to the r-th missing image y_r (both lists sorted).
inline PartialPermutation embed_total(const PartialPermutation& sigma, std::size_t n) {
  const std::size_t m = sigma.size();
  const std::size_t l = sigma.undefined_count();
  if (n < m + l)
    throw Error(ErrorKind::TooManyUndefined,
                std::to_string(l) + " undefined values exceed N - M = " + std::to_string(n >= m ? n - m : 0));
  std::vector<std::uint32_t> xs;  // X^c
  std::vector<bool> in_range(m + 1, false);
  auto s = sigma.image();
  for (std::size_t j = 0; j < m; ++j) {
    if (s[j]) in_range[s[j]] = true;
    else xs.push_back(static_cast<std::uint32_t>(j + 1));
  }
  std::vector<std::uint32_t> ys;  // Y^c
  for (std::uint32_t i = 1; i <= m; ++i)
    if (!in_range[i]) ys.push_back(i);

  std::vector<std::uint32_t> img(n, 0);
  for (std::size_t j = 0; j < m; ++j)
    if (s[j]) img[j] = s[j];
  for (std::size_t r = 0; r < l; ++r) {
    img[xs[r] - 1] = static_cast<std::uint32_t>(m + r + 1);
    img[m + r] = ys[r];
  }
  for (std::size_t i = m + l; i < n; ++i) img[i] = static_cast<std::uint32_t>(i + 1);
  return PartialPermutation(std::move(img));
}

/// Checks sum_{k,l} u_ki(s) u_kl(s) u_jl(s) = u_ji(s) for every s in S_M~ and
/// all i, j, in integer arithmetic on the 0/1 coordinate functions.
inline bool verify_subantipode(std::size_t m, std::size_t limit = kDefaultEnumerationLimit) {
  bool ok = true;
  for_each_partial_permutation(
      m,
      [&](const PartialPermutation& sigma) {
        if (!ok) return;
        const auto u = to_matrix(sigma);
        auto at = [&](std::size_t r, std::size_t c) { return static_cast<int>(u[r * m + c]); };
        for (std::size_t i = 0; i < m && ok; ++i) {
          for (std::size_t j = 0; j < m && ok; ++j) {
            int lhs = 0;
            for (std::size_t k = 0; k < m; ++k)
              for (std::size_t l = 0; l < m; ++l) lhs += at(k, i) * at(k, l) * at(j, l);
            if (lhs != at(j, i)) ok = false;
          }
        }
      },
      limit);
  return ok;
}

// ---------------------------------------------------------------------------
// Text forms: `M: v1 ... vM` with `_` for undefined; semigroups get a
// `semigroup M order` header and one element per line.

inline std::string to_string(const PartialPermutation& p) {
  std::string out = std::to_string(p.size()) + ":";
  for (auto v : p.image()) out += v ? " " + std::to_string(v) : std::string(" _");
  return out;
}

inline PartialPermutation parse_partial_permutation(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "partial permutation needs 'M:' prefix");
  std::size_t m = 0;
  try {
    m = std::stoul(std::string(text.substr(0, colon)));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad partial permutation size");
  }
  std::istringstream is{std::string(text.substr(colon + 1))};
  std::vector<std::uint32_t> img;
  std::string tok;
  while (is >> tok) {
    if (tok == "_") {
      img.push_back(0);
      continue;
    }
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
      img.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad image token '" + tok + "'");
    }
  }
  if (img.size() != m) throw Error(ErrorKind::Parse, "expected " + std::to_string(m) + " image tokens");
  try {
    return PartialPermutation(std::move(img));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline std::string to_text(const Semigroup& g) {
  std::string out = "semigroup " + std::to_string(g.degree()) + " " + std::to_string(g.order()) + "\n";
  for (const auto& e : g.elements()) out += to_string(e) + "\n";
  return out;
}

}  // namespace parthad
