#pragma once

// Exact zero test for sums of roots of unity.
//
// A sum  sum_k c_k zeta_L^k  vanishes iff the integer polynomial sum_k c_k x^k
// is divisible by the L-th cyclotomic polynomial.

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

namespace parthad::cyclotomic {

using Poly = std::vector<std::int64_t>;  // low degree first

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Remainder of `a` modulo the monic polynomial `m`.
inline Poly remainder_monic(Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm && !a.empty()) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) a[shift + k] -= lead * m[k];
    trim(a);
  }
  return a;
}

/// Exact quotient of `a` by the monic divisor `m`.
inline Poly divide_monic(Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  if (a.size() <= dm) return {};
  Poly q(a.size() - dm, 0);
  while (a.size() > dm && !a.empty()) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    q[shift] = lead;
    for (std::size_t k = 0; k <= dm; ++k) a[shift + k] -= lead * m[k];
    trim(a);
  }
  return q;
}

/// Phi_n, built from x^n - 1 = prod_{d | n} Phi_d(x).
inline Poly polynomial(std::int64_t n) {
  std::map<std::int64_t, Poly> memo;
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  for (std::int64_t d : divisors) {
    Poly p(static_cast<std::size_t>(d) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (std::int64_t e : divisors) {
      if (e >= d) break;
      if (d % e == 0) p = divide_monic(std::move(p), memo.at(e));
    }
    memo.emplace(d, std::move(p));
  }
  return memo.at(n);
}

/// True iff sum over k of zeta_order^{exponents[k]} is exactly zero.
inline bool sum_of_roots_is_zero(std::span<const std::int64_t> exponents, std::int64_t order) {
  Poly p(static_cast<std::size_t>(order), 0);
  for (std::int64_t e : exponents) {
    const std::int64_t r = ((e % order) + order) % order;
    p[static_cast<std::size_t>(r)] += 1;
  }
  return remainder_monic(std::move(p), polynomial(order)).empty();
}

}  // namespace parthad::cyclotomic
