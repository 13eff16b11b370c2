#pragma once

// Acceptance suite. Each criterion returns a named pass/fail line with the
// measured quantities; `verify` in the CLI and the acceptance test both print these.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "parthad/hcompletion.hpp"
#include "parthad/pperm.hpp"
#include "parthad/pre_latin.hpp"
#include "parthad/submagic.hpp"
#include "parthad/torus_matrix.hpp"

namespace parthad::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

template <typename... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << parts);
  return os.str();
}

/// Closure by repeated pairwise products until nothing new appears.
inline std::size_t naive_closure_order(const std::vector<PartialPermutation>& gens) {
  std::set<PartialPermutation> s(gens.begin(), gens.end());
  for (;;) {
    std::set<PartialPermutation> next = s;
    for (const auto& a : s)
      for (const auto& b : s) next.insert(compose(a, b));
    if (next.size() == s.size()) return s.size();
    s = std::move(next);
  }
}

inline TorusMatrix first_rows(const TorusMatrix& h, std::size_t k) {
  std::vector<std::size_t> r(k);
  for (std::size_t i = 0; i < k; ++i) r[i] = i + 1;
  return select_rows(h, r);
}

/// Random row permutation, column permutation and unimodular diagonal scalings of h.
inline TorusMatrix randomize(const TorusMatrix& h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::vector<std::size_t> rp(h.rows()), cp(h.cols());
  for (std::size_t k = 0; k < rp.size(); ++k) rp[k] = k;
  for (std::size_t k = 0; k < cp.size(); ++k) cp[k] = k;
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  std::vector<TorusScalar> dr(h.rows()), dc(h.cols());
  for (auto& x : dr) x = TorusScalar::phase(ang(rng));
  for (auto& x : dc) x = TorusScalar::phase(ang(rng));
  std::vector<TorusScalar> e;
  e.reserve(h.entries().size());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) e.push_back(dr[i] * h.at(rp[i], cp[j]) * dc[j]);
  return TorusMatrix(h.rows(), h.cols(), std::move(e));
}

inline CriterionResult guarded(int id, std::string name, const std::function<CriterionResult()>& body) {
  try {
    auto r = body();
    r.id = id;
    r.name = std::move(name);
    return r;
  } catch (const std::exception& e) {
    return {id, std::move(name), false, cat("unexpected error: ", e.what())};
  }
}

}  // namespace detail

inline CriterionResult counting() {
  return detail::guarded(1, "counting", [] {
    const int expected[] = {1, 2, 7, 34, 209, 1546, 13327};
    bool ok = true;
    for (unsigned n = 0; n <= 6; ++n) ok = ok && count_all(n) == expected[n];
    for (std::size_t n = 0; n <= 5; ++n) {
      std::size_t seen = 0;
      for_each_partial_permutation(n, [&](const PartialPermutation&) { ++seen; });
      ok = ok && count_all(static_cast<unsigned>(n)) == seen;
    }
    return CriterionResult{0, "", ok, "count_all(0..6) = 1 2 7 34 209 1546 13327, enumeration agrees for N <= 5"};
  });
}

/// count_all(N) / (N! sqrt(exp(4 sqrt N - 1) / (4 pi sqrt N))).
inline double asymptotic_ratio(unsigned n) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  Float fact = 1;
  for (unsigned k = 2; k <= n; ++k) fact *= k;
  const Float rn = boost::multiprecision::sqrt(Float(n));
  const Float approx = fact * boost::multiprecision::sqrt(boost::multiprecision::exp(4 * rn - 1) /
                                                           (4 * boost::math::constants::pi<Float>() * rn));
  return static_cast<double>(Float(count_all(n)) / approx);
}

inline CriterionResult asymptotics() {
  return detail::guarded(2, "asymptotics", [] {
    const auto start = std::chrono::steady_clock::now();
    const double r25 = asymptotic_ratio(25), r50 = asymptotic_ratio(50), r100 = asymptotic_ratio(100);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool window = r100 >= 0.95 && r100 <= 1.05;
    const bool monotone = std::abs(r25 - 1) > std::abs(r50 - 1) && std::abs(r50 - 1) > std::abs(r100 - 1);
    const bool fast = secs < 1.0;
    return CriterionResult{0, "", window && monotone && fast,
                           detail::cat("ratio(25)=", r25, " ratio(50)=", r50, " ratio(100)=", r100,
                                       " in[0.95,1.05]=", window, " monotone=", monotone, " time=", secs, "s")};
  });
}

inline CriterionResult fourier_pipeline() {
  return detail::guarded(3, "fourier_pipeline", [] {
    bool ok = true;
    std::string bad;
    for (int n = 2; n <= 6; ++n) {
      const auto g = grid_from_hadamard(fourier(n), 1e-10);
      const auto rep = check_grid(g, 1e-10);
      const auto l = pre_latin_from_rank_one(g, static_cast<std::size_t>(n), 1e-10);
      const auto sg = semigroup_of(l);
      std::vector<PartialPermutation> gens;
      for (std::uint32_t x = 1; x <= static_cast<std::uint32_t>(n); ++x) gens.push_back(sigma_of(l, x));
      const bool here = rep.submagic && rep.magic && rep.commuting && l == cyclic_square(static_cast<std::size_t>(n)) &&
                        sg.is_group() && sg.order() == static_cast<std::size_t>(n) &&
                        detail::naive_closure_order(gens) == static_cast<std::size_t>(n);
      if (!here) bad += detail::cat(" N=", n);
      ok = ok && here;
    }
    return CriterionResult{0, "", ok, ok ? "F_2..F_6 magic, commuting, cyclic square, group of order N" : "failed at" + bad};
  });
}

inline CriterionResult deleted_row_completion() {
  return detail::guarded(4, "deleted_row_completion", [] {
    double worst_gram = 0.0, worst_phase = 0.0;
    for (int n = 3; n <= 8; ++n) {
      const auto f = fourier(n);
      const auto c = complete_row(delete_row(f, static_cast<std::size_t>(n)), 1e-8);
      const auto a = c.to_eigen();
      const Eigen::MatrixXcd hh = a * a.adjoint() - static_cast<double>(n) * Eigen::MatrixXcd::Identity(n, n);
      worst_gram = std::max(worst_gram, hh.cwiseAbs().maxCoeff());
      const auto last = static_cast<std::size_t>(n - 1);
      const cplx ref = c.at(last, 0).value() / f.at(last, 0).value();
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const cplx r = c.at(last, j).value() / f.at(last, j).value();
        worst_phase = std::max(worst_phase, std::abs(std::arg(r / ref)));
      }
    }
    const bool ok = worst_gram <= 1e-8 && worst_phase < 1e-8;
    return CriterionResult{0, "", ok, detail::cat("max |HH*-NI| = ", worst_gram, ", max phase deviation = ", worst_phase)};
  });
}

inline CriterionResult criteria_concordance(std::uint64_t seed, std::size_t per_n = 100) {
  return detail::guarded(5, "criteria_concordance", [&] {
    constexpr double tol = 1e-8, eps = 0.05;
    std::mt19937_64 rng(seed);
    std::size_t disagreements = 0, wrong = 0;
    std::string evidence;
    for (int n = 3; n <= 6; ++n) {
      std::size_t accepted_pos[4] = {}, accepted_neg[4] = {};
      for (std::size_t t = 0; t < per_n; ++t) {
        const auto full = detail::randomize(fourier(n), rng);
        const auto row = std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(n))(rng);
        const auto pos = delete_row(full, row);
        std::vector<TorusScalar> e(pos.entries().begin(), pos.entries().end());
        const auto k = std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng);
        e[k] = e[k] * TorusScalar::phase(eps);
        const TorusMatrix neg(pos.rows(), pos.cols(), std::move(e));

        for (int sign = 0; sign < 2; ++sign) {
          const auto& h = sign == 0 ? pos : neg;
          bool votes[4];
          try {
            votes[0] = modulus_profile(h, tol).constant;
          } catch (const Error&) {
            votes[0] = false;
          }
          votes[1] = gram_criterion(h, tol);
          try {
            votes[2] = weighted_criterion(h, tol).passes;
          } catch (const Error&) {
            votes[2] = false;
          }
          try {
            complete_last(grid_from_hadamard(h, tol), tol);
            votes[3] = true;
          } catch (const Error&) {
            votes[3] = false;
          }
          auto* tally = sign == 0 ? accepted_pos : accepted_neg;
          for (int c = 0; c < 4; ++c) tally[c] += votes[c] ? 1 : 0;
          if (!(votes[0] == votes[1] && votes[1] == votes[2] && votes[2] == votes[3])) ++disagreements;
          if (votes[0] != (sign == 0) || votes[1] != (sign == 0) || votes[2] != (sign == 0) || votes[3] != (sign == 0)) ++wrong;
        }
      }
      evidence += detail::cat(" N=", n, " pos[", accepted_pos[0], ",", accepted_pos[1], ",", accepted_pos[2], ",",
                              accepted_pos[3], "] neg[", accepted_neg[0], ",", accepted_neg[1], ",", accepted_neg[2], ",",
                              accepted_neg[3], "]");
    }
    return CriterionResult{0, "", disagreements == 0 && wrong == 0,
                           detail::cat(per_n, "+", per_n, " per N, disagreements=", disagreements, " misclassified=", wrong,
                                       "; accepted by [profile,gram,weighted,grid]:", evidence)};
  });
}

inline CriterionResult two_by_two(std::uint64_t seed, std::size_t count = 200) {
  return detail::guarded(6, "two_by_two_to_four", [&] {
    std::size_t failures = 0;
    for (std::size_t d : {2u, 4u, 8u})
      for (std::size_t k = 0; k < count; ++k) {
        const auto g = random_grid(2, d, seed + k);
        const auto c = complete_2x2_to_4x4(g, 1e-9);
        if (!check_grid(c, 1e-9).magic || !extends_exactly(c, g)) ++failures;
      }
    const CMat p = linalg::projector(CVec::Unit(2, 0));
    const ProjGrid counter(2, 2, {p, CMat::Zero(2, 2), CMat::Zero(2, 2), p});
    bool last_fails = false;
    try {
      complete_last(counter);
    } catch (const Error& e) {
      last_fails = e.kind() == ErrorKind::NotCompletable;
    }
    const auto bound = sum_bound_check(counter, 3);
    const bool ok = failures == 0 && last_fails && !bound.passes && std::abs(bound.lambda_min) < 1e-12;
    return CriterionResult{0, "", ok,
                           detail::cat(3 * count, " random grids, failures=", failures, "; p=q: complete_last rejects=", last_fails,
                                       " lambda_min=", bound.lambda_min)};
  });
}

inline CriterionResult subantipode() {
  return detail::guarded(7, "subantipode", [] {
    bool ok = true;
    for (std::size_t m = 1; m <= 4; ++m) ok = ok && verify_subantipode(m);
    return CriterionResult{0, "", ok, "M = 1..4 exhaustive"};
  });
}

inline std::size_t hadamard_semigroup_order(const TorusMatrix& h, double tol = kDefaultTol) {
  return generate_semigroup(distinct_points(classical_points(grid_from_hadamard(h, tol), tol))).order();
}

inline CriterionResult tensor_semigroups() {
  return detail::guarded(8, "tensor_semigroups", [] {
    const std::size_t o22 = hadamard_semigroup_order(tensor(fourier(2), fourier(2)));
    bool ok = o22 == 4;
    std::string bad;
    for (int m = 2; m <= 4; ++m)
      for (int n = 2; n <= 4; ++n) {
        const auto lhs = hadamard_semigroup_order(tensor(fourier(m), fourier(n)));
        const auto rhs = hadamard_semigroup_order(fourier(m)) * hadamard_semigroup_order(fourier(n));
        if (lhs != rhs) {
          ok = false;
          bad += detail::cat(" ", m, "x", n, ":", lhs, "!=", rhs);
        }
      }
    return CriterionResult{0, "", ok, detail::cat("|G(F2 x F2)| = ", o22, bad.empty() ? ", products agree for m,n <= 4" : bad)};
  });
}

inline TorusMatrix m2_family() { return parse_phm("phm v1\n2 4\n1 1 1 1\n1 i -1 -i\n"); }

inline CriterionResult m2_family_check(std::uint64_t seed) {
  return detail::guarded(9, "m2_family", [&] {
    const auto g = grid_from_hadamard(m2_family());
    const auto rep = check_grid(g);
    const auto l = pre_latin_from_rank_one(g, 4);
    const bool square_ok = l == validate(std::vector<std::vector<std::uint32_t>>{{1, 2}, {3, 1}}, 4);
    const auto order = semigroup_of(l).order();
    // (a, b, -a, -b) keeps the sum zero; the sum of squares is 2(a^2 + b^2) != 0 when b != +-i a.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), gap(0.3, 1.2);
    const double alpha = ang(rng), theta = gap(rng);
    const auto a = TorusScalar::phase(alpha), b = TorusScalar::phase(alpha + theta), minus = TorusScalar::root(1, 2);
    const TorusScalar one;
    const auto bad = TorusMatrix::from_rows({{one, one, one, one}, {a, b, minus * a, minus * b}});
    const auto bad_rep = check_grid(grid_from_hadamard(bad));
    const bool ok = rep.submagic && rep.commuting && square_ok && order == 6 && bad_rep.submagic && !bad_rep.commuting;
    return CriterionResult{0, "", ok,
                           detail::cat("commuting=", rep.commuting, " square=[[1,2],[3,1]]:", square_ok, " order=", order,
                                       "; random row commutator=", bad_rep.violation("commutator"))};
  });
}

inline CriterionResult commuting_round_trip() {
  return detail::guarded(10, "commuting_round_trip", [] {
    const auto g = grid_from_hadamard(m2_family());
    const auto c = complete_commuting(g, 4);
    const auto rep = check_grid(c);
    std::set<PartialPermutation> expect, got;
    for (const auto& p : classical_points(g)) expect.insert(embed_total(p.point, 4));
    for (const auto& p : classical_points(c)) got.insert(p.point);
    const bool ok = rep.magic && rep.commuting && extends_exactly(c, g) && expect == got;
    std::string pts;
    for (const auto& p : got) pts += " [" + to_string(p) + "]";
    return CriterionResult{0, "", ok, detail::cat("magic=", rep.magic, " commuting=", rep.commuting, " points:", pts)};
  });
}

inline std::vector<CriterionResult> run_all(std::uint64_t seed = 0) {
  return {counting(),           asymptotics(),        fourier_pipeline(), deleted_row_completion(),
          criteria_concordance(seed), two_by_two(seed), subantipode(),    tensor_semigroups(),
          m2_family_check(seed), commuting_round_trip()};
}

inline std::string format_line(const CriterionResult& r) {
  return detail::cat(r.pass ? "PASS" : "FAIL", " [", r.id, "] ", r.name, ": ", r.detail);
}

}  // namespace parthad::verify
