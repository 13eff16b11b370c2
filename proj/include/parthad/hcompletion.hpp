#pragma once

// Completion of (N-1) x N partial Hadamard matrices.
//
// The rows span a hyperplane whose orthogonal complement is spanned by the
// cofactor vector Z_j = (-1)^j conj(det H^(j)) (j 1-based). H completes to an
// N x N complex Hadamard matrix iff |det H^(j)| does not depend on j, and the
// completing row is then N^(1 - N/2) Z.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "parthad/error.hpp"
#include "parthad/linalg.hpp"
#include "parthad/torus_matrix.hpp"

namespace parthad {

struct KernelData {
  std::vector<cplx> z;
  std::vector<cplx> minors;  // det H^(j)
  std::vector<double> moduli;  // |Z_j|
};

struct ModulusProfile {
  std::vector<double> moduli;
  bool constant = false;
  bool hadamard_value = false;
  double scale = 1.0;  // N^(N/2 - 1)
};

struct WeightedCriterion {
  bool passes = false;
  double c = 0.0;
  double defect = 0.0;  // ||H D H^* - c 1||
};

namespace detail {

inline void require_hyperplane_shape(const TorusMatrix& h) {
  if (h.rows() + 1 != h.cols())
    throw Error(ErrorKind::SizeMismatch, "expected an (N-1) x N matrix, got " + std::to_string(h.rows()) + " x " +
                                             std::to_string(h.cols()));
}

inline double hadamard_scale(std::size_t n) {
  return std::pow(static_cast<double>(n), static_cast<double>(n) / 2.0 - 1.0);
}

/// Cofactor vector without the partial-Hadamard precondition.
inline KernelData cofactors(const TorusMatrix& h, double tol) {
  require_hyperplane_shape(h);
  KernelData k;
  for (std::size_t j = 1; j <= h.cols(); ++j) {
    const cplx det = minor_det(h, j, tol);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    k.minors.push_back(det);
    k.z.push_back(sign * std::conj(det));
    k.moduli.push_back(std::abs(det));
  }
  return k;
}

}  // namespace detail

inline KernelData kernel_vector(const TorusMatrix& h, double tol = kDefaultTol) {
  detail::require_hyperplane_shape(h);
  const auto rep = is_partial_hadamard(h, tol);
  if (!rep.ok) throw Error(ErrorKind::NotHadamard, "rows are not pairwise orthogonal", rep.worst_value);
  auto k = detail::cofactors(h, tol);
  const double n = static_cast<double>(h.cols());
  const double bound = tol * std::pow(n, n / 2.0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    cplx s{0.0, 0.0};
    for (std::size_t l = 0; l < h.cols(); ++l) s += h.at(i, l).value() * std::conj(k.z[l]);
    if (std::abs(s) > bound)
      throw Error(ErrorKind::IllConditioned, "kernel vector not orthogonal to row " + std::to_string(i + 1), std::abs(s));
  }
  return k;
}

/// |det H^(j)| for every j, with tolerances relative to N^(N/2 - 1).
inline ModulusProfile modulus_profile(const TorusMatrix& h, double tol = kDefaultTol) {
  const auto k = detail::cofactors(h, tol);
  ModulusProfile p;
  p.moduli = k.moduli;
  p.scale = detail::hadamard_scale(h.cols());
  const auto [lo, hi] = std::minmax_element(p.moduli.begin(), p.moduli.end());
  p.constant = (*hi - *lo) <= tol * p.scale;
  p.hadamard_value = std::all_of(p.moduli.begin(), p.moduli.end(),
                                 [&](double v) { return std::abs(v - p.scale) <= tol * p.scale; });
  return p;
}

/// Appends H_Nj = (-1)^j N^(1 - N/2) conj(det H^(j)).
inline TorusMatrix complete_row(const TorusMatrix& h, double tol = kDefaultTol) {
  const auto k = kernel_vector(h, tol);
  const auto profile = modulus_profile(h, tol);
  if (!profile.constant) {
    std::string msg = "minor moduli are not constant:";
    for (double v : profile.moduli) msg += " " + detail::format_double(v);
    const auto [lo, hi] = std::minmax_element(profile.moduli.begin(), profile.moduli.end());
    throw Error(ErrorKind::NotCompletable, msg, *hi - *lo);
  }
  const double n = static_cast<double>(h.cols());
  const double factor = std::pow(n, 1.0 - n / 2.0);
  std::vector<TorusScalar> e(h.entries().begin(), h.entries().end());
  std::vector<cplx> row;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    row.push_back(factor * k.z[j]);
    try {
      e.push_back(TorusScalar::from_complex(row.back(), tol));
    } catch (const Error&) {
      throw Error(ErrorKind::NotCompletable, "completing entry " + std::to_string(j + 1) + " is not unit modulus",
                  std::abs(std::abs(row.back()) - 1.0));
    }
  }
  // Exact input: keep the result exact when the new row lands on roots of order 4L.
  if (const auto order = h.is_exact() ? detail::common_order(h) : std::nullopt; order && *order <= 1024) {
    const std::int64_t q = 4 * *order;
    std::vector<TorusScalar> snapped(h.entries().begin(), h.entries().end());
    for (const cplx v : row) {
      const auto kq = std::llround(std::arg(v) * static_cast<double>(q) / (2.0 * std::numbers::pi));
      const auto r = TorusScalar::root(kq, q);
      if (std::abs(r.value() - v) > tol) break;
      snapped.push_back(r);
    }
    if (snapped.size() == h.cols() * h.cols()) {
      TorusMatrix exact(h.cols(), h.cols(), std::move(snapped));
      if (is_partial_hadamard(exact, tol).ok) return exact;
    }
  }
  TorusMatrix out(h.cols(), h.cols(), std::move(e));
  const auto rep = is_partial_hadamard(out, tol);
  if (!rep.ok) throw Error(ErrorKind::IllConditioned, "completed matrix fails the Hadamard check", rep.worst_value);
  return out;
}

/// G_kl = |<C_k, C_l>|^2 / N over the columns of H; equals sum_ij Proj(R_i/R_j).
inline Eigen::MatrixXd gram_matrix(const TorusMatrix& h) {
  const auto a = h.to_eigen();
  const Eigen::MatrixXcd c = a.adjoint() * a;  // c(k,l) = <C_l, C_k>
  return c.cwiseAbs2() / static_cast<double>(h.cols());
}

/// G - (N - 2) 1 is a projection.
inline bool gram_criterion(const TorusMatrix& h, double tol = kDefaultTol) {
  detail::require_hyperplane_shape(h);
  const auto n = static_cast<Eigen::Index>(h.cols());
  const Eigen::MatrixXcd q =
      gram_matrix(h).cast<cplx>() - static_cast<double>(n - 2) * Eigen::MatrixXcd::Identity(n, n);
  return linalg::op_norm(q * q - q) <= tol && linalg::op_norm(q - q.adjoint()) <= tol;
}

/// H D H^* = c 1 with D = diag |Z_k|^2 and c = sum_k |Z_k|^2.
inline WeightedCriterion weighted_criterion(const TorusMatrix& h, double tol = kDefaultTol) {
  const auto k = detail::cofactors(h, tol);
  const auto a = h.to_eigen();
  Eigen::VectorXd dz(static_cast<Eigen::Index>(k.moduli.size()));
  for (std::size_t j = 0; j < k.moduli.size(); ++j) dz(static_cast<Eigen::Index>(j)) = k.moduli[j] * k.moduli[j];
  WeightedCriterion w;
  w.c = dz.sum();
  const Eigen::MatrixXcd hdh = a * dz.cast<cplx>().asDiagonal() * a.adjoint();
  w.defect = linalg::op_norm(hdh - w.c * Eigen::MatrixXcd::Identity(hdh.rows(), hdh.cols()));
  w.passes = w.defect <= tol * w.c;
  return w;
}

}  // namespace parthad
