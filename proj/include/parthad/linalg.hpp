#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

namespace parthad::linalg {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Spectral norm, sqrt(lambda_max(X* X)) from the Hermitian eigensolver.
inline double op_norm(const CMat& x) {
  if (x.size() == 0) return 0.0;
  const CMat g = x.adjoint() * x;
  Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Orthogonal projection onto span(v).
inline CMat projector(const CVec& v) { return (v * v.adjoint()) / v.squaredNorm(); }

inline CMat identity(Eigen::Index d) { return CMat::Identity(d, d); }

/// Projection onto the eigenvectors of the Hermitian `a` with eigenvalue below `threshold`.
inline CMat low_spectral_projection(const CMat& a, double threshold) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  const auto d = a.rows();
  CMat p = CMat::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    if (es.eigenvalues()(k) < threshold) p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
  return p;
}

/// Orthonormal basis (as columns) of the range of the projection `p`.
inline CMat range_basis(const CMat& p) {
  Eigen::SelfAdjointEigenSolver<CMat> es(p);
  const auto d = p.rows();
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < d; ++k)
    if (es.eigenvalues()(k) > 0.5) ++r;
  return es.eigenvectors().rightCols(r);
}

/// Haar-ish random unitary from the QR factorization of a complex Gaussian matrix.
template <typename Rng>
CMat random_unitary(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<CMat> qr(g);
  return qr.householderQ() * CMat::Identity(d, d);
}

}  // namespace parthad::linalg
