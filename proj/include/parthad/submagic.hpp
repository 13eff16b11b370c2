#pragma once

// Finite-dimensional grids of projections (P_ij) in M_M(M_d(C)).
//
// A grid is submagic when every block is an orthogonal projection and blocks
// sharing a row or a column are pairwise orthogonal; it is magic when in
// addition every row and column sums to the identity.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "parthad/error.hpp"
#include "parthad/linalg.hpp"
#include "parthad/pperm.hpp"
#include "parthad/pre_latin.hpp"
#include "parthad/torus_matrix.hpp"

namespace parthad {

using linalg::CMat;
using linalg::CVec;

class ProjGrid {
 public:
  ProjGrid() = default;

  ProjGrid(std::size_t m, std::size_t d, std::vector<CMat> blocks) : m_(m), d_(d), blocks_(std::move(blocks)) {
    if (m_ == 0 || d_ == 0) throw Error(ErrorKind::InvalidArgument, "grid size and dimension must be positive");
    if (blocks_.size() != m_ * m_) throw Error(ErrorKind::SizeMismatch, "grid needs M^2 blocks");
    for (const auto& b : blocks_)
      if (b.rows() != static_cast<Eigen::Index>(d_) || b.cols() != static_cast<Eigen::Index>(d_))
        throw Error(ErrorKind::SizeMismatch, "every block must be d x d");
  }

  static ProjGrid zeros(std::size_t m, std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return ProjGrid(m, d, std::vector<CMat>(m * m, CMat::Zero(n, n)));
  }

  std::size_t size() const noexcept { return m_; }
  std::size_t dim() const noexcept { return d_; }

  /// Block (i, j), 0-based.
  const CMat& block(std::size_t i, std::size_t j) const { return blocks_.at(i * m_ + j); }
  CMat& block(std::size_t i, std::size_t j) { return blocks_.at(i * m_ + j); }

  const std::vector<CMat>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const ProjGrid& a, const ProjGrid& b) {
    if (a.m_ != b.m_ || a.d_ != b.d_) return false;
    for (std::size_t k = 0; k < a.blocks_.size(); ++k)
      if (!(a.blocks_[k].array() == b.blocks_[k].array()).all()) return false;
    return true;
  }

 private:
  std::size_t m_ = 0;
  std::size_t d_ = 0;
  std::vector<CMat> blocks_;
};

/// True iff the top-left block of `big` equals `small` bit for bit.
inline bool extends_exactly(const ProjGrid& big, const ProjGrid& small) {
  if (big.dim() != small.dim() || big.size() < small.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = 0; j < small.size(); ++j)
      if (!(big.block(i, j).array() == small.block(i, j).array()).all()) return false;
  return true;
}

struct GridReport {
  bool submagic = false;
  bool magic = false;
  bool commuting = false;
  std::vector<std::pair<std::string, double>> worst_violations;

  double violation(std::string_view label) const {
    for (const auto& [k, v] : worst_violations)
      if (k == label) return v;
    return 0.0;
  }
};

namespace detail {

/// Running maximum of spectral norms; skips the eigensolve whenever the
/// Frobenius bound cannot raise the maximum.
struct NormMax {
  double value = 0.0;
  void add(const CMat& x) {
    if (x.norm() <= value) return;
    value = std::max(value, linalg::op_norm(x));
  }
};

}  // namespace detail

/// Sum checks (magic row/column sums) use tol * d.
inline GridReport check_grid(const ProjGrid& p, double tol = kDefaultTol) {
  const std::size_t m = p.size();
  const auto d = static_cast<Eigen::Index>(p.dim());
  const double sum_tol = tol * static_cast<double>(p.dim());
  detail::NormMax idem, herm, row_orth, col_orth, row_sum, col_sum, comm;
  for (const auto& b : p.blocks()) {
    idem.add(b * b - b);
    herm.add(b - b.adjoint());
  }
  for (std::size_t i = 0; i < m; ++i) {
    CMat rs = CMat::Zero(d, d);
    CMat cs = CMat::Zero(d, d);
    for (std::size_t j = 0; j < m; ++j) {
      rs += p.block(i, j);
      cs += p.block(j, i);
      for (std::size_t k = 0; k < m; ++k) {
        if (k == j) continue;
        row_orth.add(p.block(i, j) * p.block(i, k));
        col_orth.add(p.block(j, i) * p.block(k, i));
      }
    }
    row_sum.add(rs - linalg::identity(d));
    col_sum.add(cs - linalg::identity(d));
  }
  const auto& bl = p.blocks();
  for (std::size_t a = 0; a < bl.size(); ++a)
    for (std::size_t b = a + 1; b < bl.size(); ++b) comm.add(bl[a] * bl[b] - bl[b] * bl[a]);

  GridReport rep;
  rep.submagic = idem.value <= tol && herm.value <= tol && row_orth.value <= tol && col_orth.value <= tol;
  rep.magic = rep.submagic && row_sum.value <= sum_tol && col_sum.value <= sum_tol;
  rep.commuting = comm.value <= tol;
  rep.worst_violations = {{"idempotent", idem.value},    {"hermitian", herm.value}, {"row_orthogonality", row_orth.value},
                          {"column_orthogonality", col_orth.value}, {"row_sum", row_sum.value},
                          {"column_sum", col_sum.value}, {"commutator", comm.value}};
  return rep;
}

namespace detail {

/// P_ij = xi_ij xi_ij^* / N with xi_ij = R_i / R_j; no orthogonality check.
inline ProjGrid quotient_grid(const TorusMatrix& h) {
  const std::size_t m = h.rows();
  const double n = static_cast<double>(h.cols());
  std::vector<CMat> blocks;
  blocks.reserve(m * m);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const CVec xi = to_eigen(row_quotient(h, i, j));
      blocks.push_back((xi * xi.adjoint()) / n);
    }
  return ProjGrid(m, h.cols(), std::move(blocks));
}

}  // namespace detail

/// P_ij = Proj(R_i / R_j) on C^N. Throws NotHadamard unless H is partial Hadamard.
inline ProjGrid grid_from_hadamard(const TorusMatrix& h, double tol = kDefaultTol) {
  const auto rep = is_partial_hadamard(h, tol);
  if (!rep.ok) {
    std::string where = rep.worst_pair ? " (rows " + std::to_string(rep.worst_pair->first) + "," +
                                             std::to_string(rep.worst_pair->second) + ")"
                                       : "";
    throw Error(ErrorKind::NotHadamard, "rows are not pairwise orthogonal" + where, rep.worst_value);
  }
  return detail::quotient_grid(h);
}

/// P_ij = Proj(basis[L_ij - 1]).
inline ProjGrid grid_from_pre_latin(const PreLatinSquare& l, const std::vector<CVec>& basis) {
  if (basis.size() < l.alphabet()) throw Error(ErrorKind::SizeMismatch, "basis shorter than the alphabet");
  const std::size_t m = l.size();
  const auto d = static_cast<std::size_t>(basis.front().size());
  std::vector<CMat> blocks;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) blocks.push_back(linalg::projector(basis.at(l(i, j) - 1)));
  return ProjGrid(m, d, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Rank-one grids and pre-Latin squares

struct RankOneDecomposition {
  PreLatinSquare square;
  std::vector<CVec> basis;  // orthonormal; basis[x-1] spans the image labelled x
};

/// Labels the distinct images of a commuting rank-one submagic grid. Cells are
/// scanned by cyclic diagonal (i - j) mod M = 0, 1, ..., M-1, row-major within
/// a diagonal, and labels are assigned in first-seen order; the alphabet is then
/// padded to `n_target` with an orthonormal completion of the basis.
inline RankOneDecomposition rank_one_decomposition(const ProjGrid& p, std::size_t n_target, double tol = kDefaultTol) {
  const std::size_t m = p.size();
  const auto d = static_cast<Eigen::Index>(p.dim());
  if (!check_grid(p, tol).submagic) throw Error(ErrorKind::NotSubmagic, "grid is not submagic");
  if (n_target > p.dim()) throw Error(ErrorKind::InvalidArgument, "alphabet larger than the ambient dimension");

  std::vector<CVec> images(m * m);
  for (std::size_t k = 0; k < m * m; ++k) {
    Eigen::SelfAdjointEigenSolver<CMat> es(p.blocks()[k]);
    const auto& ev = es.eigenvalues();
    const auto rank = (ev.array() > 0.5).count();
    if (rank != 1)
      throw Error(ErrorKind::RankError,
                  "block (" + std::to_string(k / m + 1) + "," + std::to_string(k % m + 1) + ") has rank " + std::to_string(rank),
                  static_cast<double>(rank));
    images[k] = es.eigenvectors().col(d - 1);
  }

  std::vector<std::size_t> reps;  // cell index of each label's first occurrence
  std::vector<std::vector<std::uint32_t>> labels(m, std::vector<std::uint32_t>(m, 0));
  for (std::size_t offset = 0; offset < m; ++offset) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + m - offset) % m;
      const CMat& b = p.block(i, j);
      std::uint32_t found = 0;
      for (std::size_t x = 0; x < reps.size(); ++x) {
        const CMat& r = p.blocks()[reps[x]];
        if (linalg::op_norm(b - r) <= tol) {
          found = static_cast<std::uint32_t>(x + 1);
          break;
        }
        const double overlap = linalg::op_norm(b * r);
        if (overlap > tol)
          throw Error(ErrorKind::NotCommuting, "images are neither equal nor orthogonal", overlap);
      }
      if (!found) {
        reps.push_back(i * m + j);
        found = static_cast<std::uint32_t>(reps.size());
      }
      labels[i][j] = found;
    }
  }
  if (reps.size() > n_target)
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(reps.size()) + " distinct images exceed alphabet " + std::to_string(n_target));

  RankOneDecomposition out{validate(labels, n_target), {}};
  CMat covered = CMat::Zero(d, d);
  for (std::size_t k : reps) {
    out.basis.push_back(images[k]);
    covered += p.blocks()[k];
  }
  if (out.basis.size() < n_target) {
    const CMat rest = linalg::range_basis(linalg::identity(d) - covered);
    for (Eigen::Index c = 0; c < rest.cols() && out.basis.size() < n_target; ++c) out.basis.push_back(rest.col(c));
  }
  return out;
}

inline PreLatinSquare pre_latin_from_rank_one(const ProjGrid& p, std::size_t n_target, double tol = kDefaultTol) {
  return rank_one_decomposition(p, n_target, tol).square;
}

// ---------------------------------------------------------------------------
// Joint spectrum of commuting grids

struct JointEigenbasis {
  CMat vectors;                            // d x d, orthonormal columns
  std::vector<PartialPermutation> points;  // points[k] read off column k
};

struct ClassicalPoint {
  PartialPermutation point;
  std::size_t multiplicity = 0;
};

namespace detail {

inline constexpr int kSplitRetries = 3;

inline void split_joint(const ProjGrid& p, const CMat& v, double tol, std::uint64_t seed, std::vector<CVec>& out) {
  const auto k = v.cols();
  if (k == 1) {
    out.push_back(v.col(0));
    return;
  }
  std::vector<CMat> restricted;
  bool all_scalar = true;
  for (const auto& b : p.blocks()) {
    CMat a = v.adjoint() * b * v;
    const std::complex<double> mean = a.trace() / static_cast<double>(k);
    if (linalg::op_norm(a - mean * linalg::identity(k)) > tol) all_scalar = false;
    restricted.push_back(std::move(a));
  }
  if (all_scalar) {
    for (Eigen::Index c = 0; c < k; ++c) out.push_back(v.col(c));
    return;
  }
  for (int attempt = 0; attempt <= kSplitRetries; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt + 1) + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    CMat s = CMat::Zero(k, k);
    for (const auto& a : restricted) s += weight(rng) * a;
    s = (s + s.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(s);
    const auto& ev = es.eigenvalues();
    std::vector<Eigen::Index> cuts{0};
    for (Eigen::Index c = 1; c < k; ++c)
      if (ev(c) - ev(c - 1) > 10.0 * tol) cuts.push_back(c);
    cuts.push_back(k);
    if (cuts.size() <= 2) continue;
    for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
      const CMat sub = v * es.eigenvectors().middleCols(cuts[g], cuts[g + 1] - cuts[g]);
      split_joint(p, sub, tol, seed ^ (static_cast<std::uint64_t>(g) << 32), out);
    }
    return;
  }
  throw Error(ErrorKind::DegenerateSplit, "joint eigenspace refinement failed after retries");
}

inline PartialPermutation read_point(const ProjGrid& p, const CVec& v) {
  const std::size_t m = p.size();
  std::vector<std::uint32_t> img(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double val = std::real(v.dot(p.block(i, j) * v));
      if (val > 0.5) {
        if (img[j] != 0) throw Error(ErrorKind::NotSubmagic, "column holds two eigenvalue-one blocks");
        img[j] = static_cast<std::uint32_t>(i + 1);
      }
    }
  try {
    return PartialPermutation(std::move(img));
  } catch (const Error&) {
    throw Error(ErrorKind::NotSubmagic, "row holds two eigenvalue-one blocks");
  }
}

inline void require_commuting(const ProjGrid& p, double tol) {
  const auto rep = check_grid(p, tol);
  if (!rep.commuting) throw Error(ErrorKind::NotCommuting, "grid entries do not commute", rep.violation("commutator"));
  if (!rep.submagic) throw Error(ErrorKind::NotSubmagic, "grid is not submagic");
}

}  // namespace detail

/// Joint eigenbasis of all blocks by randomized splitting: a random weighted
/// sum of the blocks is diagonalized, eigenvalues are grouped at gaps above
/// 10 * tol, and each group is refined recursively.
inline JointEigenbasis joint_eigenbasis(const ProjGrid& p, double tol = kDefaultTol, std::uint64_t seed = 0) {
  detail::require_commuting(p, tol);
  const auto d = static_cast<Eigen::Index>(p.dim());
  std::vector<CVec> vecs;
  detail::split_joint(p, linalg::identity(d), tol, seed, vecs);
  JointEigenbasis out;
  out.vectors.resize(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    out.vectors.col(c) = vecs[static_cast<std::size_t>(c)];
    out.points.push_back(detail::read_point(p, vecs[static_cast<std::size_t>(c)]));
  }
  return out;
}

/// Multiset of classical points sigma_v(j) = i <=> P_ij v = v, in canonical order.
inline std::vector<ClassicalPoint> classical_points(const ProjGrid& p, double tol = kDefaultTol, std::uint64_t seed = 0) {
  const auto basis = joint_eigenbasis(p, tol, seed);
  std::map<PartialPermutation, std::size_t> counts;
  for (const auto& s : basis.points) ++counts[s];
  std::vector<ClassicalPoint> out;
  for (const auto& [s, c] : counts) out.push_back({s, c});
  return out;
}

inline std::vector<PartialPermutation> distinct_points(const std::vector<ClassicalPoint>& pts) {
  std::vector<PartialPermutation> out;
  for (const auto& cp : pts) out.push_back(cp.point);
  return out;
}

// ---------------------------------------------------------------------------
// Completions

namespace detail {

inline void require_submagic(const ProjGrid& p, double tol) {
  if (!check_grid(p, tol).submagic) throw Error(ErrorKind::NotSubmagic, "grid is not submagic");
}

inline ProjGrid embed_top_left(const ProjGrid& small, std::vector<CMat> blocks, std::size_t n) {
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = 0; j < small.size(); ++j) blocks[i * n + j] = small.block(i, j);
  return ProjGrid(n, small.dim(), std::move(blocks));
}

}  // namespace detail

/// Adds one row and column: P_iN = 1 - sum_j P_ij, P_Nj = 1 - sum_i P_ij,
/// P_NN = sum_ij P_ij - (N - 2). Succeeds iff P_NN is a projection.
inline ProjGrid complete_last(const ProjGrid& p, double tol = kDefaultTol) {
  detail::require_submagic(p, tol);
  const std::size_t m = p.size();
  const std::size_t n = m + 1;
  const auto d = static_cast<Eigen::Index>(p.dim());
  const CMat id = linalg::identity(d);

  std::vector<CMat> blocks(n * n, CMat::Zero(d, d));
  CMat total = CMat::Zero(d, d);
  for (std::size_t i = 0; i < m; ++i) {
    CMat row = CMat::Zero(d, d);
    CMat col = CMat::Zero(d, d);
    for (std::size_t j = 0; j < m; ++j) {
      row += p.block(i, j);
      col += p.block(j, i);
      total += p.block(i, j);
    }
    blocks[i * n + m] = id - row;
    blocks[m * n + i] = id - col;
  }
  const CMat corner = total - static_cast<double>(n - 2) * id;
  const double defect = linalg::op_norm(corner * corner - corner);
  if (defect > tol * static_cast<double>(p.dim()))
    throw Error(ErrorKind::NotCompletable, "P_NN is not a projection (||P^2 - P|| = " + detail::format_double(defect) + ")",
                defect);
  blocks[m * n + m] = corner;
  return detail::embed_top_left(p, std::move(blocks), n);
}

/// Commuting completion to N x N: each joint eigenvector v is routed through
/// the total extension sigma_v' of its classical point.
inline ProjGrid complete_commuting(const ProjGrid& p, std::size_t n, double tol = kDefaultTol, std::uint64_t seed = 0) {
  const std::size_t m = p.size();
  if (n < m) throw Error(ErrorKind::InvalidArgument, "target size smaller than the grid");
  const auto basis = joint_eigenbasis(p, tol, seed);
  for (const auto& s : basis.points)
    if (s.undefined_count() > n - m)
      throw Error(ErrorKind::NotCompletable,
                  "classical point " + to_string(s) + " has more than " + std::to_string(n - m) + " undefined values",
                  static_cast<double>(s.undefined_count()));
  const auto d = static_cast<Eigen::Index>(p.dim());
  std::vector<CMat> blocks(n * n, CMat::Zero(d, d));
  for (std::size_t k = 0; k < basis.points.size(); ++k) {
    const auto total = embed_total(basis.points[k], n);
    const CVec v = basis.vectors.col(static_cast<Eigen::Index>(k));
    const CMat pv = v * v.adjoint();
    for (std::size_t j = 1; j <= n; ++j) blocks[(*total(j) - 1) * n + (j - 1)] += pv;
  }
  return detail::embed_top_left(p, std::move(blocks), n);
}

/// Every 2 x 2 submagic grid [[p, r], [s, q]] completes to a 4 x 4 magic grid.
/// With z the projection onto ker p cap ker q, the grid splits as
///   on z:      [[0, r, r', 0], [s, 0, 0, s'], [s', 0, 0, s], [0, r', r, 0]]
///   on 1 - z:  [[p, 0, p', 0], [0, q, 0, q'], [p', 0, p, 0], [0, q', 0, q]]
/// where x' is the complement of x inside the respective piece.
inline ProjGrid complete_2x2_to_4x4(const ProjGrid& grid, double tol = kDefaultTol) {
  if (grid.size() != 2) throw Error(ErrorKind::InvalidArgument, "complete_2x2_to_4x4 needs a 2 x 2 grid");
  detail::require_submagic(grid, tol);
  const auto d = static_cast<Eigen::Index>(grid.dim());
  const CMat& p = grid.block(0, 0);
  const CMat& r = grid.block(0, 1);
  const CMat& s = grid.block(1, 0);
  const CMat& q = grid.block(1, 1);
  const CMat z = linalg::low_spectral_projection((p + q + (p + q).adjoint()) / 2.0, tol);
  const CMat w = linalg::identity(d) - z;
  const CMat rc = z - r, sc = z - s, pc = w - p, qc = w - q;
  const CMat zero = CMat::Zero(d, d);

  const std::vector<CMat> blocks = {
      p,  r,  rc + pc, zero,     //
      s,  q,  zero,    sc + qc,  //
      sc + pc, zero, p, s,       //
      zero, rc + qc, r, q,       //
  };
  return detail::embed_top_left(grid, blocks, 4);
}

struct SumBound {
  double lambda_min = 0.0;
  bool passes = false;
};

/// Necessary condition for an N x N magic completion: sum_ij P_ij >= M - K, K = N - M.
inline SumBound sum_bound_check(const ProjGrid& p, std::size_t n, double tol = kDefaultTol) {
  const auto d = static_cast<Eigen::Index>(p.dim());
  CMat total = CMat::Zero(d, d);
  for (const auto& b : p.blocks()) total += b;
  total = (total + total.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(total, Eigen::EigenvaluesOnly);
  SumBound out;
  out.lambda_min = es.eigenvalues().minCoeff();
  const double bound = 2.0 * static_cast<double>(p.size()) - static_cast<double>(n);
  out.passes = out.lambda_min >= bound - tol * static_cast<double>(p.dim());
  return out;
}

// ---------------------------------------------------------------------------
// Random submagic grids

namespace detail {

/// Projection onto a random subspace of span(basis columns), random rank in [0, cols].
template <typename Rng>
CMat random_subprojection(const CMat& basis, Rng& rng) {
  const auto w = basis.cols();
  const auto d = basis.rows();
  if (w == 0) return CMat::Zero(d, d);
  std::uniform_int_distribution<Eigen::Index> rank_dist(0, w);
  const auto rank = rank_dist(rng);
  const CMat u = basis * linalg::random_unitary(w, rng);
  const CMat v = u.leftCols(rank);
  return v * v.adjoint();
}

}  // namespace detail

/// Deterministic in `seed`. M = 1: one random projection. M = 2: random p, q
/// inside a random subspace, then r, s inside ker p cap ker q.
inline ProjGrid random_grid(std::size_t m, std::size_t d, std::uint64_t seed, double tol = kDefaultTol) {
  if (m == 0 || d == 0) throw Error(ErrorKind::InvalidArgument, "grid size and dimension must be positive");
  if (m > 2) throw Error(ErrorKind::Unsupported, "random_grid supports M <= 2, got " + std::to_string(m));
  std::mt19937_64 rng(seed);
  const auto n = static_cast<Eigen::Index>(d);

  if (d == 1) {
    // Projections on C^1 are the scalars 0 and 1.
    std::bernoulli_distribution coin(0.5);
    auto scalar = [](bool b) { return CMat::Constant(1, 1, b ? 1.0 : 0.0); };
    const bool p = coin(rng);
    if (m == 1) return ProjGrid(1, 1, {scalar(p)});
    const bool q = coin(rng);
    const bool free = !p && !q;
    const bool r = free && coin(rng);
    const bool s = free && coin(rng);
    return ProjGrid(2, 1, {scalar(p), scalar(r), scalar(s), scalar(q)});
  }

  if (m == 1) {
    return ProjGrid(1, d, {detail::random_subprojection(linalg::random_unitary(n, rng), rng)});
  }
  std::uniform_int_distribution<Eigen::Index> width_dist(0, n);
  const auto width = width_dist(rng);
  const CMat frame = linalg::random_unitary(n, rng);
  const CMat inner = frame.leftCols(width);
  const CMat p = detail::random_subprojection(inner, rng);
  const CMat q = detail::random_subprojection(inner, rng);
  const CMat z = linalg::low_spectral_projection((p + q + (p + q).adjoint()) / 2.0, tol);
  const CMat zb = linalg::range_basis(z);
  const CMat r = detail::random_subprojection(zb, rng);
  const CMat s = detail::random_subprojection(zb, rng);
  return ProjGrid(2, d, {p, r, s, q});
}

// ---------------------------------------------------------------------------
// .pgrid format: `pgrid v1`, `M d`, then M^2 blocks row-major, each d lines of
// d `(a,b)` tokens; blocks separated by blank lines.

inline std::string to_pgrid(const ProjGrid& p) {
  std::string out = "pgrid v1\n" + std::to_string(p.size()) + " " + std::to_string(p.dim()) + "\n";
  for (std::size_t k = 0; k < p.blocks().size(); ++k) {
    if (k) out += '\n';
    const CMat& b = p.blocks()[k];
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      for (Eigen::Index c = 0; c < b.cols(); ++c) {
        if (c) out += ' ';
        out += "(" + detail::format_double(b(r, c).real()) + "," + detail::format_double(b(r, c).imag()) + ")";
      }
      out += '\n';
    }
  }
  return out;
}

inline std::complex<double> parse_complex_token(std::string_view tok) {
  tok = detail::strip(tok);
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw Error(ErrorKind::Parse, "expected '(a,b)' token, got '" + std::string(tok) + "'");
  const auto body = tok.substr(1, tok.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorKind::Parse, "complex token needs a comma");
  return {detail::parse_number<double>(body.substr(0, comma), "real part"),
          detail::parse_number<double>(body.substr(comma + 1), "imaginary part")};
}

inline ProjGrid parse_pgrid(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty() || lines[0] != "pgrid v1") throw Error(ErrorKind::Parse, "missing 'pgrid v1' header");
  if (lines.size() < 2) throw Error(ErrorKind::Parse, "missing 'M d' line");
  const auto [m, d] = detail::parse_dims(lines[1], "M d");
  if (lines.size() != 2 + m * m * d) throw Error(ErrorKind::Parse, "expected " + std::to_string(m * m * d) + " block rows");
  std::vector<CMat> blocks;
  std::size_t line = 2;
  const auto n = static_cast<Eigen::Index>(d);
  for (std::size_t k = 0; k < m * m; ++k) {
    CMat b(n, n);
    for (Eigen::Index r = 0; r < n; ++r, ++line) {
      const auto toks = detail::split_ws(lines[line]);
      if (toks.size() != d) throw Error(ErrorKind::Parse, "block row with " + std::to_string(toks.size()) + " entries");
      for (Eigen::Index c = 0; c < n; ++c) b(r, c) = parse_complex_token(toks[static_cast<std::size_t>(c)]);
    }
    blocks.push_back(std::move(b));
  }
  return ProjGrid(m, d, std::move(blocks));
}

inline ProjGrid read_pgrid(const std::string& path) { return parse_pgrid(detail::read_file(path)); }

}  // namespace parthad
