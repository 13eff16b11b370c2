#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "parthad/hcompletion.hpp"
#include "parthad/submagic.hpp"

namespace parthad {
namespace {

constexpr double kTol = 1e-9;
const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
const cplx I{0.0, 1.0};

TorusMatrix top_rows(const TorusMatrix& h, std::size_t k) {
  std::vector<std::size_t> r(k);
  std::iota(r.begin(), r.end(), 1u);
  return select_rows(h, r);
}

/// D1 P F D2 with random unimodular diagonals and a row permutation.
TorusMatrix dephased_variant(const TorusMatrix& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::vector<std::size_t> perm(f.rows());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<TorusScalar> col(f.cols()), row(f.rows());
  for (auto& c : col) c = TorusScalar::phase(ang(rng));
  for (auto& r : row) r = TorusScalar::phase(ang(rng));
  std::vector<TorusScalar> e;
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) e.push_back(row[i] * f.at(perm[i], j) * col[j]);
  return TorusMatrix(f.rows(), f.cols(), std::move(e));
}

/// Hadamard matrices of order N: Fourier, tensor products and the affine family at N = 4.
std::vector<TorusMatrix> hadamard_pool(int n, std::mt19937_64& rng) {
  std::vector<TorusMatrix> pool{fourier(n)};
  if (n == 4) {
    pool.push_back(tensor(fourier(2), fourier(2)));
    const auto a = TorusScalar::phase(std::uniform_real_distribution<double>(0.1, 3.0)(rng));
    const auto one = TorusScalar(), m = TorusScalar::root(1, 2);
    pool.push_back(TorusMatrix::from_rows({{one, one, one, one}, {one, one, m, m}, {one, m, a, m * a}, {one, m, m * a, a}}));
  }
  if (n == 6) {
    const int split[] = {2, 3};
    pool.push_back(fourier(split));
  }
  if (n == 8) pool.push_back(tensor(fourier(2), fourier(4)));
  return pool;
}

TorusMatrix perturb(const TorusMatrix& h, double eps, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, h.entries().size() - 1);
  std::vector<TorusScalar> e(h.entries().begin(), h.entries().end());
  const std::size_t k = pick(rng);
  e[k] = e[k] * TorusScalar::phase(eps);
  return TorusMatrix(h.rows(), h.cols(), std::move(e));
}

TEST(KernelVector, Examples) {
  const auto k3 = kernel_vector(top_rows(fourier(3), 2));
  const cplx expect[] = {-I * std::sqrt(3.0), w - 1.0, 1.0 - w * w};
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(std::abs(k3.z[j] - expect[j]), 1e-12) << j;

  const auto k2 = kernel_vector(parse_phm("phm v1\n1 2\n1 1\n"));
  EXPECT_LT(std::abs(k2.z[0] + 1.0), 1e-15);
  EXPECT_LT(std::abs(k2.z[1] - 1.0), 1e-15);

  for (double m : kernel_vector(top_rows(fourier(4), 3)).moduli) EXPECT_NEAR(m, 4.0, 1e-12);
}

TEST(KernelVector, Errors) {
  EXPECT_THROW(kernel_vector(fourier(3)), Error);
  try {
    kernel_vector(parse_phm("phm v1\n2 3\n1 1 1\n1 1 i\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHadamard);
  }
}

TEST(KernelVector, OrthogonalToRows) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 8; ++n)
    for (const auto& f : hadamard_pool(n, rng))
      for (int t = 0; t < 5; ++t) {
        const auto h = delete_row(dephased_variant(f, rng), static_cast<std::size_t>(t % n) + 1);
        const auto k = kernel_vector(h);
        const double bound = 1e-8 * std::pow(double(n), n / 2.0);
        for (std::size_t i = 0; i < h.rows(); ++i) {
          cplx s = 0;
          for (std::size_t j = 0; j < h.cols(); ++j) s += h.at(i, j).value() * std::conj(k.z[j]);
          EXPECT_LE(std::abs(s), bound) << "n=" << n;
        }
      }
}

TEST(ModulusProfile, Examples) {
  auto p = modulus_profile(top_rows(fourier(3), 2));
  EXPECT_TRUE(p.constant);
  EXPECT_TRUE(p.hadamard_value);
  for (double m : p.moduli) EXPECT_NEAR(m, std::sqrt(3.0), 1e-12);

  p = modulus_profile(parse_phm("phm v1\n2 3\n1 1 1\n1 i -1\n"));
  EXPECT_FALSE(p.constant);
  EXPECT_FALSE(p.hadamard_value);
  EXPECT_NEAR(p.moduli[0], std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p.moduli[1], 2.0, 1e-12);
  EXPECT_NEAR(p.moduli[2], std::sqrt(2.0), 1e-12);
  try {
    modulus_profile(parse_phm("phm v1\n2 3\n1 1 1\n1 1 -1\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllConditioned);  // singular minor
  }
  EXPECT_THROW(modulus_profile(fourier(2)), Error);
}

TEST(CompleteRow, Examples) {
  const auto h3 = top_rows(fourier(3), 2);
  const auto c3 = complete_row(h3);
  const cplx expect[] = {-I, -I * w * w, -I * w};
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(std::abs(c3.at(2, j).value() - expect[j]), 1e-12);
  EXPECT_TRUE(is_partial_hadamard(c3).ok);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c3.at(i, j), h3.at(i, j));

  const auto c2 = complete_row(parse_phm("phm v1\n1 2\n1 1\n"));
  EXPECT_LT(std::abs(c2.at(1, 0).value() + 1.0), 1e-15);
  EXPECT_LT(std::abs(c2.at(1, 1).value() - 1.0), 1e-15);

  const auto c4 = complete_row(top_rows(fourier(4), 3));
  EXPECT_TRUE(is_partial_hadamard(c4).ok);
  // the completing row is the deleted Fourier row up to a phase
  const cplx ratio = c4.at(3, 0).value() / fourier(4).at(3, 0).value();
  for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(c4.at(3, j).value() - ratio * fourier(4).at(3, j).value()), 1e-12);
}

TEST(CompleteRow, Errors) {
  EXPECT_EQ([] {
    try {
      complete_row(parse_phm("phm v1\n2 3\n1 1 1\n1 1 -1\n"));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  }(), ErrorKind::NotHadamard);
  EXPECT_THROW(complete_row(fourier(3)), Error);
}

TEST(GramCriterion, Examples) {
  EXPECT_TRUE(gram_criterion(top_rows(fourier(3), 2)));
  EXPECT_TRUE(gram_criterion(parse_phm("phm v1\n1 2\n1 1\n")));
  EXPECT_TRUE(gram_criterion(top_rows(fourier(4), 3)));
  EXPECT_FALSE(gram_criterion(parse_phm("phm v1\n2 3\n1 1 1\n1 1 -1\n")));
}

TEST(WeightedCriterion, Examples) {
  auto r = weighted_criterion(top_rows(fourier(3), 2));
  EXPECT_TRUE(r.passes);
  EXPECT_NEAR(r.c, 9.0, 1e-12);
  r = weighted_criterion(parse_phm("phm v1\n1 2\n1 1\n"));
  EXPECT_TRUE(r.passes);
  EXPECT_NEAR(r.c, 2.0, 1e-12);
  r = weighted_criterion(top_rows(fourier(4), 3));
  EXPECT_TRUE(r.passes);
  EXPECT_NEAR(r.c, 64.0, 1e-12);
}

TEST(Criteria, ConcordOnPositivesAndPerturbedNegatives) {
  std::mt19937_64 rng(12);
  for (int n = 3; n <= 6; ++n) {
    const auto pool = hadamard_pool(n, rng);
    for (int t = 0; t < 20; ++t) {
      const auto full = dephased_variant(pool[static_cast<std::size_t>(t) % pool.size()], rng);
      const auto pos = delete_row(full, static_cast<std::size_t>(t % n) + 1);
      const auto completed = complete_row(pos, 1e-8);
      EXPECT_TRUE(is_partial_hadamard(completed, 1e-8).ok);
      EXPECT_TRUE(gram_criterion(pos, 1e-8));
      EXPECT_TRUE(weighted_criterion(pos, 1e-8).passes);
      EXPECT_TRUE(modulus_profile(pos, 1e-8).constant);
      EXPECT_TRUE(check_grid(complete_last(grid_from_hadamard(pos, 1e-8), 1e-8), 1e-7).magic);

      const auto neg = perturb(pos, 0.05, rng);
      EXPECT_THROW(complete_row(neg, 1e-8), Error);
      EXPECT_FALSE(gram_criterion(neg, 1e-8));
      EXPECT_FALSE(weighted_criterion(neg, 1e-8).passes);
      EXPECT_THROW(grid_from_hadamard(neg, 1e-8), Error);
    }
  }
}

TEST(CompleteRow, ExactInputStaysExact) {
  for (int n = 2; n <= 7; ++n) {
    const auto c = complete_row(delete_row(fourier(n), static_cast<std::size_t>(n)));
    EXPECT_TRUE(is_partial_hadamard(c).ok);
    for (std::size_t i = 0; i + 1 < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) EXPECT_EQ(c.at(i, j), fourier(n).at(i, j));
  }
}

}  // namespace
}  // namespace parthad
