#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "parthad/torus_matrix.hpp"

namespace parthad {
namespace {

const cplx kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

TorusMatrix rows_1_to(const TorusMatrix& h, std::size_t k) {
  std::vector<std::size_t> r(k);
  for (std::size_t i = 0; i < k; ++i) r[i] = i + 1;
  return select_rows(h, r);
}

TorusMatrix m2_family() {
  return parse_phm("phm v1\n2 4\n1 1 1 1\n1 i -1 -i\n");
}

/// Random Butson-equivalent of F_n: rows and columns permuted and rephased by n-th roots.
TorusMatrix randomized_fourier(int n, std::mt19937_64& rng) {
  const auto f = fourier(n);
  std::vector<std::size_t> rp(static_cast<std::size_t>(n)), cp(static_cast<std::size_t>(n));
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::shuffle(cp.begin(), cp.end(), rng);
  std::uniform_int_distribution<int> ph(0, n - 1);
  std::vector<TorusScalar> rph, cph;
  for (int k = 0; k < n; ++k) {
    rph.push_back(TorusScalar::root(ph(rng), n));
    cph.push_back(TorusScalar::root(ph(rng), n));
  }
  std::vector<TorusScalar> e;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      e.push_back(rph[static_cast<std::size_t>(r)] * f.at(rp[static_cast<std::size_t>(r)], cp[static_cast<std::size_t>(c)]) *
                  cph[static_cast<std::size_t>(c)]);
  return TorusMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(e));
}

TEST(Cyclotomic, KnownPolynomials) {
  EXPECT_EQ(cyclotomic::polynomial(1), (cyclotomic::Poly{-1, 1}));
  EXPECT_EQ(cyclotomic::polynomial(6), (cyclotomic::Poly{1, -1, 1}));
  EXPECT_EQ(cyclotomic::polynomial(12), (cyclotomic::Poly{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, ZeroSums) {
  const std::int64_t cube[] = {0, 1, 2};
  const std::int64_t pair[] = {0, 1};
  const std::int64_t quarter[] = {0, 1, 2, 3};
  const std::int64_t mixed[] = {0, 2, 5, 9, 8, 11};
  EXPECT_TRUE(cyclotomic::sum_of_roots_is_zero(cube, 3));
  EXPECT_FALSE(cyclotomic::sum_of_roots_is_zero(pair, 3));
  EXPECT_TRUE(cyclotomic::sum_of_roots_is_zero(quarter, 4));
  // Cross-check against floating evaluation.
  cplx s{};
  for (auto k : mixed) s += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 12.0);
  EXPECT_EQ(cyclotomic::sum_of_roots_is_zero(mixed, 12), std::abs(s) < 1e-12);
}

TEST(TorusScalar, ExactArithmetic) {
  const auto a = TorusScalar::root(1, 3);
  const auto b = TorusScalar::root(2, 3);
  EXPECT_EQ(a * b, TorusScalar::root(0, 1));
  EXPECT_EQ(a / b, TorusScalar::root(2, 3));
  EXPECT_EQ(TorusScalar::root(2, 4), TorusScalar::root(1, 2));
  EXPECT_EQ(TorusScalar::root(-1, 4), TorusScalar::root(3, 4));
  EXPECT_EQ(a.conj(), b);
  EXPECT_EQ(TorusScalar::root(1, 4).value(), cplx(0.0, 1.0));
  EXPECT_NEAR(std::abs(a.value() - kOmega), 0.0, 1e-15);
}

TEST(TorusScalar, FloatRejectsNonUnit) {
  EXPECT_THROW(TorusScalar::from_complex({0.5, 0.0}), Error);
  const auto z = TorusScalar::phase(0.3);
  EXPECT_FALSE(z.is_exact());
  EXPECT_TRUE(approx_equal(z * z.conj(), TorusScalar::root(0, 1), 1e-15));
}

TEST(Fourier, Examples) {
  const int two[] = {2};
  EXPECT_EQ(fourier(two), parse_phm("phm v1\n2 2\n1 1\n1 -1\n"));
  EXPECT_EQ(fourier(1), parse_phm("phm v1\n1 1\n1\n"));
  const int twotwo[] = {2, 2};
  EXPECT_EQ(fourier(twotwo), parse_phm("phm v1\n4 4\n1 1 1 1\n1 -1 1 -1\n1 1 -1 -1\n1 -1 -1 1\n"));
  EXPECT_THROW(fourier(std::span<const int>{}), Error);
  EXPECT_THROW(fourier(0), Error);
}

TEST(Fourier, IsHadamardUpTo16) {
  for (int n = 1; n <= 16; ++n) {
    const auto f = fourier(n).to_eigen();
    const Eigen::MatrixXcd g = f * f.adjoint() - static_cast<double>(n) * Eigen::MatrixXcd::Identity(n, n);
    EXPECT_LE(g.cwiseAbs().maxCoeff(), 1e-10) << "n=" << n;
    EXPECT_TRUE(is_partial_hadamard(fourier(n)).ok);
  }
}

TEST(Tensor, Examples) {
  const auto f2 = fourier(2);
  const int twotwo[] = {2, 2};
  EXPECT_EQ(tensor(f2, f2), fourier(twotwo));
  const auto one = fourier(1);
  const auto h = m2_family();
  EXPECT_EQ(tensor(h, one), h);
  EXPECT_EQ(tensor(one, one), one);
  const auto t = tensor(h, f2);
  EXPECT_EQ(t.rows(), 4u);
  EXPECT_EQ(t.cols(), 8u);
  // (H (x) K)_{ia,jb} = H_ij K_ab with (i,a) -> i*2 + a.
  EXPECT_EQ(t.at(1 * 2 + 1, 3 * 2 + 1), h.at(1, 3) * f2.at(1, 1));
}

TEST(Tensor, PreservesPartialHadamardExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nd(2, 5);
    const int n1 = nd(rng), n2 = nd(rng);
    auto h = randomized_fourier(n1, rng);
    auto k = randomized_fourier(n2, rng);
    h = rows_1_to(h, std::uniform_int_distribution<std::size_t>(1, h.rows())(rng));
    k = rows_1_to(k, std::uniform_int_distribution<std::size_t>(1, k.rows())(rng));
    const auto rep = is_partial_hadamard(tensor(h, k));
    EXPECT_TRUE(rep.exact);
    EXPECT_TRUE(rep.ok) << to_phm(tensor(h, k));
  }
}

TEST(PartialHadamard, Examples) {
  const auto f3 = rows_1_to(fourier(3), 2);
  auto rep = is_partial_hadamard(f3);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.exact);

  rep = is_partial_hadamard(parse_phm("phm v1\n2 2\n1 1\n1 1\n"));
  EXPECT_FALSE(rep.ok);
  EXPECT_DOUBLE_EQ(rep.worst_value, 2.0);
  ASSERT_TRUE(rep.worst_pair);
  EXPECT_EQ(*rep.worst_pair, (std::pair<std::size_t, std::size_t>{1, 2}));

  const auto bent = with_entry(f3, 2, 2, TorusScalar::from_complex(f3.at(1, 1).value() * std::polar(1.0, 0.1)));
  rep = is_partial_hadamard(bent, 1e-9);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.exact);
  // <R1,R2> = 1 + w^2 e^{-0.1i} + w = w^2 (e^{-0.1i} - 1), modulus 2 sin(0.05)
  EXPECT_NEAR(rep.worst_value, 2.0 * std::sin(0.05), 1e-12);

  rep = is_partial_hadamard(fourier(1));
  EXPECT_TRUE(rep.ok);
  EXPECT_FALSE(rep.worst_pair);
}

TEST(RowQuotient, Examples) {
  const auto f3 = fourier(3);
  EXPECT_EQ(row_quotient(f3, 1, 1), TorusVector(3, TorusScalar::root(0, 1)));
  EXPECT_EQ(row_quotient(f3, 1, 2), (TorusVector{TorusScalar::root(0, 1), TorusScalar::root(2, 3), TorusScalar::root(1, 3)}));
  EXPECT_EQ(row_quotient(m2_family(), 2, 1),
            (TorusVector{TorusScalar::root(0, 1), TorusScalar::root(1, 4), TorusScalar::root(1, 2), TorusScalar::root(3, 4)}));
  EXPECT_THROW(row_quotient(f3, 0, 1), Error);
  EXPECT_THROW(row_quotient(f3, 1, 4), Error);
}

TEST(RowQuotient, OrthogonalityRelations) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 6; ++n) {
    const auto h = rows_1_to(randomized_fourier(n, rng), static_cast<std::size_t>(n - 1));
    const auto m = h.rows();
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t k = 1; k <= m; ++k) {
          const double expect = j == k ? n : 0.0;
          EXPECT_NEAR(std::abs(inner(row_quotient(h, i, j), row_quotient(h, i, k)) - expect), 0.0, 1e-10);
          const double expect2 = i == k ? n : 0.0;
          EXPECT_NEAR(std::abs(inner(row_quotient(h, i, j), row_quotient(h, k, j)) - expect2), 0.0, 1e-10);
        }
  }
}

TEST(MinorDet, Examples) {
  const auto f3 = rows_1_to(fourier(3), 2);
  EXPECT_NEAR(std::abs(minor_det(f3, 1) - (kOmega * kOmega - kOmega)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(minor_det(f3, 1)), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(std::abs(minor_det(parse_phm("phm v1\n1 2\n1 1\n"), 2) - 1.0), 0.0, 0.0);
  const auto f4 = rows_1_to(fourier(4), 3);
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_NEAR(std::abs(minor_det(f4, j)), 4.0, 1e-12);
  EXPECT_THROW(minor_det(fourier(3), 1), Error);
}

TEST(MinorDet, IllConditioned) {
  // Repeated rows make every minor singular.
  const auto h = parse_phm("phm v1\n2 3\n1 1 1\n1 1 1\n");
  try {
    minor_det(h, 1);
    FAIL() << "expected IllConditioned";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IllConditioned);
  }
}

TEST(MinorDet, AgreesWithExactCofactorOracle) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto h = delete_row(randomized_fourier(n, rng), std::uniform_int_distribution<std::size_t>(1, static_cast<std::size_t>(n))(rng));
      for (std::size_t j = 1; j <= h.cols(); ++j)
        EXPECT_NEAR(std::abs(minor_det(h, j) - oracle::exact_minor_det(h, j)), 0.0, 1e-10) << "n=" << n << " j=" << j;
    }
  }
  // Butson matrix with mixed orders, not of Fourier type.
  const auto b = parse_phm("phm v1\n3 4\n1 1/6 1/3 i\n1 5/6 -1 1/12\n1/5 1 2/3 -i\n");
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_NEAR(std::abs(minor_det(b, j) - oracle::exact_minor_det(b, j)), 0.0, 1e-10);
}

TEST(Phm, ParsesAllTokenForms) {
  const auto h = parse_phm("# comment\nphm v1\n2 3\n1 -1 i\n-i 1/3 (0.6,0.8)\n");
  EXPECT_FALSE(h.is_exact());  // one float entry demotes the matrix
  EXPECT_NEAR(std::abs(h.at(1, 1).value() - kOmega), 0.0, 1e-15);
  EXPECT_EQ(h.at(1, 2).value(), cplx(0.6, 0.8));
  const auto e = parse_phm("phm v1\n1 2\n2/4 7/3\n");
  EXPECT_TRUE(e.is_exact());
  EXPECT_EQ(to_phm(e), "phm v1\n1 2\n-1 1/3\n");
}

TEST(Phm, RejectsMalformed) {
  EXPECT_THROW(parse_phm("phm v2\n1 1\n1\n"), Error);
  EXPECT_THROW(parse_phm("phm v1\n1 2\n1\n"), Error);
  EXPECT_THROW(parse_phm("phm v1\n1 1\n(0.5,0.5)\n"), Error);
  EXPECT_THROW(parse_phm("phm v1\n1 1\nx\n"), Error);
  EXPECT_THROW(parse_phm("phm v1\n1 1\n1/0\n"), Error);
  EXPECT_THROW(parse_phm("phm v1\n2 1\n1\n"), Error);
}

TEST(Phm, CanonicalTextRoundTripsByteForByte) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  std::uniform_int_distribution<int> den(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TorusScalar> e;
    const bool exact = trial % 2 == 0;
    for (int k = 0; k < 6; ++k) {
      const int q = den(rng);
      e.push_back(exact ? TorusScalar::root(std::uniform_int_distribution<int>(0, q - 1)(rng), q) : TorusScalar::phase(angle(rng)));
    }
    const TorusMatrix h(2, 3, e);
    const auto text = to_phm(h);
    const auto back = parse_phm(text);
    EXPECT_EQ(back, h);
    EXPECT_EQ(to_phm(back), text);
  }
}

}  // namespace
}  // namespace parthad
