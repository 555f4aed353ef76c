#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ncop/functional.hpp"
#include "ncop/random.hpp"
#include "oracles.hpp"

using ncop::Complex;
using ncop::Matrix;
using ncop::MomentKind;
using ncop::Word;

namespace {

ncop::MomentFunctional toeplitz_zero(int n, int max_degree) {
  ncop::MomentMap c;
  for (const Word& w : ncop::words_up_to(static_cast<std::size_t>(max_degree), n))
    c[w] = w.empty() ? 1.0 : 0.0;
  return {n, MomentKind::toeplitz, max_degree, std::move(c)};
}

}  // namespace

TEST(Functional, HankelKernelEntry) {
  const auto f = oracle::gaussian(4);
  EXPECT_EQ(ncop::kernel_entry(f, Word{1}, Word{1}), Complex(1.0));
  EXPECT_EQ(ncop::kernel_entry(f, Word{1, 1}, Word{1, 1}), Complex(3.0));
}

TEST(Functional, ToeplitzKernelEntry) {
  ncop::MomentMap c{{Word{}, 1.0}, {Word{1}, Complex(0.1, 0.2)}, {Word{2}, 0.3},
                    {Word{1, 2}, Complex(0.0, -0.05)}};
  const ncop::MomentFunctional f(2, MomentKind::toeplitz, 2, c);
  EXPECT_EQ(ncop::kernel_entry(f, Word{2, 1}, Word{2, 1}), Complex(1.0));
  EXPECT_EQ(ncop::kernel_entry(f, Word{1}, Word{2}), Complex(0.0));
  EXPECT_EQ(ncop::kernel_entry(f, Word{}, Word{1, 2}), Complex(0.0, -0.05));
  EXPECT_EQ(ncop::kernel_entry(f, Word{1, 2}, Word{}), Complex(0.0, 0.05));
  // stationarity: K(τσ, τσ′) = K(σ, σ′)
  for (const Word& t : ncop::words_up_to(1, 2))
    for (const Word& s : ncop::words_up_to(1, 2))
      for (const Word& sp : ncop::words_up_to(1, 2))
        EXPECT_EQ(ncop::kernel_entry(f, t + s, t + sp), ncop::kernel_entry(f, s, sp));
}

TEST(Functional, MissingMomentNamesWord) {
  const auto f = oracle::gaussian(2);
  try {
    (void)ncop::kernel_entry(f, Word{1, 1}, Word{1});
    FAIL();
  } catch (const ncop::DataIncomplete& e) {
    EXPECT_EQ(e.word(), "1.1.1");
  }
}

TEST(Functional, GaussianGram) {
  const auto g = ncop::gram(oracle::gaussian(4), 2);
  Matrix expected(3, 3);
  expected << 1, 0, 1, 0, 1, 0, 1, 0, 3;
  EXPECT_EQ(g.entries, expected);
  EXPECT_EQ(ncop::gram(oracle::gaussian(4), 0).entries, Matrix::Ones(1, 1));
  EXPECT_EQ(ncop::gram(toeplitz_zero(2, 1), 1).entries, Matrix::Identity(3, 3));
}

TEST(Functional, StrictPositivity) {
  const auto ok = ncop::strict_positivity(oracle::gaussian(4), 2);
  EXPECT_TRUE(ok.ok);
  // leading minors 1, 1, 2 give eigenvalues of [[1,1],[1,3]] plus 1
  EXPECT_NEAR(ok.min_eigenvalue, 2.0 - std::sqrt(2.0), 1e-12);

  const std::vector<Complex> bad{1.0, 0.0, -1.0};
  const auto r = ncop::strict_positivity(ncop::MomentFunctional::univariate_hankel(bad), 1);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.certificate_word, Word{1});
  EXPECT_NEAR(r.certificate.norm(), 1.0, 1e-12);
}

TEST(Functional, RankDeficientRepresentationFails) {
  ncop::Rng rng(7);
  const auto f = ncop::random_representation(rng, 2, 3, 4);  // 7 words at level 2, d = 3
  const auto r = ncop::strict_positivity(f, 2);
  EXPECT_FALSE(r.ok);
  const auto g = ncop::gram(f, 2);
  const double q = (r.certificate.adjoint() * g.entries * r.certificate)(0, 0).real();
  EXPECT_LE(q, r.threshold);
}

TEST(Functional, FromRepresentation) {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  ncop::Vector v = ncop::Vector::Unit(2, 0);
  const std::vector<Matrix> xs{x};
  const auto f = ncop::from_representation(xs, v, 4);
  EXPECT_EQ(f.moment(Word{1}), Complex(0.0));
  EXPECT_EQ(f.moment(Word{1, 1}), Complex(1.0));

  const std::vector<Matrix> zeros(2, Matrix::Zero(3, 3));
  const auto z = ncop::from_representation(zeros, ncop::Vector::Unit(3, 1), 3);
  for (const auto& [w, s] : z.moments()) EXPECT_EQ(s, w.empty() ? Complex(1.0) : Complex(0.0));

  Matrix nh(2, 2);
  nh << 0, 1, 0, 0;
  const std::vector<Matrix> bad{nh};
  EXPECT_THROW(ncop::from_representation(bad, v, 2), ncop::InvalidInput);
}

TEST(Functional, RepresentationGramIsInnerProductMatrix) {
  ncop::Rng rng(11);
  std::vector<Matrix> xs{ncop::random_hermitian(rng, 8), ncop::random_hermitian(rng, 8)};
  const ncop::Vector v = ncop::random_unit_vector(rng, 8);
  const auto f = ncop::from_representation(xs, v, 4);
  const auto g = ncop::gram(f, 2);
  const auto words = ncop::words_up_to(2, 2);
  auto apply = [&](const Word& w) {
    ncop::Vector u = v;
    for (std::size_t i = w.size(); i-- > 0;) u = xs[static_cast<std::size_t>(w[i] - 1)] * u;
    return u;
  };
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      const Complex ip = apply(words[i]).dot(apply(words[j]));  // ⟨X_τ v, X_σ v⟩
      EXPECT_NEAR(std::abs(g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - ip), 0.0,
                  1e-12);
    }
  EXPECT_TRUE(ncop::strict_positivity(g).ok);
}

TEST(Functional, HankelShiftAndCauchySchwarz) {
  ncop::Rng rng(3);
  const auto f = ncop::random_representation(rng, 2, 6, 6);
  const auto words = ncop::words_up_to(2, 2);
  for (const Word& a : ncop::words_up_to(1, 2))
    for (const Word& s : ncop::words_up_to(1, 2))
      for (const Word& t : ncop::words_up_to(2, 2))
        EXPECT_NEAR(std::abs(ncop::kernel_entry(f, a + s, t) - ncop::kernel_entry(f, s, ncop::involution(a) + t)),
                    0.0, 1e-12);
  for (const Word& s : words)
    for (const Word& t : words) {
      const double lhs = std::norm(ncop::kernel_entry(f, s, t));
      const double rhs = (ncop::kernel_entry(f, s, s) * ncop::kernel_entry(f, t, t)).real();
      EXPECT_LE(lhs, rhs + 1e-12);
    }
}

TEST(Functional, FreeSemicircularMatchesPairingCount) {
  const auto f = ncop::free_semicircular(2, 6);
  for (const Word& w : ncop::words_up_to(6, 2)) {
    const long expected = oracle::nc_pairings(w);
    EXPECT_NEAR(std::abs(f.moment(w) - Complex(static_cast<double>(expected))), 0.0, 1e-12) << w;
  }
  EXPECT_EQ(f.moment(Word{1, 1, 2, 2}), Complex(1.0));
  EXPECT_EQ(f.moment(Word{1, 2, 1, 2}), Complex(0.0));
}

TEST(Functional, ValidationErrors) {
  EXPECT_THROW(ncop::MomentFunctional(1, MomentKind::hankel, 2, {{Word{}, 2.0}}), ncop::InvalidInput);
  EXPECT_THROW(ncop::MomentFunctional(1, MomentKind::hankel, 2, {{Word{1}, 0.0}}), ncop::DataIncomplete);
  EXPECT_THROW(ncop::MomentFunctional(1, MomentKind::hankel, 2, {{Word{}, 1.0}, {Word{2}, 0.0}}),
               ncop::InvalidInput);
  EXPECT_THROW(ncop::MomentFunctional(2, MomentKind::hankel, 2,
                                      {{Word{}, 1.0}, {Word{1, 2}, Complex(0, 1)}, {Word{2, 1}, Complex(0, 1)}}),
               ncop::InvalidInput);
}

TEST(Functional, GenericKernel) {
  ncop::KernelMap k{{{Word{}, Word{}}, 1.0}, {{Word{}, Word{1}}, Complex(0.0, 0.5)}, {{Word{1}, Word{1}}, 2.0}};
  const ncop::MomentFunctional f(1, MomentKind::generic, 1, {}, k);
  const auto g = ncop::gram(f, 1);
  EXPECT_EQ(g.entries(1, 0), Complex(0.0, -0.5));
  EXPECT_TRUE(ncop::strict_positivity(g).ok);
}
