#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ncop/jacobi.hpp"
#include "ncop/random.hpp"
#include "oracles.hpp"

using ncop::Complex;
using ncop::Matrix;
using ncop::Vector;
using ncop::Word;

namespace {

std::vector<ncop::BlockJacobi> jacobi_of(const ncop::MomentFunctional& f, int truncation) {
  const auto basis = ncop::orthogonalize(f, truncation + 1);
  return ncop::build(ncop::extract(f, basis, truncation + 1), truncation);
}

}  // namespace

TEST(Jacobi, HermiteTridiagonal) {
  const auto js = jacobi_of(oracle::gaussian(8), 3);
  ASSERT_EQ(js.size(), 1u);
  Matrix expected = Matrix::Zero(4, 4);
  for (int n = 0; n < 3; ++n) expected(n, n + 1) = expected(n + 1, n) = std::sqrt(n + 1.0);
  EXPECT_LT(ncop::max_abs(js[0].matrix - expected), 1e-10);
  EXPECT_EQ(js[0].matrix, js[0].matrix.adjoint());
  EXPECT_NEAR(std::abs(ncop::moment(js, Word{1, 1}).value - 1.0), 0.0, 1e-12);
  EXPECT_EQ(ncop::moment(js, Word{}).value, Complex(1.0));
}

TEST(Jacobi, FreeFockIsCreationPlusAnnihilation) {
  const auto js = jacobi_of(oracle::free_fock(2, 6), 2);
  ASSERT_EQ(js.size(), 2u);
  for (int k = 1; k <= 2; ++k) {
    // l_k + l_k* on words of length ≤ 2: e_σ ↦ e_{kσ}
    Matrix expected = Matrix::Zero(7, 7);
    for (const Word& w : ncop::words_up_to(1, 2)) {
      const auto from = static_cast<Eigen::Index>(ncop::global_index(w, 2));
      const auto to = static_cast<Eigen::Index>(ncop::global_index(ncop::prepend(k, w), 2));
      expected(to, from) = expected(from, to) = 1.0;
    }
    EXPECT_LT(ncop::max_abs(js[static_cast<std::size_t>(k - 1)].matrix - expected), 1e-10);
    // J_k² e_∅ = e_∅ + e_{kk}
    Vector e = Vector::Unit(7, 0);
    const Vector sq = ncop::word_apply(js, Word{k, k}, e);
    Vector want = Vector::Unit(7, 0);
    want(static_cast<Eigen::Index>(ncop::global_index(Word{k, k}, 2))) = 1.0;
    EXPECT_LT((sq - want).norm(), 1e-10);
  }
  EXPECT_NEAR(std::abs(ncop::moment(js, Word{1, 2, 1, 2}).value), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ncop::moment(js, Word{1, 1, 2, 2}).value - 1.0), 0.0, 1e-12);
}

TEST(Jacobi, DegenerateBlocksStillAssemble) {
  ncop::RecurrenceCoeffs rc{1, 2, {}, {}};
  for (int n = 0; n < 2; ++n) {
    rc.A.push_back({Matrix::Zero(1, 1)});
    rc.B.push_back({Matrix::Zero(1, 1)});
  }
  const auto js = ncop::build(rc, 1);
  EXPECT_EQ(js[0].matrix, Matrix::Zero(2, 2));
}

TEST(Jacobi, BuildNeedsEnoughLevels) {
  ncop::RecurrenceCoeffs rc{1, 1, {{Matrix::Zero(1, 1)}}, {{Matrix::Ones(1, 1)}}};
  EXPECT_THROW((void)ncop::build(rc, 1), ncop::InvalidInput);
}

TEST(Jacobi, ModelIdentityAndTruncationFlag) {
  ncop::Rng rng(53);
  const auto f = ncop::random_representation(rng, 2, 16, 6);
  const auto js = jacobi_of(f, 2);
  for (const Word& w : ncop::words_up_to(3, 2)) {
    const auto m = ncop::moment(js, w);
    EXPECT_LT(std::abs(m.value - f.moment(w)), 1e-10) << w;
    EXPECT_EQ(m.truncation_warning, w.size() > 2) << w;
  }
  for (const auto& j : js) EXPECT_EQ(j.matrix, j.matrix.adjoint());
}

TEST(Jacobi, HamburgerRejectsNegativeSecondMoment) {
  const auto r = ncop::hamburger_check(1, {{Word{}, 1.0}, {Word{1}, 0.0}, {Word{1, 1}, -1.0}}, 1);
  EXPECT_FALSE(r.positive);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.certificate->certificate_word, Word{1});
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Jacobi, HamburgerGaussianWitness) {
  const auto r = ncop::hamburger_check(oracle::gaussian(6), 3);
  EXPECT_TRUE(r.positive);
  EXPECT_TRUE(r.strictly_positive);
  ASSERT_TRUE(r.witness.has_value());
  for (int n = 0; n < 3; ++n) {
    EXPECT_LT(std::abs(r.witness->a(n, 1)(0, 0)), 1e-10);
    EXPECT_NEAR(r.witness->b(n, 1)(0, 0).real(), std::sqrt(n + 1.0), 1e-10);
  }
}

TEST(Jacobi, HamburgerAcceptsRepresentationMoments) {
  ncop::Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    // rank-deficient: positive but not strictly
    const auto f = ncop::random_representation(rng, 2, 4, 4);
    const auto r = ncop::hamburger_check(f, 2);
    EXPECT_TRUE(r.positive);
    EXPECT_FALSE(r.strictly_positive);
    const auto full = ncop::random_representation(rng, 2, 10, 4);
    const auto rf = ncop::hamburger_check(full, 2);
    EXPECT_TRUE(rf.positive && rf.strictly_positive);
    EXPECT_EQ(rf.strictly_positive, ncop::strict_positivity(full, 2).ok);
  }
}
