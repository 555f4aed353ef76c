#ifndef NCOP_RANDOM_HPP
#define NCOP_RANDOM_HPP

// Seeded generators for test points and test functionals.

#include <cmath>
#include <random>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/opeval.hpp"
#include "ncop/operator_tuple.hpp"
#include "ncop/words.hpp"

namespace ncop {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

/// Hermitian, spectrum roughly within [−2, 2].
inline Matrix random_hermitian(Rng& rng, Eigen::Index d) {
  const Matrix g = random_matrix(rng, d, d);
  return (g + g.adjoint()) / std::sqrt(2.0 * static_cast<double>(d));
}

inline Vector random_unit_vector(Rng& rng, Eigen::Index d) {
  Vector v = random_matrix(rng, d, 1).col(0);
  return v / v.norm();
}

/// Ball point with ‖Σ Z_k Z_k*‖ drawn uniformly from [0, 1 − margin].
inline OperatorTuple random_ball_point(Rng& rng, int n, Eigen::Index d, double margin) {
  std::vector<Matrix> z;
  for (int k = 0; k < n; ++k) z.push_back(random_matrix(rng, d, d));
  OperatorTuple t(z, Region::ball);
  const double size = hermitian_max_eig(row_inner(t, t));
  const double rho = std::uniform_real_distribution<double>(0.0, 1.0 - margin)(rng);
  const double s = std::sqrt(rho / size);
  for (auto& m : z) m *= s;
  return OperatorTuple(std::move(z), Region::ball);
}

/// Cayley image of a ball point with the given ball margin.
inline OperatorTuple random_siegel_point(Rng& rng, int n, Eigen::Index d, double margin) {
  return cayley(random_ball_point(rng, n, d, margin), 0.0);
}

/// Hankel functional v* X_σ v of random Hermitian X_k and unit v on ℂ^d.
inline MomentFunctional random_representation(Rng& rng, int n, Eigen::Index d, int max_degree) {
  std::vector<Matrix> xs;
  for (int k = 0; k < n; ++k) xs.push_back(random_hermitian(rng, d));
  return from_representation(xs, random_unit_vector(rng, d), max_degree);
}

/// Toeplitz-type data c_α with |c_α| ≤ decay^{|α|}/2; decay ≤ 0.2 keeps the
/// kernel diagonally dominant through level 3 for N = 2.
inline MomentFunctional random_toeplitz(Rng& rng, int n, int max_degree, double decay) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  MomentMap c;
  c[Word{}] = 1.0;
  for (const Word& w : words_up_to(static_cast<std::size_t>(max_degree), n)) {
    if (w.empty()) continue;
    const double scale = std::pow(decay, static_cast<double>(w.size()));
    c[w] = scale * Complex(u(rng), u(rng));
  }
  return MomentFunctional(n, MomentKind::toeplitz, max_degree, std::move(c));
}

}  // namespace ncop

#endif  // NCOP_RANDOM_HPP
