#ifndef NCOP_OPEVAL_HPP
#define NCOP_OPEVAL_HPP

// Evaluation of noncommutative polynomials at matrix points of the unit ball
// B_N = {Z : Σ Z_k Z_k* < I} and the Siegel domain
// G_N = {W : Σ_{k<N} W_k W_k* < (W_N − W_N*)/2i}, the Cayley transform between
// them, truncated Szegő kernels and the Christoffel–Darboux identities.
//
// The infinite sums E(Z) X^{⊕∞} E(Z')* = Σ_σ Z_σ X Z'_σ* are computed level by
// level, S_{m+1} = Σ_k Z_k S_m Z'_k*, and cut at the first length L whose
// geometric remainder ‖X‖ r^{L+1}/(1−r), r = ‖(Z|Z)‖^{1/2}‖(Z'|Z')‖^{1/2}, is
// below the requested tolerance.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/operator_tuple.hpp"
#include "ncop/orthopoly.hpp"
#include "ncop/recurrence.hpp"
#include "ncop/words.hpp"

namespace ncop {

inline constexpr double kDefaultMargin = 1e-8;
inline constexpr int kDefaultLengthCap = 64;

struct Membership {
  bool inside = false;
  double lambda_min = 0.0;
};

/// (Z|Z') = Σ_k Z_k Z'_k*.
inline Matrix row_inner(const OperatorTuple& z, const OperatorTuple& zp) {
  Matrix r = Matrix::Zero(z.dim(), z.dim());
  for (int k = 1; k <= z.n(); ++k) r += z[k] * zp[k].adjoint();
  return r;
}

inline Matrix region_defect(const OperatorTuple& t, Region which) {
  const auto d = t.dim();
  const Complex two_i(0.0, 2.0);
  switch (which) {
    case Region::ball:
      return Matrix::Identity(d, d) - row_inner(t, t);
    case Region::siegel: {
      const int n = t.n();
      Matrix m = (t[n] - t[n].adjoint()) / two_i;
      for (int k = 1; k < n; ++k) m -= t[k] * t[k].adjoint();
      return m;
    }
    case Region::unchecked:
      break;
  }
  throw InvalidInput("membership needs a concrete region");
}

/// inside iff λ_min of the region's defect matrix exceeds `margin`.
inline Membership membership(const OperatorTuple& t, Region which, double margin = kDefaultMargin) {
  const double lm = hermitian_min_eig(region_defect(t, which));
  return {lm > margin, lm};
}

inline void require_region(const OperatorTuple& t, Region which, double margin, const char* what) {
  const auto m = membership(t, which, margin);
  if (!m.inside)
    throw RegionError(std::string(what) + " is not inside the " + to_string(which) +
                          " (lambda_min " + std::to_string(m.lambda_min) + ")",
                      m.lambda_min);
}

inline void require_same_shape(const OperatorTuple& a, const OperatorTuple& b) {
  if (a.n() != b.n() || a.dim() != b.dim())
    throw InvalidInput("the two tuples have different N or d");
}

/// C(Z) = ((I+Z_N)⁻¹Z_1, …, (I+Z_N)⁻¹Z_{N−1}, i(I+Z_N)⁻¹(I−Z_N)).
inline OperatorTuple cayley(const OperatorTuple& z, double margin = kDefaultMargin) {
  require_region(z, Region::ball, margin, "Cayley input");
  const int n = z.n();
  const auto d = z.dim();
  const Matrix id = Matrix::Identity(d, d);
  const auto lu = (id + z[n]).partialPivLu();
  std::vector<Matrix> w;
  w.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) w.push_back(lu.solve(z[k]));
  w.push_back(Complex(0.0, 1.0) * lu.solve(id - z[n]));
  OperatorTuple out(std::move(w), Region::siegel);
  require_region(out, Region::siegel, 0.0, "Cayley image");
  return out;
}

/// C⁻¹(W) = (2i(i+W_N)⁻¹W_1, …, 2i(i+W_N)⁻¹W_{N−1}, (i+W_N)⁻¹(i−W_N)).
inline OperatorTuple cayley_inverse(const OperatorTuple& w, double margin = kDefaultMargin) {
  require_region(w, Region::siegel, margin, "inverse Cayley input");
  const int n = w.n();
  const auto d = w.dim();
  const Complex i(0.0, 1.0);
  const Matrix id = Matrix::Identity(d, d);
  const auto lu = (i * id + w[n]).partialPivLu();
  std::vector<Matrix> z;
  z.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) z.push_back(2.0 * i * lu.solve(w[k]));
  z.push_back(lu.solve(i * id - w[n]));
  OperatorTuple out(std::move(z), Region::ball);
  require_region(out, Region::ball, 0.0, "inverse Cayley image");
  return out;
}

struct KernelResult {
  Matrix value;
  int truncation_length = 0;
  double tail_bound = 0.0;
};

/// Σ_{|σ|≤L} Z_σ X Z'_σ* with L from the geometric tail bound.
inline KernelResult ball_sandwich(const OperatorTuple& z, const OperatorTuple& zp, const Matrix& x,
                                  double tol, int length_cap = kDefaultLengthCap) {
  require_same_shape(z, zp);
  const double rz = hermitian_max_eig(row_inner(z, z));
  const double rzp = hermitian_max_eig(row_inner(zp, zp));
  const double r = std::sqrt(std::max(0.0, rz) * std::max(0.0, rzp));
  if (!(r < 1.0)) throw ConvergenceError("tuples are not strict contractions; series diverges");
  const double xn = op_norm(x);
  int len = 0;
  double bound = (xn == 0.0 || r == 0.0) ? 0.0 : xn * r / (1.0 - r);
  while (bound >= tol) {
    if (++len > length_cap)
      throw ConvergenceError("geometric tail " + std::to_string(bound) + " still above tolerance " +
                             std::to_string(tol) + " at length cap " + std::to_string(length_cap));
    bound = xn * std::pow(r, len + 1) / (1.0 - r);
  }
  Matrix level = x;
  Matrix acc = x;
  for (int m = 1; m <= len; ++m) {
    Matrix next = Matrix::Zero(x.rows(), x.cols());
    for (int k = 1; k <= z.n(); ++k) next += z[k] * level * zp[k].adjoint();
    level = std::move(next);
    acc += level;
  }
  return {std::move(acc), len, bound};
}

/// K_B(Z, Z') = E(Z) E(Z')* = Σ_σ Z_σ Z'_σ*.
inline KernelResult szego_ball(const OperatorTuple& z, const OperatorTuple& zp, double tol,
                               double margin = kDefaultMargin, int length_cap = kDefaultLengthCap) {
  require_region(z, Region::ball, margin, "first point");
  require_region(zp, Region::ball, margin, "second point");
  return ball_sandwich(z, zp, Matrix::Identity(z.dim(), z.dim()), tol, length_cap);
}

/// F(W) X^{⊕∞} F(W')* with F(W) = 2 E(C⁻¹W) ((i+W_N)⁻¹)^{⊕∞}, i.e.
/// 4 Σ_σ Z_σ (i+W_N)⁻¹ X ((i+W'_N)⁻¹)* Z'_σ* over the Cayley pre-images.
inline KernelResult siegel_sandwich(const OperatorTuple& w, const OperatorTuple& wp, const Matrix& x,
                                    double tol, double margin = kDefaultMargin,
                                    int length_cap = kDefaultLengthCap) {
  require_same_shape(w, wp);
  const OperatorTuple z = cayley_inverse(w, margin);
  const OperatorTuple zp = cayley_inverse(wp, margin);
  const int n = w.n();
  const Complex i(0.0, 1.0);
  const Matrix id = Matrix::Identity(w.dim(), w.dim());
  const Matrix p = (i * id + w[n]).inverse();
  const Matrix pp = (i * id + wp[n]).inverse();
  return ball_sandwich(z, zp, 4.0 * p * x * pp.adjoint(), tol, length_cap);
}

/// K_G(W, W') = F(W) F(W')*.
inline KernelResult szego_siegel(const OperatorTuple& w, const OperatorTuple& wp, double tol,
                                 double margin = kDefaultMargin, int length_cap = kDefaultLengthCap) {
  return siegel_sandwich(w, wp, Matrix::Identity(w.dim(), w.dim()), tol, margin, length_cap);
}

struct ReproductionResult {
  double residual = 0.0;  ///< spectral norm of (truncated sandwich − T)
  double tail_bound = 0.0;
  int truncation_length = 0;
};

/// ‖Σ_{|σ|≤L} Z_σ (T − Σ_k Z_k T Z'_k*) Z'_σ* − T‖.
inline ReproductionResult reproduction_check(const OperatorTuple& z, const OperatorTuple& zp,
                                             const Matrix& t, double tol,
                                             double margin = kDefaultMargin,
                                             int length_cap = kDefaultLengthCap) {
  require_same_shape(z, zp);
  require_region(z, Region::ball, margin, "first point");
  require_region(zp, Region::ball, margin, "second point");
  Matrix mid = t;
  for (int k = 1; k <= z.n(); ++k) mid -= z[k] * t * zp[k].adjoint();
  auto s = ball_sandwich(z, zp, mid, tol, length_cap);
  return {op_norm(s.value - t), s.tail_bound, s.truncation_length};
}

/// Siegel analogue: middle term (1/2i)(W_N T − T W'_N*) − Σ_{k<N} W_k T W'_k*.
inline ReproductionResult reproduction_check_siegel(const OperatorTuple& w, const OperatorTuple& wp,
                                                    const Matrix& t, double tol,
                                                    double margin = kDefaultMargin,
                                                    int length_cap = kDefaultLengthCap) {
  require_same_shape(w, wp);
  const int n = w.n();
  const Complex two_i(0.0, 2.0);
  Matrix mid = (w[n] * t - t * wp[n].adjoint()) / two_i;
  for (int k = 1; k < n; ++k) mid -= w[k] * t * wp[k].adjoint();
  auto s = siegel_sandwich(w, wp, mid, tol, margin, length_cap);
  return {op_norm(s.value - t), s.tail_bound, s.truncation_length};
}

/// Ball points from the totality argument: for σ = i_1…i_k, 2k tuples on
/// ℂ^{2k·unit_dim} = (ℂ^{unit_dim})^{⊕2k}, built from matrix units
/// E_{a,b} = e_{a,b} ⊗ I. Tuple p ≤ k has Z*_s = 2^{-1/2} Σ_{r∈J_s} E_{r+p−1,r+p}
/// with J_s = {l : i_{k+1−l} = s}; tuple p > k has
/// Z*_s = 2^{-1/2} Σ_{r∈K_s} E_{r+p−k,r+p−k−1} with K_s = {l : i_l = s}.
inline std::vector<OperatorTuple> separating_tuples(const Word& sigma, int n_generators, int unit_dim) {
  if (sigma.empty()) throw InvalidInput("separating tuples need a non-empty word");
  if (unit_dim < 1) throw InvalidInput("unit dimension must be positive");
  check_letters(sigma, n_generators);
  const int k = static_cast<int>(sigma.size());
  const int blocks = 2 * k;
  const Eigen::Index u = unit_dim;
  const Eigen::Index dim = blocks * u;
  const double c = 1.0 / std::sqrt(2.0);
  auto unit = [&](Matrix& m, int a, int b, double v) {  // 1-based block indices
    m.block((a - 1) * u, (b - 1) * u, u, u) += v * Matrix::Identity(u, u);
  };
  std::vector<OperatorTuple> out;
  for (int p = 1; p <= blocks; ++p) {
    std::vector<Matrix> adj(static_cast<std::size_t>(n_generators), Matrix::Zero(dim, dim));
    for (int l = 1; l <= k; ++l) {
      if (p <= k) {
        const int s = sigma[static_cast<std::size_t>(k - l)];  // i_{k+1−l}
        unit(adj[static_cast<std::size_t>(s - 1)], l + p - 1, l + p, c);
      } else {
        const int s = sigma[static_cast<std::size_t>(l - 1)];  // i_l
        unit(adj[static_cast<std::size_t>(s - 1)], l + p - k, l + p - k - 1, c);
      }
    }
    std::vector<Matrix> mats;
    mats.reserve(adj.size());
    for (auto& a : adj) mats.push_back(a.adjoint());
    out.emplace_back(std::move(mats), Region::ball);
  }
  return out;
}

struct SeparationReport {
  double target_error = 0.0;   ///< max over p of ‖Z^p_σ* − 2^{-k/2} E_target(p)‖_max (rounding of 2^{-1/2} only)
  double other_words_max = 0.0;  ///< max |entry| of Z^p_τ over τ ≠ σ, |σ| ≤ |τ| ≤ |σ|+1
  double min_lambda = 0.0;     ///< min over p of λ_min(I − Σ_s Z^p_s Z^p_s*)
  Eigen::Index stacked_rank = 0;
  Eigen::Index full_rank = 0;
  bool ok() const {
    return target_error <= 1e-15 && other_words_max == 0.0 && stacked_rank == full_rank &&
           min_lambda > 0.0;
  }
};

/// Checks the separating tuples exhaustively: the target products
/// Z^p_σ* = 2^{-k/2} E_{p,k+p} (p ≤ k) and E_{p,p−k} (p > k), vanishing of
/// every other word of length k and k+1, ball membership, and full rank of the
/// stacked row [Z^1_σ* … Z^{2k}_σ*].
inline SeparationReport verify_separating_tuples(const Word& sigma, int n_generators, int unit_dim) {
  const auto tuples = separating_tuples(sigma, n_generators, unit_dim);
  const int k = static_cast<int>(sigma.size());
  const Eigen::Index u = unit_dim;
  const Eigen::Index dim = 2 * k * u;
  SeparationReport rep;
  rep.min_lambda = 1.0;
  rep.full_rank = dim;
  Matrix stacked(dim, dim * 2 * k);
  const double scale = std::pow(2.0, -0.5 * k);
  for (int p = 1; p <= 2 * k; ++p) {
    const OperatorTuple& z = tuples[static_cast<std::size_t>(p - 1)];
    const Matrix adj = z.word(sigma).adjoint();
    Matrix target = Matrix::Zero(dim, dim);
    const int a = p;
    const int b = p <= k ? k + p : p - k;
    target.block((a - 1) * u, (b - 1) * u, u, u) = scale * Matrix::Identity(u, u);
    rep.target_error = std::max(rep.target_error, max_abs(adj - target));
    stacked.middleCols((p - 1) * dim, dim) = adj;
    for (std::size_t len = sigma.size(); len <= sigma.size() + 1; ++len)
      for (const Word& tau : enumerate_level(len, n_generators))
        if (tau != sigma) rep.other_words_max = std::max(rep.other_words_max, max_abs(z.word(tau)));
    rep.min_lambda = std::min(rep.min_lambda, membership(z, Region::ball, 0.0).lambda_min);
  }
  Eigen::FullPivLU<Matrix> lu(stacked);
  rep.stacked_rank = lu.rank();
  return rep;
}

/// K_n(W, W') = Σ_{|σ|≤n} φ_σ(W) φ_σ(W')*.
inline Matrix cd_kernel(const OrthoBasis& basis, int n, const OperatorTuple& w, const OperatorTuple& wp,
                        double margin = kDefaultMargin) {
  require_same_shape(w, wp);
  if (n < 0 || n > basis.level())
    throw InvalidInput("CD kernel order " + std::to_string(n) + " exceeds basis level " +
                       std::to_string(basis.level()));
  require_region(w, Region::siegel, margin, "first point");
  require_region(wp, Region::siegel, margin, "second point");
  const auto pw = evaluate_all(basis, w, n);
  const auto pwp = evaluate_all(basis, wp, n);
  Matrix k = Matrix::Zero(w.dim(), w.dim());
  for (std::size_t s = 0; s < pw.size(); ++s) k += pw[s] * pwp[s].adjoint();
  return k;
}

namespace detail {

/// Φ_{n+1}(W) B_{n,N} Φ_n(W')* − Φ_n(W) B*_{n,N} Φ_{n+1}(W')*.
inline Matrix cd_boundary_term(const std::vector<Matrix>& pw, const std::vector<Matrix>& pwp,
                               const Matrix& b, int n, int n_gen) {
  const auto off_n = level_offset(static_cast<std::size_t>(n), n_gen);
  const auto off_n1 = level_offset(static_cast<std::size_t>(n + 1), n_gen);
  const auto d = pw.front().rows();
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index t = 0; t < b.rows(); ++t)
    for (Eigen::Index s = 0; s < b.cols(); ++s) {
      const Complex c = b(t, s);
      if (c == Complex(0.0)) continue;
      const auto ti = off_n1 + static_cast<std::size_t>(t);
      const auto si = off_n + static_cast<std::size_t>(s);
      out += c * pw[ti] * pwp[si].adjoint() - std::conj(c) * pw[si] * pwp[ti].adjoint();
    }
  return out;
}

}  // namespace detail

struct CdIdentityResult {
  double residual = 0.0;  ///< max-entry residual
  double scale = 0.0;     ///< max-entry size of the terms involved
};

/// W_N K_n − K_n W'_N* against Φ_{n+1}(W) B_{n,N} Φ_n(W')* − Φ_n(W) B*_{n,N} Φ_{n+1}(W')*.
inline CdIdentityResult cd_inner_identity(const OrthoBasis& basis, const RecurrenceCoeffs& rc, int n,
                                          const OperatorTuple& w, const OperatorTuple& wp,
                                          double margin = kDefaultMargin) {
  const int n_gen = basis.n_generators();
  if (rc.n_generators != n_gen || w.n() != n_gen) throw InvalidInput("N mismatch");
  if (basis.level() < n + 1) throw InvalidInput("basis must reach level n+1");
  if (rc.levels < n + 1) throw InvalidInput("coefficients must reach level n");
  const Matrix kn = cd_kernel(basis, n, w, wp, margin);
  const auto pw = evaluate_all(basis, w, n + 1);
  const auto pwp = evaluate_all(basis, wp, n + 1);
  const Matrix lhs = w[n_gen] * kn - kn * wp[n_gen].adjoint();
  const Matrix rhs = detail::cd_boundary_term(pw, pwp, rc.b(n, n_gen), n, n_gen);
  return {max_abs(lhs - rhs), std::max({max_abs(w[n_gen] * kn), max_abs(kn * wp[n_gen].adjoint()),
                                        max_abs(rhs)})};
}

struct CdFullResult {
  double residual = 0.0;  ///< spectral norm of (series − K_n)
  double tail_bound = 0.0;
  int truncation_length = 0;
};

/// K_n(W,W') against
///   F(W) [(1/2i)(Φ_{n+1}B_{n,N}Φ_n* − Φ_nB*_{n,N}Φ_{n+1}*) − Σ_{k<N} W_k K_n W'_k*]^{⊕∞} F(W')*,
/// each bracket being a fixed d×d matrix lifted diagonally.
inline CdFullResult cd_full_check(const OrthoBasis& basis, const RecurrenceCoeffs& rc, int n,
                                  const OperatorTuple& w, const OperatorTuple& wp, double tol,
                                  double margin = kDefaultMargin,
                                  int length_cap = kDefaultLengthCap) {
  const int n_gen = basis.n_generators();
  if (rc.n_generators != n_gen || w.n() != n_gen) throw InvalidInput("N mismatch");
  if (basis.level() < n + 1) throw InvalidInput("basis must reach level n+1");
  if (rc.levels < n + 1) throw InvalidInput("coefficients must reach level n");
  const Matrix kn = cd_kernel(basis, n, w, wp, margin);
  const auto pw = evaluate_all(basis, w, n + 1);
  const auto pwp = evaluate_all(basis, wp, n + 1);
  Matrix mid = detail::cd_boundary_term(pw, pwp, rc.b(n, n_gen), n, n_gen) / Complex(0.0, 2.0);
  for (int k = 1; k < n_gen; ++k) mid -= w[k] * kn * wp[k].adjoint();
  auto s = siegel_sandwich(w, wp, mid, tol, margin, length_cap);
  return {op_norm(s.value - kn), s.tail_bound, s.truncation_length};
}

/// max-entry difference between P(W') and ⟨P, K_{n,W'}⟩_φ = Σ_{|σ|≤n} ⟨P, φ_σ⟩ φ_σ(W'),
/// for P given by coefficients over the monomials of length ≤ n.
inline double cd_reproducing_residual(const MomentFunctional& f, const OrthoBasis& basis, int n,
                                      const Vector& p, const OperatorTuple& wp) {
  const auto m = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(n), f.n_generators()));
  if (p.size() != m) throw InvalidInput("polynomial has the wrong number of coefficients");
  const GramMatrix g = gram(f, n);
  const auto phis = evaluate_all(basis, wp, n);
  const Vector gp = g.entries * p;
  Matrix acc = Matrix::Zero(wp.dim(), wp.dim());
  for (Eigen::Index s = 0; s < m; ++s) {
    const Vector a = basis.coeffs().row(s).head(m).transpose();
    acc += a.dot(gp) * phis[static_cast<std::size_t>(s)];  // ⟨P, φ_σ⟩ = a* G p
  }
  return max_abs(acc - evaluate_polynomial(p, wp));
}

}  // namespace ncop

#endif  // NCOP_OPEVAL_HPP
