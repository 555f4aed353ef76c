#ifndef NCOP_RECURRENCE_HPP
#define NCOP_RECURRENCE_HPP

// Three-term recurrence of the hankel-kind orthonormal polynomials,
//   Y_k Φ_n = Φ_{n+1} B_{n,k} + Φ_n A_{n,k} + Φ_{n−1} B*_{n−1,k},
// and its inverse (Favard reconstruction).

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/orthopoly.hpp"
#include "ncop/words.hpp"

namespace ncop {

/// A[n][k-1] is N^n × N^n, B[n][k-1] is N^{n+1} × N^n, for n < levels.
struct RecurrenceCoeffs {
  int n_generators = 1;
  int levels = 0;
  std::vector<std::vector<Matrix>> A;
  std::vector<std::vector<Matrix>> B;

  const Matrix& a(int n, int k) const { return A.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k - 1)); }
  const Matrix& b(int n, int k) const { return B.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k - 1)); }

  /// B_n = [B_{n,1} … B_{n,N}]; column kσ sits at position k·N^n + rank(σ),
  /// which is the rank of the word kσ.
  Matrix b_block(int n) const {
    const auto rows = b(n, 1).rows();
    const auto cols = b(n, 1).cols();
    Matrix out(rows, cols * n_generators);
    for (int k = 1; k <= n_generators; ++k) out.middleCols((k - 1) * cols, cols) = b(n, k);
    return out;
  }
  Matrix a_block(int n) const {
    const auto sz = a(n, 1).rows();
    Matrix out(sz, sz * n_generators);
    for (int k = 1; k <= n_generators; ++k) out.middleCols((k - 1) * sz, sz) = a(n, k);
    return out;
  }
};

namespace detail {

/// Coefficients of Y_k·p, with p over the monomials of length ≤ level−1 and the
/// result over the monomials of length ≤ level (given by out_size).
inline Matrix left_shift(const Matrix& p, int k, int n_generators, Eigen::Index out_size) {
  Matrix out = Matrix::Zero(out_size, p.cols());
  for (Eigen::Index t = 0; t < p.rows(); ++t) {
    const Word tau = word_at(static_cast<std::size_t>(t), n_generators);
    const auto to = static_cast<Eigen::Index>(global_index(prepend(k, tau), n_generators));
    if (to >= out_size) {
      if (p.row(t).cwiseAbs().maxCoeff() != 0.0)
        throw InvalidInput("shifted polynomial leaves the coefficient space");
      continue;
    }
    out.row(to) = p.row(t);
  }
  return out;
}

inline Matrix padded_level_block(const OrthoBasis& basis, int n, Eigen::Index rows) {
  Matrix blk = basis.level_block(n);
  Matrix out = Matrix::Zero(rows, blk.cols());
  out.topRows(std::min(rows, blk.rows())) = blk.topRows(std::min(rows, blk.rows()));
  return out;
}

inline double max_lower_offdiag(const Matrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  return r;
}

}  // namespace detail

/// Largest coefficient-wise residual of the recurrence over n < coeffs.levels,
/// k = 1..N, with Φ_{−1} = 0 and B_{−1,k} = 0.
inline double residual_check(const OrthoBasis& basis, const RecurrenceCoeffs& coeffs) {
  const int n_gen = coeffs.n_generators;
  if (basis.n_generators() != n_gen) throw InvalidInput("basis and coefficients disagree on N");
  if (basis.level() < coeffs.levels)
    throw InvalidInput("basis level " + std::to_string(basis.level()) + " is below " +
                       std::to_string(coeffs.levels));
  double worst = 0.0;
  for (int n = 0; n < coeffs.levels; ++n) {
    const auto rows = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(n + 1), n_gen));
    const Matrix pn = detail::padded_level_block(basis, n, rows);
    const Matrix pn1 = detail::padded_level_block(basis, n + 1, rows);
    for (int k = 1; k <= n_gen; ++k) {
      Matrix r = detail::left_shift(pn.topRows(static_cast<Eigen::Index>(
                                        words_up_to_count(static_cast<std::size_t>(n), n_gen))),
                                    k, n_gen, rows);
      r -= pn1 * coeffs.b(n, k) + pn * coeffs.a(n, k);
      if (n > 0) r -= detail::padded_level_block(basis, n - 1, rows) * coeffs.b(n - 1, k).adjoint();
      worst = std::max(worst, max_abs(r));
    }
  }
  return worst;
}

inline double residual_check(const MomentFunctional& f, const OrthoBasis& basis,
                             const RecurrenceCoeffs& coeffs) {
  if (f.n_generators() != basis.n_generators())
    throw InvalidInput("functional and basis disagree on N");
  return residual_check(basis, coeffs);
}

/// A_{n,k}[τ,σ] = ⟨Y_k φ_σ, φ_τ⟩ (|τ| = n), B_{n,k}[τ,σ] = ⟨Y_k φ_σ, φ_τ⟩
/// (|τ| = n+1), for |σ| = n < levels. Needs the Gram at level `levels`
/// (hankel moments to degree 2·levels) and a basis to level `levels`.
/// Verifies hermiticity of A, triangularity of B_n and the recurrence residual.
inline RecurrenceCoeffs extract(const MomentFunctional& f, const OrthoBasis& basis, int levels) {
  if (f.kind() != MomentKind::hankel)
    throw InvalidInput("the three-term recurrence needs a hankel-kind functional");
  if (f.n_generators() != basis.n_generators())
    throw InvalidInput("functional and basis disagree on N");
  if (levels < 0) throw InvalidInput("levels must be non-negative");
  if (basis.level() < levels)
    throw InvalidInput("basis level " + std::to_string(basis.level()) + " is below the requested " +
                       std::to_string(levels));
  const int n_gen = f.n_generators();
  RecurrenceCoeffs rc{n_gen, levels, {}, {}};
  if (levels == 0) return rc;

  const GramMatrix g = gram(f, levels);
  const auto dim = g.size();
  const OrthoBasis b = basis.truncated(levels);
  const double scale = std::max(1.0, max_abs(b.coeffs()));

  for (int n = 0; n < levels; ++n) {
    const Matrix pn = detail::padded_level_block(b, n, dim);
    const Matrix pn1 = detail::padded_level_block(b, n + 1, dim);
    const auto low = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(n), n_gen));
    std::vector<Matrix> as, bs;
    for (int k = 1; k <= n_gen; ++k) {
      const Matrix yk = detail::left_shift(pn.topRows(low), k, n_gen, dim);
      const Matrix gy = g.entries * yk;
      Matrix a = pn.adjoint() * gy;
      Matrix bb = pn1.adjoint() * gy;
      const double herm = max_abs(a - a.adjoint());
      if (herm > 1e-10 * std::max(1.0, max_abs(a)) * scale)
        throw ConsistencyError("A_{" + std::to_string(n) + "," + std::to_string(k) +
                               "} is not Hermitian (deviation " + std::to_string(herm) + ")");
      as.push_back(std::move(a));
      bs.push_back(std::move(bb));
    }
    rc.A.push_back(std::move(as));
    rc.B.push_back(std::move(bs));
    const Matrix bn = rc.b_block(n);
    const double lower = detail::max_lower_offdiag(bn);
    if (lower > 1e-9 * std::max(1.0, max_abs(bn)) * scale)
      throw ConsistencyError("B_" + std::to_string(n) + " is not upper triangular (deviation " +
                             std::to_string(lower) + ")");
  }
  const double res = residual_check(b, rc);
  if (res > 1e-9 * scale * std::max(1.0, max_abs(rc.b_block(levels - 1))))
    throw ConsistencyError("recurrence residual " + std::to_string(res) + " exceeds tolerance");
  return rc;
}

struct FavardResult {
  OrthoBasis basis;             ///< φ_σ for |σ| ≤ levels
  MomentFunctional functional;  ///< hankel moments to degree 2·levels
  double hankel_discrepancy = 0.0;  ///< spread of s_w over all splits w = I(σ)τ
};

/// Rebuilds the polynomials from the recurrence,
///   Φ_{l+1} = [Y_1Φ_l … Y_NΦ_l] B_l⁻¹ − Φ_l A_l B_l⁻¹ − Φ_{l−1} C_l B_l⁻¹,
/// then the functional with φ(1) = 1 and ⟨φ_α, φ_β⟩ = δ_{α,β}, whose Gram is
/// G = conj(A)⁻¹ A⁻ᵀ. Rejects non-Hermitian A_{n,k}, and B_n that is not upper
/// triangular with a positive diagonal or has condition number above max_condition.
inline FavardResult favard(const RecurrenceCoeffs& rc, int levels, double max_condition = 1e8) {
  const int n_gen = rc.n_generators;
  if (n_gen < 1) throw InvalidInput("n_generators must be at least 1");
  if (levels < 0 || levels > rc.levels)
    throw InvalidInput("requested " + std::to_string(levels) + " levels but coefficients cover " +
                       std::to_string(rc.levels));
  if (static_cast<int>(rc.A.size()) < levels || static_cast<int>(rc.B.size()) < levels)
    throw InvalidInput("coefficient arrays are shorter than the declared levels");

  auto tag = [](int n, int k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; };
  for (int n = 0; n < levels; ++n) {
    const auto sz = static_cast<Eigen::Index>(level_size(static_cast<std::size_t>(n), n_gen));
    if (rc.A[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n_gen) ||
        rc.B[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n_gen))
      throw InvalidInput("level " + std::to_string(n) + " needs one A and one B block per generator");
    for (int k = 1; k <= n_gen; ++k) {
      const Matrix& a = rc.a(n, k);
      const Matrix& b = rc.b(n, k);
      if (a.rows() != sz || a.cols() != sz)
        throw InvalidInput("A" + tag(n, k) + " has the wrong shape");
      if (b.rows() != sz * n_gen || b.cols() != sz)
        throw InvalidInput("B" + tag(n, k) + " has the wrong shape");
      if (max_abs(a - a.adjoint()) > 1e-10 * std::max(1.0, max_abs(a)))
        throw InvalidInput("A" + tag(n, k) + " is not Hermitian");
    }
    const Matrix bn = rc.b_block(n);
    const double tol = 1e-10 * std::max(1.0, max_abs(bn));
    for (Eigen::Index j = 0; j < bn.cols(); ++j) {
      const int k = static_cast<int>(j / sz) + 1;
      for (Eigen::Index i = j + 1; i < bn.rows(); ++i)
        if (std::abs(bn(i, j)) > tol)
          throw InvalidInput("B" + tag(n, k) + " breaks upper triangularity of B_" + std::to_string(n));
      const Complex d = bn(j, j);
      if (!(d.real() > 0.0) || std::abs(d.imag()) > tol)
        throw InvalidInput("B" + tag(n, k) + " has a non-positive diagonal entry");
    }
    Eigen::JacobiSVD<Matrix> svd(bn);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond <= max_condition)) {
      Eigen::Index worst = 0;
      bn.diagonal().cwiseAbs().minCoeff(&worst);
      throw InvalidInput("B" + tag(n, static_cast<int>(worst / sz) + 1) + ": B_" +
                         std::to_string(n) + " condition number " + std::to_string(cond) +
                         " exceeds " + std::to_string(max_condition));
    }
  }

  const auto dim = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(levels), n_gen));
  Matrix coeffs = Matrix::Zero(dim, dim);  // rows φ_σ
  coeffs(0, 0) = 1.0;
  auto level_cols = [&](int n) {
    const auto off = static_cast<Eigen::Index>(level_offset(static_cast<std::size_t>(n), n_gen));
    const auto cnt = static_cast<Eigen::Index>(level_size(static_cast<std::size_t>(n), n_gen));
    return Matrix(coeffs.middleRows(off, cnt).transpose());
  };
  for (int l = 0; l < levels; ++l) {
    const auto low = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(l), n_gen));
    const Matrix pl = level_cols(l);
    const auto sz = pl.cols();
    Matrix lhs(dim, sz * n_gen);  // [Y_1Φ_l … Y_NΦ_l] − Φ_l A_l − Φ_{l−1} C_l
    for (int k = 1; k <= n_gen; ++k) {
      Matrix col = detail::left_shift(pl.topRows(low), k, n_gen, dim) - pl * rc.a(l, k);
      if (l > 0) col -= level_cols(l - 1) * rc.b(l - 1, k).adjoint();
      lhs.middleCols((k - 1) * sz, sz) = col;
    }
    const Matrix bn = rc.b_block(l);
    const Matrix next = bn.transpose().triangularView<Eigen::Lower>().solve(lhs.transpose());
    const auto off = static_cast<Eigen::Index>(level_offset(static_cast<std::size_t>(l + 1), n_gen));
    coeffs.middleRows(off, next.rows()) = next;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    coeffs(i, i) = Complex(coeffs(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < dim; ++j) coeffs(i, j) = 0.0;
  }
  OrthoBasis basis(n_gen, levels, coeffs);

  // Gram of the monomials: conj(A) G Aᵀ = I.
  const Matrix ainv = coeffs.triangularView<Eigen::Lower>().solve(Matrix::Identity(dim, dim));
  const Matrix g = ainv.conjugate() * ainv.transpose();

  MomentMap moments;
  double discrepancy = 0.0;
  for (const Word& w : words_up_to(static_cast<std::size_t>(2 * levels), n_gen)) {
    const std::size_t len = w.size();
    const std::size_t lo = len > static_cast<std::size_t>(levels) ? len - static_cast<std::size_t>(levels) : 0;
    const std::size_t hi = std::min(len, static_cast<std::size_t>(levels));
    // w = I(σ)τ with |I(σ)| = split
    Complex first{};
    bool have = false;
    for (std::size_t split = lo; split <= hi; ++split) {
      const Word head(std::vector<int>(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(split)));
      const Word tail(std::vector<int>(w.letters().begin() + static_cast<std::ptrdiff_t>(split), w.letters().end()));
      const Complex v = g(static_cast<Eigen::Index>(global_index(involution(head), n_gen)),
                          static_cast<Eigen::Index>(global_index(tail, n_gen)));
      if (!have) {
        first = v;
        have = true;
        moments[w] = v;
      }
      discrepancy = std::max(discrepancy, std::abs(v - first));
    }
  }
  moments[Word{}] = Complex(1.0);
  for (auto& [w, s] : moments) {
    const Word r = involution(w);
    if (r < w) s = std::conj(moments.at(r));
    else if (r == w) s = Complex(s.real(), 0.0);
  }
  MomentFunctional f(n_gen, MomentKind::hankel, 2 * levels, std::move(moments));
  return {std::move(basis), std::move(f), discrepancy};
}

}  // namespace ncop

#endif  // NCOP_RECURRENCE_HPP
