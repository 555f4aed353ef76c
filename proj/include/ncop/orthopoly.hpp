#ifndef NCOP_ORTHOPOLY_HPP
#define NCOP_ORTHOPOLY_HPP

// Orthonormal polynomials φ_σ = Σ_{τ⪯σ} a_{σ,τ} Y_τ of a strictly positive
// functional, with a_{σ,σ} > 0.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/operator_tuple.hpp"
#include "ncop/words.hpp"

namespace ncop {

/// Lower-triangular coefficient array: row σ holds a_{σ,τ} for τ ⪯ σ, both
/// indexed in graded-lex order over the words of length ≤ level.
class OrthoBasis {
 public:
  OrthoBasis() = default;
  OrthoBasis(int n_generators, int level, Matrix coeffs)
      : n_generators_(n_generators), level_(level), coeffs_(std::move(coeffs)) {
    const auto m = static_cast<Eigen::Index>(
        words_up_to_count(static_cast<std::size_t>(level_), n_generators_));
    if (coeffs_.rows() != m || coeffs_.cols() != m)
      throw InvalidInput("basis coefficient array has the wrong size for level " +
                         std::to_string(level_));
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex d = coeffs_(i, i);
      if (!(d.real() > 0.0) || std::abs(d.imag()) > 1e-12 * d.real())
        throw InvalidInput("leading coefficient of phi_" +
                           word_at(static_cast<std::size_t>(i), n_generators_).str() +
                           " must be real and positive");
      for (Eigen::Index j = i + 1; j < m; ++j)
        if (coeffs_(i, j) != Complex(0.0))
          throw InvalidInput("basis coefficients must be lower triangular");
    }
    if (std::abs(coeffs_(0, 0) - Complex(1.0)) > 1e-10)
      throw InvalidInput("phi_e must be the constant 1");
  }

  int n_generators() const noexcept { return n_generators_; }
  int level() const noexcept { return level_; }
  Eigen::Index size() const noexcept { return coeffs_.rows(); }
  const Matrix& coeffs() const noexcept { return coeffs_; }

  Complex coeff(const Word& sigma, const Word& tau) const {
    return coeffs_(index(sigma), index(tau));
  }

  /// Coefficient vector of φ_σ over all monomials of length ≤ level.
  Vector polynomial(const Word& sigma) const { return coeffs_.row(index(sigma)).transpose(); }

  /// Columns are the coefficient vectors of φ_σ, |σ| = n (the row vector Φ_n).
  Matrix level_block(int n) const {
    const auto off = static_cast<Eigen::Index>(level_offset(static_cast<std::size_t>(n), n_generators_));
    const auto cnt = static_cast<Eigen::Index>(level_size(static_cast<std::size_t>(n), n_generators_));
    return coeffs_.middleRows(off, cnt).transpose();
  }

  OrthoBasis truncated(int level) const {
    if (level > level_) throw InvalidInput("cannot truncate a basis to a higher level");
    const auto m = static_cast<Eigen::Index>(
        words_up_to_count(static_cast<std::size_t>(level), n_generators_));
    return OrthoBasis(n_generators_, level, coeffs_.topLeftCorner(m, m));
  }

 private:
  Eigen::Index index(const Word& w) const {
    if (w.size() > static_cast<std::size_t>(level_))
      throw InvalidInput("word '" + w.str() + "' is beyond the basis level");
    return static_cast<Eigen::Index>(global_index(w, n_generators_));
  }

  int n_generators_ = 1;
  int level_ = 0;
  Matrix coeffs_;
};

/// max |⟨φ_α, φ_β⟩ − δ_{α,β}| where the Gram of the basis is conj(A)·G·Aᵀ.
inline double orthonormality_residual(const OrthoBasis& basis, const GramMatrix& g) {
  const Eigen::Index m = std::min(basis.size(), g.size());
  const Matrix a = basis.coeffs().topLeftCorner(m, m);
  const Matrix inner = a.conjugate() * g.entries.topLeftCorner(m, m) * a.transpose();
  return max_abs(inner - Matrix::Identity(m, m));
}

/// Cholesky route: G = L L*, conj(A) = L⁻¹.
inline OrthoBasis orthogonalize(const GramMatrix& g, double tol = 1e-9) {
  auto pos = strict_positivity(g, tol);
  if (!pos.ok) throw PositivityError(std::move(pos));
  Eigen::LLT<Matrix> llt(g.entries);
  if (llt.info() != Eigen::Success) throw PositivityError(detail::analyze_spectrum(g, tol));
  const auto m = g.size();
  Matrix linv = llt.matrixL().solve(Matrix::Identity(m, m));
  Matrix a = linv.conjugate().triangularView<Eigen::Lower>();
  for (Eigen::Index i = 0; i < m; ++i) a(i, i) = Complex(a(i, i).real(), 0.0);
  return OrthoBasis(g.n_generators, g.level, std::move(a));
}

inline OrthoBasis orthogonalize(const MomentFunctional& f, int level, double tol = 1e-9) {
  return orthogonalize(gram(f, level), tol);
}

/// Leading block [K(α', β')]_{α', β' ⪯ σ}.
inline Matrix leading_kernel_block(const MomentFunctional& f, const Word& sigma) {
  const int n = f.n_generators();
  const auto m = static_cast<Eigen::Index>(global_index(sigma, n)) + 1;
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      g(i, j) = kernel_entry(f, word_at(static_cast<std::size_t>(i), n),
                             word_at(static_cast<std::size_t>(j), n));
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

/// Bordered-determinant route for a single φ_σ: expand
///   det [ K(α', β') for α' ≺ σ, β' ⪯ σ ; F_∅ … F_σ ]
/// along its last row and divide by √(D_{σ−1} D_σ). Returns the coefficients
/// over the monomials β ⪯ σ. Cost grows like m⁴; intended for m ≲ 15.
inline Vector determinant_formula(const MomentFunctional& f, const Word& sigma, double tol = 1e-9) {
  check_letters(sigma, f.n_generators());
  const Matrix g = leading_kernel_block(f, sigma);
  const auto m = g.rows();
  {
    GramMatrix block{f.n_generators(), static_cast<int>(sigma.size()), g};
    auto pos = strict_positivity(block, tol);
    if (!pos.ok) throw PositivityError(std::move(pos));
  }
  if (m == 1) return Vector::Ones(1);

  const Eigen::Index rows = m - 1;  // the α' ≺ σ rows
  const double d_prev = g.topLeftCorner(rows, rows).partialPivLu().determinant().real();
  const double d_cur = g.partialPivLu().determinant().real();
  Vector out(m);
  Matrix minor(rows, rows);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index c = 0, col = 0; c < m; ++c) {
      if (c == j) continue;
      minor.col(col++) = g.block(0, c, rows, 1);
    }
    const double sign = ((rows + j) % 2 == 0) ? 1.0 : -1.0;
    out(j) = sign * minor.partialPivLu().determinant();
  }
  return out / std::sqrt(d_prev * d_cur);
}

/// Reflection data of the Szegő-type recursion: γ_σ, d_σ = √(1 − |γ_σ|²) and
/// the reversed polynomials φ^♯_σ (rows of `sharp`, graded-lex).
struct SzegoData {
  std::map<Word, Complex> gammas;
  std::map<Word, double> ds;
  Matrix sharp;
};

struct SzegoResult {
  OrthoBasis basis;
  SzegoData data;
};

/// Toeplitz-type functionals only. Runs
///   φ_{kσ}  = (Y_k φ_σ − γ_{kσ} φ^♯_{kσ−1}) / d_{kσ}
///   φ^♯_{kσ} = (−conj(γ_{kσ}) Y_k φ_σ + φ^♯_{kσ−1}) / d_{kσ}
/// over the words in graded-lex order, where kσ−1 is the graded-lex
/// predecessor of kσ and γ_{kσ} = ⟨Y_k φ_σ, φ^♯_{kσ−1}⟩. The result is checked
/// against the Cholesky route to `match_tol` (relative).
inline SzegoResult szego_recursion(const MomentFunctional& f, int level, double tol = 1e-9,
                                   double match_tol = 1e-8) {
  if (f.kind() != MomentKind::toeplitz)
    throw InvalidInput("the Szego recursion needs a toeplitz-kind functional");
  const int n = f.n_generators();
  const GramMatrix g = gram(f, level);
  const auto m = g.size();

  Matrix phi = Matrix::Zero(m, m);    // rows: coefficient vectors
  Matrix sharp = Matrix::Zero(m, m);
  phi(0, 0) = 1.0;
  sharp(0, 0) = 1.0;
  SzegoData data;

  Vector u(m);
  for (Eigen::Index i = 1; i < m; ++i) {
    const Word w = word_at(static_cast<std::size_t>(i), n);
    const int k = w.front();
    const Word rest = w.tail();
    // u = Y_k φ_rest: move the coefficient of Y_τ to Y_{kτ}.
    u.setZero();
    const auto src = static_cast<Eigen::Index>(global_index(rest, n));
    for (Eigen::Index t = 0; t <= src; ++t) {
      const Complex c = phi(src, t);
      if (c == Complex(0.0)) continue;
      const Word tau = word_at(static_cast<std::size_t>(t), n);
      u(static_cast<Eigen::Index>(global_index(prepend(k, tau), n))) = c;
    }
    const Vector v = sharp.row(i - 1).transpose();
    const Complex gamma = v.dot(g.entries * u);  // ⟨u, v⟩ = v* G u
    const double one_minus = 1.0 - std::norm(gamma);
    if (!(one_minus > tol)) throw PositivityError(detail::analyze_spectrum(g, tol));
    const double d = std::sqrt(one_minus);
    phi.row(i) = ((u - gamma * v) / d).transpose();
    sharp.row(i) = ((v - std::conj(gamma) * u) / d).transpose();
    phi(i, i) = Complex(phi(i, i).real(), 0.0);
    data.gammas[w] = gamma;
    data.ds[w] = d;
  }
  data.sharp = std::move(sharp);

  OrthoBasis basis(n, level, std::move(phi));
  const OrthoBasis reference = orthogonalize(g, tol);
  const double scale = std::max(1.0, max_abs(reference.coeffs()));
  const double diff = max_abs(basis.coeffs() - reference.coeffs());
  if (diff > match_tol * scale)
    throw ConsistencyError("Szego recursion disagrees with Gram-Schmidt by " + std::to_string(diff));
  return {std::move(basis), std::move(data)};
}

/// Σ_τ c_τ Z_τ for a coefficient vector over the graded-lex monomials.
inline Matrix evaluate_polynomial(const Vector& coeffs, const OperatorTuple& z) {
  const int n = z.n();
  std::size_t level = 0;
  while (words_up_to_count(level, n) < static_cast<std::size_t>(coeffs.size())) ++level;
  const auto table = monomial_table(z, level);
  Matrix out = Matrix::Zero(z.dim(), z.dim());
  for (Eigen::Index t = 0; t < coeffs.size(); ++t)
    if (coeffs(t) != Complex(0.0)) out += coeffs(t) * table[static_cast<std::size_t>(t)];
  return out;
}

/// φ_σ(Z) = Σ_{τ⪯σ} a_{σ,τ} Z_τ with Z_∅ = I.
inline Matrix evaluate(const OrthoBasis& basis, const Word& sigma, const OperatorTuple& z) {
  if (z.n() != basis.n_generators())
    throw InvalidInput("tuple has " + std::to_string(z.n()) + " matrices, basis has " +
                       std::to_string(basis.n_generators()) + " generators");
  const Vector p = basis.polynomial(sigma);
  const auto upto = static_cast<Eigen::Index>(global_index(sigma, basis.n_generators())) + 1;
  return evaluate_polynomial(p.head(upto), z);
}

/// φ_σ(Z) for every |σ| ≤ level, graded-lex.
inline std::vector<Matrix> evaluate_all(const OrthoBasis& basis, const OperatorTuple& z, int level) {
  if (z.n() != basis.n_generators())
    throw InvalidInput("tuple dimension does not match the basis");
  if (level > basis.level()) throw InvalidInput("evaluation level exceeds the basis level");
  const auto table = monomial_table(z, static_cast<std::size_t>(level));
  const auto m = static_cast<Eigen::Index>(table.size());
  std::vector<Matrix> out;
  out.reserve(table.size());
  for (Eigen::Index s = 0; s < m; ++s) {
    Matrix acc = Matrix::Zero(z.dim(), z.dim());
    for (Eigen::Index t = 0; t <= s; ++t)
      if (basis.coeffs()(s, t) != Complex(0.0)) acc += basis.coeffs()(s, t) * table[static_cast<std::size_t>(t)];
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace ncop

#endif  // NCOP_ORTHOPOLY_HPP
