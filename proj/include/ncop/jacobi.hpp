#ifndef NCOP_JACOBI_HPP
#define NCOP_JACOBI_HPP

// Truncated Jacobi N-families and the Hamburger-type moment test.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/functional.hpp"
#include "ncop/orthopoly.hpp"
#include "ncop/recurrence.hpp"
#include "ncop/words.hpp"

namespace ncop {

/// Matrix of multiplication by Y_k in the orthonormal basis {e_σ : |σ| ≤ L}:
/// block (n, n) = A_{n,k}, block (n+1, n) = B_{n,k}, block (n, n+1) = B*_{n,k}.
struct BlockJacobi {
  int n_generators = 1;
  int truncation = 0;
  int k = 1;
  Matrix matrix;
};

/// Needs A_{n,k} for n ≤ L, i.e. coefficients with at least L+1 levels.
inline std::vector<BlockJacobi> build(const RecurrenceCoeffs& rc, int truncation) {
  if (truncation < 0) throw InvalidInput("truncation level must be non-negative");
  if (rc.levels < truncation + 1 || static_cast<int>(rc.A.size()) < truncation + 1)
    throw InvalidInput("truncation " + std::to_string(truncation) + " needs " +
                       std::to_string(truncation + 1) + " coefficient levels, have " +
                       std::to_string(rc.levels));
  const int n_gen = rc.n_generators;
  const auto dim = static_cast<Eigen::Index>(words_up_to_count(static_cast<std::size_t>(truncation), n_gen));
  std::vector<BlockJacobi> out;
  for (int k = 1; k <= n_gen; ++k) {
    Matrix j = Matrix::Zero(dim, dim);
    for (int n = 0; n <= truncation; ++n) {
      const auto off = static_cast<Eigen::Index>(level_offset(static_cast<std::size_t>(n), n_gen));
      const Matrix& a = rc.a(n, k);
      j.block(off, off, a.rows(), a.cols()) = a;
      if (n < truncation) {
        const auto off1 = static_cast<Eigen::Index>(level_offset(static_cast<std::size_t>(n + 1), n_gen));
        const Matrix& b = rc.b(n, k);
        j.block(off1, off, b.rows(), b.cols()) = b;
        j.block(off, off1, b.cols(), b.rows()) = b.adjoint();
      }
    }
    // diagonal blocks come from numerically Hermitian A; make the whole matrix exactly so
    Matrix herm = (j + j.adjoint()) / 2.0;
    out.push_back({n_gen, truncation, k, std::move(herm)});
  }
  return out;
}

/// J_σ v = J_{i1}⋯J_{ik} v.
inline Vector word_apply(const std::vector<BlockJacobi>& js, const Word& sigma, const Vector& v) {
  if (js.empty()) throw InvalidInput("empty Jacobi family");
  check_letters(sigma, static_cast<int>(js.size()));
  if (v.size() != js.front().matrix.rows()) throw InvalidInput("vector size does not match J");
  Vector r = v;
  for (auto it = sigma.letters().rbegin(); it != sigma.letters().rend(); ++it)
    r = js[static_cast<std::size_t>(*it - 1)].matrix * r;
  return r;
}

struct JacobiMoment {
  Complex value;
  bool truncation_warning = false;  ///< |σ| > L
};

/// ⟨J_σ e_∅, e_∅⟩.
inline JacobiMoment moment(const std::vector<BlockJacobi>& js, const Word& sigma) {
  if (js.empty()) throw InvalidInput("empty Jacobi family");
  Vector e = Vector::Zero(js.front().matrix.rows());
  e(0) = 1.0;
  return {word_apply(js, sigma, e)(0),
          sigma.size() > static_cast<std::size_t>(js.front().truncation)};
}

struct HamburgerResult {
  bool positive = false;           ///< Gram PSD within tolerance: moments of a positive functional
  bool strictly_positive = false;  ///< Gram positive definite: a recurrence witness exists
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  std::optional<RecurrenceCoeffs> witness;
  std::optional<PositivityResult> certificate;  ///< set when !positive
};

/// Decides whether hankel moments (to degree 2·level) come from a positive
/// functional, via the kernel K(σ, τ) = s_{I(σ)τ} on words of length ≤ level.
inline HamburgerResult hamburger_check(const MomentFunctional& f, int level, double tol = 1e-9) {
  if (f.kind() != MomentKind::hankel) throw InvalidInput("hamburger_check needs hankel moments");
  const GramMatrix g = gram(f, level);
  const PositivityResult eig = detail::analyze_spectrum(g, tol);
  HamburgerResult r;
  r.min_eigenvalue = eig.min_eigenvalue;
  r.threshold = eig.threshold;
  r.positive = eig.min_eigenvalue >= -eig.threshold;
  r.strictly_positive = eig.ok;
  if (!r.positive) r.certificate = eig;
  if (r.strictly_positive) {
    const OrthoBasis basis = orthogonalize(g, tol);
    r.witness = extract(f, basis, level);
  }
  return r;
}

inline HamburgerResult hamburger_check(int n_generators, const MomentMap& moments, int level,
                                       double tol = 1e-9) {
  return hamburger_check(MomentFunctional(n_generators, MomentKind::hankel, 2 * level, moments),
                         level, tol);
}

}  // namespace ncop

#endif  // NCOP_JACOBI_HPP
