#ifndef NCOP_FUNCTIONAL_HPP
#define NCOP_FUNCTIONAL_HPP

// Moment functionals on the quotient algebras and their Gram kernels.
//
// Gram convention: entry(σ, τ) = K(σ, τ) = ⟨Y_τ, Y_σ⟩, so for coefficient
// vectors p, q over the monomials the inner product is ⟨p, q⟩ = q* G p.
//
//  hankel   : K(σ, τ) = s_{I(σ)τ}                          (self-adjoint Y_k)
//  toeplitz : K(σ, σα) = c_α, K(σα, σ) = conj(c_α), else 0 (isometric Y_k with
//             orthogonal ranges; stationary under a common prefix)
//  generic  : K(σ, τ) read from an explicit table

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/words.hpp"

namespace ncop {

enum class MomentKind { hankel, toeplitz, generic };

inline std::string to_string(MomentKind k) {
  switch (k) {
    case MomentKind::hankel: return "hankel";
    case MomentKind::toeplitz: return "toeplitz";
    case MomentKind::generic: return "generic";
  }
  return "?";
}

inline MomentKind parse_kind(const std::string& s) {
  if (s == "hankel") return MomentKind::hankel;
  if (s == "toeplitz") return MomentKind::toeplitz;
  if (s == "generic") return MomentKind::generic;
  throw InvalidInput("unknown functional kind '" + s + "'");
}

using MomentMap = std::map<Word, Complex>;
using KernelMap = std::map<std::pair<Word, Word>, Complex>;

class MomentFunctional {
 public:
  /// Validates letters, unitality (s_∅ = 1) and, for the hankel kind, the
  /// conjugation symmetry s_{I(σ)} = conj(s_σ).
  MomentFunctional(int n_generators, MomentKind kind, int max_degree, MomentMap moments,
                   KernelMap kernel = {})
      : n_generators_(n_generators),
        kind_(kind),
        max_degree_(max_degree),
        moments_(std::move(moments)),
        kernel_(std::move(kernel)) {
    if (n_generators_ < 1) throw InvalidInput("n_generators must be at least 1");
    if (max_degree_ < 0) throw InvalidInput("max_degree must be non-negative");
    for (const auto& [w, _] : moments_) check_letters(w, n_generators_);
    for (const auto& [key, _] : kernel_) {
      check_letters(key.first, n_generators_);
      check_letters(key.second, n_generators_);
    }
    const auto unit = kind_ == MomentKind::generic && !kernel_.empty()
                          ? find_kernel(Word{}, Word{})
                          : find(Word{});
    if (!unit) throw DataIncomplete("e");
    if (std::abs(*unit - Complex(1.0)) > kUnitTol)
      throw InvalidInput("functional is not unital: value at 'e' must be 1");
    if (kind_ == MomentKind::hankel) {
      for (const auto& [w, s] : moments_) {
        const auto mirror = find(involution(w));
        if (mirror && std::abs(*mirror - std::conj(s)) > kSymTol * std::max(1.0, std::abs(s)))
          throw InvalidInput("moments violate s_I(w) = conj(s_w) at word '" + w.str() + "'");
      }
    }
    if (kind_ == MomentKind::generic) {
      for (const auto& [key, k] : kernel_) {
        auto it = kernel_.find({key.second, key.first});
        if (it != kernel_.end() &&
            std::abs(it->second - std::conj(k)) > kSymTol * std::max(1.0, std::abs(k)))
          throw InvalidInput("kernel is not Hermitian at '" + key.first.str() + "|" +
                             key.second.str() + "'");
      }
    }
  }

  /// One-variable hankel functional from s_0, s_1, …; max_degree = size − 1.
  static MomentFunctional univariate_hankel(std::span<const Complex> seq) {
    MomentMap m;
    for (std::size_t n = 0; n < seq.size(); ++n) m[Word(std::vector<int>(n, 1))] = seq[n];
    return MomentFunctional(1, MomentKind::hankel, static_cast<int>(seq.size()) - 1, std::move(m));
  }

  int n_generators() const noexcept { return n_generators_; }
  MomentKind kind() const noexcept { return kind_; }
  int max_degree() const noexcept { return max_degree_; }
  const MomentMap& moments() const noexcept { return moments_; }
  const KernelMap& kernel() const noexcept { return kernel_; }

  std::optional<Complex> find(const Word& w) const {
    auto it = moments_.find(w);
    if (it == moments_.end()) return std::nullopt;
    return it->second;
  }

  /// s_w (hankel/generic) or c_w (toeplitz). Throws DataIncomplete.
  Complex moment(const Word& w) const {
    if (auto v = find(w)) return *v;
    throw DataIncomplete(w.str());
  }

  std::optional<Complex> find_kernel(const Word& s, const Word& t) const {
    if (auto it = kernel_.find({s, t}); it != kernel_.end()) return it->second;
    if (auto it = kernel_.find({t, s}); it != kernel_.end()) return std::conj(it->second);
    return std::nullopt;
  }

  /// Largest Gram level the stored degree supports.
  int max_gram_level() const noexcept {
    return kind_ == MomentKind::hankel ? max_degree_ / 2 : max_degree_;
  }

 private:
  static constexpr double kUnitTol = 1e-12;
  static constexpr double kSymTol = 1e-10;

  int n_generators_;
  MomentKind kind_;
  int max_degree_;
  MomentMap moments_;
  KernelMap kernel_;
};

/// K(σ, τ) for the functional's kind.
inline Complex kernel_entry(const MomentFunctional& f, const Word& s, const Word& t) {
  switch (f.kind()) {
    case MomentKind::hankel:
      return f.moment(involution(s) + t);
    case MomentKind::toeplitz:
      if (auto a = strip_prefix(t, s)) return f.moment(*a);
      if (auto a = strip_prefix(s, t)) return std::conj(f.moment(*a));
      return Complex(0.0);
    case MomentKind::generic:
      if (auto k = f.find_kernel(s, t)) return *k;
      throw DataIncomplete(s.str() + "|" + t.str());
  }
  return Complex(0.0);
}

struct GramMatrix {
  int n_generators = 1;
  int level = 0;
  Matrix entries;  ///< rows/columns in graded-lex order of words of length ≤ level

  Complex entry(const Word& s, const Word& t) const {
    return entries(static_cast<Eigen::Index>(global_index(s, n_generators)),
                   static_cast<Eigen::Index>(global_index(t, n_generators)));
  }
  Eigen::Index size() const { return entries.rows(); }
};

inline GramMatrix gram(const MomentFunctional& f, int level) {
  if (level < 0) throw InvalidInput("gram level must be non-negative");
  const auto words = words_up_to(static_cast<std::size_t>(level), f.n_generators());
  const auto n = static_cast<Eigen::Index>(words.size());
  GramMatrix g{f.n_generators(), level, Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    g.entries(i, i) = kernel_entry(f, words[i], words[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g.entries(i, j) = kernel_entry(f, words[i], words[j]);
      g.entries(j, i) = std::conj(g.entries(i, j));
    }
  }
  return g;
}

/// Outcome of the strict-positivity test. When it fails, `certificate` holds
/// the coefficients (over the monomials, graded-lex) of a unit-norm polynomial
/// P with ⟨P, P⟩ = min_eigenvalue.
struct PositivityResult {
  bool ok = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  Vector certificate;
  Word certificate_word;  ///< monomial carrying the largest certificate weight
  int n_generators = 1;   ///< alphabet of the certificate's monomials
};

namespace detail {

inline PositivityResult analyze_spectrum(const GramMatrix& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.entries);
  if (es.info() != Eigen::Success) throw ConsistencyError("Gram eigen-solver failed");
  PositivityResult r;
  const double max_diag = g.entries.diagonal().real().maxCoeff();
  r.threshold = tol * std::max(1.0, max_diag);
  r.min_eigenvalue = es.eigenvalues()(0);
  r.ok = r.min_eigenvalue > r.threshold;
  Vector v = es.eigenvectors().col(0);
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v *= std::polar(1.0, -std::arg(v(arg)));
  r.certificate = std::move(v);
  r.certificate_word = word_at(static_cast<std::size_t>(arg), g.n_generators);
  r.n_generators = g.n_generators;
  return r;
}

}  // namespace detail

/// ok iff λ_min(G) > tol·max(1, max diagonal entry).
inline PositivityResult strict_positivity(const GramMatrix& g, double tol = 1e-9) {
  auto r = detail::analyze_spectrum(g, tol);
  if (r.ok) r.certificate = Vector();
  return r;
}

inline PositivityResult strict_positivity(const MomentFunctional& f, int level, double tol = 1e-9) {
  return strict_positivity(gram(f, level), tol);
}

/// Raised when an operation needs a strictly positive functional and gets a
/// Gram matrix with a (near-)null direction.
class PositivityError : public Error {
 public:
  explicit PositivityError(PositivityResult r)
      : Error("functional is not strictly positive (min eigenvalue " +
              std::to_string(r.min_eigenvalue) + ", certificate word '" +
              r.certificate_word.str() + "')"),
        result_(std::move(r)) {}
  const PositivityResult& result() const noexcept { return result_; }

 private:
  PositivityResult result_;
};

/// Hankel functional s_σ = ⟨X_σ v, v⟩ with X_σ = X_{i1}⋯X_{ik}, for all
/// |σ| ≤ max_degree.
inline MomentFunctional from_representation(std::span<const Matrix> xs, const Vector& v,
                                            int max_degree) {
  if (xs.empty()) throw InvalidInput("need at least one matrix");
  const auto d = xs.front().rows();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Matrix& x = xs[k];
    if (x.rows() != d || x.cols() != d)
      throw InvalidInput("matrix " + std::to_string(k + 1) + " is not " + std::to_string(d) +
                         "x" + std::to_string(d));
    if (max_abs(x - x.adjoint()) > 1e-10 * std::max(1.0, max_abs(x)))
      throw InvalidInput("matrix " + std::to_string(k + 1) + " is not Hermitian");
  }
  if (v.size() != d) throw InvalidInput("vector length does not match matrix size");
  if (std::abs(v.norm() - 1.0) > 1e-10) throw InvalidInput("vector must have unit norm");
  const int n = static_cast<int>(xs.size());

  // X_σ v for every σ, built as X_k (X_τ v) for σ = kτ.
  const auto words = words_up_to(static_cast<std::size_t>(max_degree), n);
  std::vector<Vector> images;
  images.reserve(words.size());
  MomentMap m;
  for (const Word& w : words) {
    if (w.empty()) {
      images.push_back(v);
    } else {
      const auto parent = global_index(w.tail(), n);
      images.push_back(xs[static_cast<std::size_t>(w.front() - 1)] * images[parent]);
    }
    m[w] = v.dot(images.back());  // v* (X_σ v)
  }
  m[Word{}] = Complex(1.0);
  // Exact conjugation symmetry (X Hermitian makes it hold up to rounding).
  for (auto& [w, s] : m) {
    const Word r = involution(w);
    if (r < w) s = std::conj(m.at(r));
    else if (r == w) s = Complex(s.real(), 0.0);
  }
  return MomentFunctional(n, MomentKind::hankel, max_degree, std::move(m));
}

/// Moments of N free semicircular variables: s_σ = ⟨(l+l*)_σ Ω, Ω⟩ on the
/// full Fock space over ℂ^N, realized on the Fock space truncated at depth
/// max_degree/2 (deeper states cannot return to the vacuum in time).
inline MomentFunctional free_semicircular(int n_generators, int max_degree) {
  const std::size_t depth = static_cast<std::size_t>(max_degree / 2);
  const auto basis = words_up_to(depth, n_generators);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  std::vector<Matrix> xs(static_cast<std::size_t>(n_generators), Matrix::Zero(dim, dim));
  for (const Word& w : basis) {
    if (w.size() == depth) continue;
    for (int k = 1; k <= n_generators; ++k) {
      const auto from = static_cast<Eigen::Index>(global_index(w, n_generators));
      const auto to = static_cast<Eigen::Index>(global_index(prepend(k, w), n_generators));
      xs[static_cast<std::size_t>(k - 1)](to, from) = 1.0;  // creation
      xs[static_cast<std::size_t>(k - 1)](from, to) = 1.0;  // annihilation
    }
  }
  Vector vac = Vector::Zero(dim);
  vac(0) = 1.0;
  return from_representation(xs, vac, max_degree);
}

}  // namespace ncop

#endif  // NCOP_FUNCTIONAL_HPP
