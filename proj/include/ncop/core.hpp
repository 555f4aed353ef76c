#ifndef NCOP_CORE_HPP
#define NCOP_CORE_HPP

// Shared numeric aliases and the exception hierarchy used across ncop.

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ncop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment or kernel value needed by a computation is not stored.
class DataIncomplete : public Error {
 public:
  explicit DataIncomplete(std::string word)
      : Error("missing moment data for word '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

/// Malformed input: wrong shapes, out-of-range letters, broken invariants of
/// user-supplied data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not, or a proved identity failed to
/// hold numerically.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A truncated series could not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A point is not inside the region an operation requires.
class RegionError : public Error {
 public:
  RegionError(const std::string& what, double lambda_min)
      : Error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

/// Largest entry modulus; zero for empty matrices.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Spectral norm (largest singular value).
inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// Smallest eigenvalue of the Hermitian part of `m`.
inline double hermitian_min_eig(const Matrix& m) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Largest eigenvalue of the Hermitian part of `m`.
inline double hermitian_max_eig(const Matrix& m) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

}  // namespace ncop

#endif  // NCOP_CORE_HPP
