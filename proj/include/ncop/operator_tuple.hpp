#ifndef NCOP_OPERATOR_TUPLE_HPP
#define NCOP_OPERATOR_TUPLE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncop/core.hpp"
#include "ncop/words.hpp"

namespace ncop {

enum class Region { ball, siegel, unchecked };

inline std::string to_string(Region r) {
  switch (r) {
    case Region::ball: return "ball";
    case Region::siegel: return "siegel";
    case Region::unchecked: return "unchecked";
  }
  return "?";
}

inline Region parse_region(const std::string& s) {
  if (s == "ball") return Region::ball;
  if (s == "siegel") return Region::siegel;
  if (s == "unchecked") return Region::unchecked;
  throw InvalidInput("unknown region '" + s + "'");
}

/// N square matrices of a common size d, read as a point of the
/// noncommutative ball or Siegel domain over ℂ^d.
class OperatorTuple {
 public:
  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<Matrix> mats, Region region = Region::unchecked)
      : mats_(std::move(mats)), region_(region) {
    if (mats_.empty()) throw InvalidInput("an operator tuple needs at least one matrix");
    const auto d = mats_.front().rows();
    for (std::size_t k = 0; k < mats_.size(); ++k)
      if (mats_[k].rows() != d || mats_[k].cols() != d)
        throw InvalidInput("matrix " + std::to_string(k + 1) + " of the tuple is not " +
                           std::to_string(d) + "x" + std::to_string(d));
  }

  static OperatorTuple zero(int n, Eigen::Index d, Region region = Region::ball) {
    return OperatorTuple(std::vector<Matrix>(static_cast<std::size_t>(n), Matrix::Zero(d, d)),
                         region);
  }

  int n() const noexcept { return static_cast<int>(mats_.size()); }
  Eigen::Index dim() const { return mats_.empty() ? 0 : mats_.front().rows(); }
  Region region() const noexcept { return region_; }
  void set_region(Region r) noexcept { region_ = r; }

  /// 1-based access, matching the letters of words.
  const Matrix& operator[](int k) const { return mats_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<Matrix>& matrices() const noexcept { return mats_; }

  /// Z_σ = Z_{i1}⋯Z_{ik}; Z_∅ = I.
  Matrix word(const Word& w) const {
    check_letters(w, n());
    Matrix r = Matrix::Identity(dim(), dim());
    for (int l : w.letters()) r = r * (*this)[l];
    return r;
  }

 private:
  std::vector<Matrix> mats_;
  Region region_ = Region::unchecked;
};

/// Z_τ for every |τ| ≤ level, indexed by global_index.
inline std::vector<Matrix> monomial_table(const OperatorTuple& z, std::size_t level) {
  const int n = z.n();
  const std::size_t count = words_up_to_count(level, n);
  std::vector<Matrix> out;
  out.reserve(count);
  out.push_back(Matrix::Identity(z.dim(), z.dim()));
  for (std::size_t i = 1; i < count; ++i) {
    const Word w = word_at(i, n);
    out.push_back(z[w.front()] * out[global_index(w.tail(), n)]);
  }
  return out;
}

}  // namespace ncop

#endif  // NCOP_OPERATOR_TUPLE_HPP
