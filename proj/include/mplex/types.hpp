#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mplex {

using VertexId = std::uint32_t;
using LayerId = std::uint32_t;
using VertexPair = std::pair<VertexId, VertexId>;

// Path lengths live in the extended reals: +inf means "no path" and
// propagates through addition while losing to any finite value under min.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance used when two path lengths obtained along different
// summation orders are compared for a tie.
inline constexpr double kTieTolerance = 1e-12;

inline bool is_finite_length(double x) { return x < kInfinity; }

inline bool same_length(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

/// Input that violates the multiplex model (bad index, self-loop, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerical method that failed to deliver its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cost charged for each change of layer between consecutive intra-layer
/// edges of a multiplex path.
class SwitchCost {
 public:
  constexpr SwitchCost() = default;
  explicit SwitchCost(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw std::invalid_argument("switch cost must be a finite nonnegative number, got " +
                                  std::to_string(gamma));
    }
  }

  constexpr double value() const { return gamma_; }
  constexpr bool is_zero() const { return gamma_ == 0.0; }

  friend constexpr bool operator==(SwitchCost, SwitchCost) = default;

 private:
  double gamma_ = 0.0;
};

/// Dense row-major N x N matrix.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), values_(n * n, fill) {}

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

  std::span<T> row(std::size_t i) { return {values_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }

  const std::vector<T>& values() const { return values_; }

  SquareMatrix transposed() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> values_;
};

using LengthMatrix = SquareMatrix<double>;

}  // namespace mplex
