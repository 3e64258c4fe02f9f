#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "eigshift/jordan.hpp"
#include "eigshift/matrix.hpp"

namespace eigshift {

/// Random generators for tests and the self-test subcommand. Everything is
/// driven by an explicit engine so runs are reproducible from a seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  /// p/q with |p| <= bound, 1 <= q <= den_bound.
  Scalar rational(long bound = 5, long den_bound = 4) {
    return Scalar::ratio(integer(-bound, bound), integer(1, den_bound));
  }
  Scalar nonzero_rational(long bound = 5, long den_bound = 4) {
    Scalar s;
    do s = rational(bound, den_bound);
    while (s.is_zero());
    return s;
  }
  Scalar gaussian_rational(long bound = 3, long den_bound = 3) {
    return Scalar(rational(bound, den_bound).real(), rational(bound, den_bound).real());
  }
  Scalar small_integer(long bound) { return Scalar(integer(-bound, bound)); }

  Matrix integer_matrix(std::size_t rows, std::size_t cols, long bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_integer(bound);
    return m;
  }

  Matrix rational_matrix(std::size_t rows, std::size_t cols, long bound = 3, long den_bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(bound, den_bound);
    return m;
  }

  /// Unimodular matrix over the Gaussian integers: a product of elementary
  /// row additions (unit multipliers), swaps and unit scalings, with every
  /// real and imaginary part kept inside [-bound, bound].
  Matrix unimodular(std::size_t n, long bound = 3, bool gaussian = false, std::size_t steps = 0) {
    Matrix m = Matrix::identity(n);
    if (n < 2) {
      if (n == 1 && coin()) m(0, 0) = Scalar(-1);
      return m;
    }
    if (steps == 0) steps = 4 * n;
    const Scalar units[] = {Scalar(1), Scalar(-1), Scalar::imag_unit(), -Scalar::imag_unit()};
    std::size_t accepted = 0;
    for (std::size_t attempt = 0; accepted < steps && attempt < 40 * steps; ++attempt) {
      std::size_t i = index(0, n - 1);
      std::size_t j = index(0, n - 2);
      if (j >= i) ++j;
      const Scalar& c = units[gaussian ? index(0, 3) : index(0, 1)];
      Matrix next = m;
      for (std::size_t col = 0; col < n; ++col) next(i, col) += c * m(j, col);
      if (!within(next, bound)) continue;
      m = std::move(next);
      ++accepted;
    }
    // A random swap and unit scaling keep the determinant a unit.
    std::size_t i = index(0, n - 1), j = index(0, n - 1);
    if (i != j)
      for (std::size_t col = 0; col < n; ++col) std::swap(m(i, col), m(j, col));
    const Scalar& s = units[gaussian ? index(0, 3) : index(0, 1)];
    for (std::size_t col = 0; col < n; ++col) m(0, col) *= s;
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  static bool within(const Matrix& m, long bound) {
    const Rational b(bound);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (abs(m(i, j).real()) > b || abs(m(i, j).imag()) > b) return false;
      }
    return true;
  }

  std::mt19937_64 engine_;
};

}  // namespace eigshift
