#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/linalg.hpp"
#include "eigshift/shift.hpp"

namespace eigshift {

/// dim ker (M - lambda I)^j for j = 1, 2, ... until the sequence stops growing.
/// Empty when lambda is not an eigenvalue.
template <typename T>
struct BasicWeyrProfile {
  T lambda;
  std::vector<std::size_t> null_dims;

  /// w_j = null_dims[j] - null_dims[j-1]: the number of blocks of size >= j.
  std::vector<std::size_t> increments() const {
    std::vector<std::size_t> w;
    std::size_t prev = 0;
    for (auto d : null_dims) {
      w.push_back(d - prev);
      prev = d;
    }
    return w;
  }

  /// Conjugate partition of the increments, descending.
  std::vector<std::size_t> block_sizes() const {
    const auto w = increments();
    std::vector<std::size_t> sizes;
    for (std::size_t s = w.size(); s >= 1; --s) {
      const std::size_t at_least = w[s - 1];
      const std::size_t longer = s < w.size() ? w[s] : 0;
      for (std::size_t c = longer; c < at_least; ++c) sizes.push_back(s);
    }
    return sizes;
  }
};
using WeyrProfile = BasicWeyrProfile<Scalar>;

template <typename T>
BasicWeyrProfile<T> weyr_profile(const DenseMatrix<T>& m, const T& lambda) {
  if (!m.is_square()) throw Error(ErrorKind::dimension_mismatch, "weyr_profile on " + m.shape());
  const std::size_t n = m.rows();
  BasicWeyrProfile<T> out{lambda, {}};
  const DenseMatrix<T> d = shifted(m, lambda);
  DenseMatrix<T> p = d;
  std::size_t prev = 0, prev_step = n + 1;
  while (true) {
    const std::size_t nd = n - exact_rank(p);
    if (nd == prev) break;
    if (nd - prev > prev_step)
      throw Error(ErrorKind::internal, "Weyr increments increased at power " + std::to_string(out.null_dims.size() + 1));
    prev_step = nd - prev;
    out.null_dims.push_back(nd);
    prev = nd;
    if (nd == n) break;
    p = p * d;
  }
  return out;
}

/// Full Segre characteristic from rank sequences, for a caller who knows the
/// spectrum. Duplicate eigenvalues in the list are ignored.
template <typename T>
SegreCharacteristic oracle_segre(const DenseMatrix<T>& m, const std::vector<T>& eigenvalues) {
  std::vector<T> seen;
  std::vector<SegreBlock> blocks;
  for (const auto& lambda : eigenvalues) {
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == lambda;
    if (dup) continue;
    seen.push_back(lambda);
    for (auto size : weyr_profile(m, lambda).block_sizes()) blocks.push_back(SegreBlock{lambda, size});
  }
  SegreCharacteristic segre(std::move(blocks));
  if (segre.total_size() != m.rows())
    throw Error(ErrorKind::missing_eigenvalue, "block sizes sum to " + std::to_string(segre.total_size()) +
                                                   ", matrix has order " + std::to_string(m.rows()));
  return segre.canonical();
}

/// Jordan chains for lambda, one per block, longest first. Each cycle lists
/// the eigenvector first: (M - lambda I) c[0] = 0, (M - lambda I) c[j] = c[j-1].
template <typename T>
std::vector<std::vector<DenseVector<T>>> jordan_cycles(const DenseMatrix<T>& m, const T& lambda) {
  const std::size_t n = m.rows();
  const DenseMatrix<T> d = shifted(m, lambda);
  // kernels[j] = basis of ker d^j, j = 0..h
  std::vector<std::vector<DenseVector<T>>> kernels(1);
  DenseMatrix<T> p = d;
  while (true) {
    auto basis = null_space_basis(p);
    if (basis.size() == kernels.back().size()) break;
    kernels.push_back(std::move(basis));
    if (kernels.back().size() == n) break;
    p = p * d;
  }
  const std::size_t h = kernels.size() - 1;
  struct Top {
    DenseVector<T> x;
    std::size_t level;
  };
  std::vector<Top> tops;
  for (std::size_t j = h; j >= 1; --j) {
    std::vector<DenseVector<T>> span = kernels[j - 1];
    for (const auto& t : tops) {
      DenseVector<T> y = t.x;
      for (std::size_t s = j; s < t.level; ++s) y = d * y;
      span.push_back(std::move(y));
    }
    for (const auto& b : kernels[j]) {
      std::vector<DenseVector<T>> trial = span;
      trial.push_back(b);
      if (!independent(trial, n)) continue;
      span = std::move(trial);
      tops.push_back(Top{b, j});
    }
  }
  std::vector<std::vector<DenseVector<T>>> cycles;
  for (const auto& t : tops) {
    std::vector<DenseVector<T>> c(t.level);
    c[t.level - 1] = t.x;
    for (std::size_t s = t.level - 1; s >= 1; --s) c[s - 1] = d * c[s];
    cycles.push_back(std::move(c));
  }
  return cycles;
}

struct CycleCheck {
  bool recurrences = true;  // every cycle is a Jordan chain
  bool independent = true;  // all vectors together are independent
  std::size_t total = 0;    // number of vectors
  std::string detail;

  bool ok(std::size_t expected_dim) const { return recurrences && independent && total == expected_dim; }
};

template <typename T>
CycleCheck verify_cycles(const DenseMatrix<T>& m, const T& lambda, const std::vector<std::vector<DenseVector<T>>>& cycles) {
  CycleCheck out;
  const DenseMatrix<T> d = shifted(m, lambda);
  std::vector<DenseVector<T>> all;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const auto& cyc = cycles[c];
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      if (cyc[j].dim() != m.rows()) {
        out.recurrences = false;
        out.detail = "cycle " + std::to_string(c + 1) + " has a vector of the wrong dimension";
        return out;
      }
      DenseVector<T> img = d * cyc[j];
      if (j > 0) img -= cyc[j - 1];
      if (!img.is_zero() && out.recurrences) {
        out.recurrences = false;
        out.detail = "cycle " + std::to_string(c + 1) + " breaks its recurrence at position " + std::to_string(j + 1);
      }
      all.push_back(cyc[j]);
    }
  }
  out.total = all.size();
  out.independent = independent(all, m.rows());
  if (!out.independent && out.detail.empty()) out.detail = "cycle vectors are linearly dependent";
  return out;
}

/// Spectrum replacement: the multiset of eigenvalues of Â is that of A with
/// m copies of lambda0 replaced by lambda1.
inline bool spectrum_multiset_check(const Matrix& a, const Matrix& a_hat, const Scalar& lambda0,
                                    const Scalar& lambda1, std::size_t m) {
  return charpoly_ratio_check(a, a_hat, lambda0, lambda1, m);
}

}  // namespace eigshift
