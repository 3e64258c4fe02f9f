#pragma once

#include <vector>

#include "eigshift/jordan.hpp"
#include "eigshift/random.hpp"

namespace testing_helpers {

using namespace eigshift;

inline Scalar q(long p, long d = 1) { return Scalar::ratio(p, d); }

inline Vector e(std::size_t n, std::size_t i) { return Vector::unit(n, i - 1); }  // one-based

inline SegreCharacteristic segre(std::initializer_list<std::pair<Scalar, std::size_t>> blocks) {
  std::vector<SegreBlock> out;
  for (const auto& [l, s] : blocks) out.push_back({l, s});
  return SegreCharacteristic(out);
}

inline SegreCharacteristic segre_from_sizes(const Scalar& lambda, const std::vector<std::size_t>& sizes) {
  std::vector<SegreBlock> out;
  for (auto s : sizes) out.push_back({lambda, s});
  return SegreCharacteristic(out);
}

/// Random structure: 1..3 distinct eigenvalues, block sizes up to max_block, total up to max_total.
inline SegreCharacteristic random_segre(RandomSource& rng, std::size_t max_block, std::size_t max_total) {
  std::vector<Scalar> values;
  const std::size_t distinct = rng.index(1, 3);
  while (values.size() < distinct) {
    Scalar s = rng.gaussian_rational(3, 2);
    bool dup = false;
    for (const auto& v : values) dup = dup || v == s;
    if (!dup) values.push_back(s);
  }
  std::vector<SegreBlock> blocks;
  std::size_t total = 0;
  do {
    const std::size_t size = rng.index(1, std::min(max_block, max_total - total));
    blocks.push_back({values[rng.index(0, values.size() - 1)], size});
    total += size;
  } while (total < max_total && rng.coin(0.6));
  return SegreCharacteristic(blocks);
}

}  // namespace testing_helpers
