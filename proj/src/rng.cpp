#include "lcp/rng.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace lcp {

std::vector<std::size_t> ShuffledIndices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(idx[i - 1], idx[rng.Below(i)]);
  }
  return idx;
}

std::vector<std::size_t> SampleWithoutReplacement(std::size_t n, std::size_t k, Rng& rng) {
  k = std::min(k, n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // partial Fisher-Yates: the first k slots end up holding the sample
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.Below(n - i)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace lcp
