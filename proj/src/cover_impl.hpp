#pragma once

// Greedy packing and greedy set cover over an abstract finite metric space
// given by a distance callback dist(i, j).

#include <cstddef>
#include <vector>

namespace onebit::detail {

/// Visits candidates in `order`; keeps one when it is farther than `radius`
/// from every point kept so far. Returns kept indices in insertion order.
template <class Dist>
std::vector<std::size_t> greedy_pack(const std::vector<std::size_t>& order, double radius, Dist&& dist) {
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    bool separated = true;
    for (std::size_t c : kept) {
      if (!(dist(i, c) > radius)) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(i);
  }
  return kept;
}

/// Classic greedy set cover with closed balls of `radius` centered at the
/// members themselves: repeatedly take the center covering the most
/// still-uncovered members (lowest index on ties).
template <class Dist>
std::size_t greedy_set_cover(std::size_t count, double radius, Dist&& dist) {
  if (count == 0) return 0;
  std::vector<std::vector<std::size_t>> nbrs(count);
  for (std::size_t i = 0; i < count; ++i) {
    nbrs[i].push_back(i);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (dist(i, j) <= radius) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
      }
    }
  }
  std::vector<std::size_t> gain(count);
  for (std::size_t i = 0; i < count; ++i) gain[i] = nbrs[i].size();
  std::vector<bool> covered(count, false);
  std::size_t remaining = count;
  std::size_t centers = 0;
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (gain[i] > gain[best]) best = i;
    }
    ++centers;
    for (std::size_t j : nbrs[best]) {
      if (covered[j]) continue;
      covered[j] = true;
      --remaining;
      for (std::size_t l : nbrs[j]) --gain[l];
    }
  }
  return centers;
}

}  // namespace onebit::detail
