#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace orbitforge {

/// Subset of {1..n} as a bitmask; bit (i-1) stands for index i.
using IndexMask = std::uint32_t;

/// Sorted 1-based indices.
using IndexSet = std::vector<int>;

inline IndexMask to_mask(const IndexSet& indices) {
  IndexMask mask = 0;
  for (int i : indices) {
    if (i < 1 || i > 31) throw DomainError("index " + std::to_string(i) + " out of range");
    const IndexMask bit = IndexMask{1} << (i - 1);
    if (mask & bit) throw DomainError("repeated index " + std::to_string(i) + " in index set");
    mask |= bit;
  }
  return mask;
}

inline IndexSet to_indices(IndexMask mask) {
  IndexSet out;
  while (mask) {
    out.push_back(std::countr_zero(mask) + 1);
    mask &= mask - 1;
  }
  return out;
}

inline int popcount(IndexMask mask) { return std::popcount(mask); }

/// Size-k subsets of {1..n} in lexicographic order of their sorted index lists.
inline std::vector<IndexMask> subsets_of_size(int n, int k) {
  std::vector<IndexMask> out;
  if (k < 0 || k > n) return out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    IndexMask mask = 0;
    for (int p : pick) mask |= IndexMask{1} << p;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline IndexMask full_mask(int n) { return n >= 32 ? ~IndexMask{0} : (IndexMask{1} << n) - 1; }

inline std::string format_indices(IndexMask mask) {
  std::string out = "{";
  bool first = true;
  for (int i : to_indices(mask)) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(i);
  }
  return out + "}";
}

}  // namespace orbitforge
