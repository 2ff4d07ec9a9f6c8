#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace etclosure {

// Occupation numbers (c0, c1, c2, c3) of a sorted multi-index.
using Counts = std::array<int, 4>;

inline constexpr int kMaxRank = 24;

// Canonical entries of one rank, in lexicographic order of sorted indices.
class MultiIndexTable {
 public:
  static const MultiIndexTable& get(int rank);

  int rank() const { return rank_; }
  std::size_t size() const { return counts_.size(); }
  const Counts& counts(std::size_t pos) const { return counts_[pos]; }
  std::size_t position(const Counts& c) const;
  std::vector<int> sorted_indices(std::size_t pos) const;

 private:
  explicit MultiIndexTable(int rank);
  static int key(const Counts& c) { return c[0] + 25 * (c[1] + 25 * c[2]); }

  int rank_;
  std::vector<Counts> counts_;
  std::vector<int> lookup_;
};

Counts counts_of(std::span<const int> indices);

// n! / prod c_a!: number of distinct orderings of a multi-index.
double multiplicity_d(const Counts& c);
long long multiplicity(const Counts& c);

}  // namespace etclosure
