#include "etclosure/multi_index.hpp"

#include <string>

#include "etclosure/errors.hpp"

namespace etclosure {

MultiIndexTable::MultiIndexTable(int rank) : rank_(rank) {
  lookup_.assign(25 * 25 * 25, -1);
  // sorted sequences i1 <= ... <= in, lexicographic; equivalently c0 descending
  for (int c0 = rank; c0 >= 0; --c0) {
    for (int c1 = rank - c0; c1 >= 0; --c1) {
      for (int c2 = rank - c0 - c1; c2 >= 0; --c2) {
        Counts c{c0, c1, c2, rank - c0 - c1 - c2};
        lookup_[key(c)] = static_cast<int>(counts_.size());
        counts_.push_back(c);
      }
    }
  }
}

const MultiIndexTable& MultiIndexTable::get(int rank) {
  if (rank < 0 || rank > kMaxRank) {
    throw DomainError("tensor rank " + std::to_string(rank) + " outside [0, " +
                      std::to_string(kMaxRank) + "]");
  }
  static const std::vector<MultiIndexTable> tables = [] {
    std::vector<MultiIndexTable> t;
    for (int r = 0; r <= kMaxRank; ++r) t.push_back(MultiIndexTable(r));
    return t;
  }();
  return tables[static_cast<std::size_t>(rank)];
}

std::size_t MultiIndexTable::position(const Counts& c) const {
  int pos = lookup_[key(c)];
  if (pos < 0 || c[0] + c[1] + c[2] + c[3] != rank_) throw DomainError("multi-index does not match rank");
  return static_cast<std::size_t>(pos);
}

std::vector<int> MultiIndexTable::sorted_indices(std::size_t pos) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(rank_));
  const Counts& c = counts_[pos];
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < c[a]; ++k) out.push_back(a);
  return out;
}

Counts counts_of(std::span<const int> indices) {
  Counts c{0, 0, 0, 0};
  for (int i : indices) {
    if (i < 0 || i > 3) throw DomainError("spacetime index out of range");
    ++c[i];
  }
  return c;
}

long long multiplicity(const Counts& c) {
  long long num = 1;
  int n = 0;
  for (int a = 0; a < 4; ++a) {
    for (int k = 1; k <= c[a]; ++k) {
      ++n;
      num = num * n / k;  // stays integral: multinomial built incrementally
    }
  }
  return num;
}

double multiplicity_d(const Counts& c) { return static_cast<double>(multiplicity(c)); }

}  // namespace etclosure
