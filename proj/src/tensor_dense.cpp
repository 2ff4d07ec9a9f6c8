#include "etclosure/tensor_dense.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace etclosure {

namespace {

GmuBasisTable build_table(int n, int s) {
  const MultiIndexTable& idx = MultiIndexTable::get(n);
  GmuBasisTable tab;
  tab.entries.resize(idx.size());
  // 2^s s! (n-2s)! / n! times, per axis, c!/(2^p p! (c-2p)!) (g^aa)^p
  Rational pre(Integer(1) << static_cast<unsigned>(s));
  pre *= frac(factorial(s) * factorial(n - 2 * s), factorial(n));
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    const Counts& c = idx.counts(pos);
    for (int p0 = 0; p0 <= s && 2 * p0 <= c[0]; ++p0) {
      for (int p1 = 0; p0 + p1 <= s && 2 * p1 <= c[1]; ++p1) {
        for (int p2 = 0; p0 + p1 + p2 <= s && 2 * p2 <= c[2]; ++p2) {
          const int p3 = s - p0 - p1 - p2;
          if (2 * p3 > c[3]) continue;
          const std::array<int, 4> p{p0, p1, p2, p3};
          Rational w = pre;
          GmuBasisTable::Term term;
          for (std::size_t a = 0; a < 4; ++a) {
            w *= frac(factorial(c[a]), (Integer(1) << static_cast<unsigned>(p[a])) * factorial(p[a]) * factorial(c[a] - 2 * p[a]));
            if (kMetric[a] < 0 && p[a] % 2 == 1) w = -w;
            term.exps[a] = c[a] - 2 * p[a];
          }
          term.weight = w;
          term.weight_d = w.get_d();
          tab.entries[pos].push_back(std::move(term));
        }
      }
    }
  }
  return tab;
}

}  // namespace

const GmuBasisTable& gmu_basis_table(int n, int s) {
  if (n < 0 || s < 0 || 2 * s > n) {
    throw DomainError("gmu_basis: need 0 <= s <= n/2 (n=" + std::to_string(n) + ", s=" + std::to_string(s) + ")");
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<GmuBasisTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, s}];
  if (!slot) slot = std::make_unique<GmuBasisTable>(build_table(n, s));
  return *slot;
}

}  // namespace etclosure
