#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "etclosure/errors.hpp"
#include "etclosure/multi_index.hpp"
#include "etclosure/rational.hpp"

namespace etclosure {

// g = diag(-1, 1, 1, 1); identical with upper and lower indices.
inline constexpr std::array<int, 4> kMetric{-1, 1, 1, 1};

enum class Variance { contravariant, covariant };

template <class T>
struct FourVector {
  std::array<T, 4> c{};
  Variance variance = Variance::contravariant;

  static FourVector upper(T a, T b, T d, T e) { return {{a, b, d, e}, Variance::contravariant}; }
  static FourVector lower(T a, T b, T d, T e) { return {{a, b, d, e}, Variance::covariant}; }

  const T& operator[](int a) const { return c[static_cast<std::size_t>(a)]; }
  T& operator[](int a) { return c[static_cast<std::size_t>(a)]; }

  FourVector flipped() const {
    FourVector r = *this;
    for (int a = 0; a < 4; ++a) r[a] = c[static_cast<std::size_t>(a)] * T(kMetric[static_cast<std::size_t>(a)]);
    r.variance = variance == Variance::contravariant ? Variance::covariant : Variance::contravariant;
    return r;
  }
  FourVector lowered() const { return variance == Variance::covariant ? *this : flipped(); }
  FourVector raised() const { return variance == Variance::contravariant ? *this : flipped(); }

  // mu^a mu_a
  T norm_sq() const {
    T s = T(0);
    for (int a = 0; a < 4; ++a) s += T(kMetric[static_cast<std::size_t>(a)]) * c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(a)];
    return s;
  }
};

using Vec4 = FourVector<double>;
using ExactVec4 = FourVector<Rational>;

// Totally symmetric rank-n tensor on canonical sorted multi-indices.
template <class T>
class SymTensor {
 public:
  SymTensor() : SymTensor(0) {}
  explicit SymTensor(int rank)
      : rank_(rank), data_(MultiIndexTable::get(rank).size(), T(0)) {}

  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  const MultiIndexTable& table() const { return MultiIndexTable::get(rank_); }

  T& at_counts(const Counts& c) { return data_[table().position(c)]; }
  const T& at_counts(const Counts& c) const { return data_[table().position(c)]; }
  // any index order
  const T& operator()(std::span<const int> idx) const {
    check_len(idx.size());
    return at_counts(counts_of(idx));
  }
  const T& operator()(std::initializer_list<int> idx) const {
    return (*this)(std::span<const int>(idx.begin(), idx.size()));
  }
  T& at(std::initializer_list<int> idx) {
    check_len(idx.size());
    return at_counts(counts_of(std::span<const int>(idx.begin(), idx.size())));
  }

  T& operator[](std::size_t pos) { return data_[pos]; }
  const T& operator[](std::size_t pos) const { return data_[pos]; }
  const std::vector<T>& data() const { return data_; }

  SymTensor& operator+=(const SymTensor& o) {
    same_rank(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  SymTensor& operator-=(const SymTensor& o) {
    same_rank(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SymTensor& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, const T& s) { return a *= s; }
  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.rank_ == b.rank_ && a.data_ == b.data_;
  }

 private:
  void check_len(std::size_t n) const {
    if (static_cast<int>(n) != rank_) throw DomainError("index count does not match tensor rank");
  }
  void same_rank(const SymTensor& o) const {
    if (o.rank_ != rank_) throw DomainError("rank mismatch");
  }

  int rank_;
  std::vector<T> data_;
};

using DenseSymTensor = SymTensor<double>;
using ExactSymTensor = SymTensor<Rational>;

// Full 4^n component array; (i1..in) sits at sum_k i_k 4^(k-1).
template <class T>
struct RawTensor {
  int rank = 0;
  std::vector<T> comps;

  explicit RawTensor(int n = 0) : rank(n), comps(static_cast<std::size_t>(1) << (2 * n), T(0)) {}
};

namespace detail {

template <class T>
T from_integer(const Integer& z) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(z);
  } else {
    return z.get_d();
  }
}

inline Counts add_counts(Counts c, const Counts& d) {
  for (int a = 0; a < 4; ++a) c[static_cast<std::size_t>(a)] += d[static_cast<std::size_t>(a)];
  return c;
}

}  // namespace detail

// Weight-one average over index permutations.
template <class T>
SymTensor<T> symmetrize(const RawTensor<T>& raw) {
  const int n = raw.rank;
  SymTensor<T> out(n);
  std::vector<long> hits(out.size(), 0);
  for (std::size_t flat = 0; flat < raw.comps.size(); ++flat) {
    std::size_t f = flat;
    Counts c{0, 0, 0, 0};
    for (int k = 0; k < n; ++k) {
      ++c[f & 3u];
      f >>= 2;
    }
    std::size_t pos = out.table().position(c);
    out[pos] += raw.comps[flat];
    ++hits[pos];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= T(hits[i]);
  return out;
}

// Per canonical entry of Y^n_s: terms weight * prod_a mu^a^{exps[a]}.
struct GmuBasisTable {
  struct Term {
    Rational weight;
    double weight_d;
    std::array<int, 4> exps;
  };
  std::vector<std::vector<Term>> entries;
};

const GmuBasisTable& gmu_basis_table(int n, int s);

// Y^n_s = g^(.. g^.. mu^.. mu^..), s metrics and n-2s copies of mu; the
// components of mu are used as given.
template <class T>
SymTensor<T> gmu_basis(int n, int s, const FourVector<T>& mu) {
  const GmuBasisTable& tab = gmu_basis_table(n, s);
  SymTensor<T> out(n);
  std::array<std::vector<T>, 4> powers;
  for (int a = 0; a < 4; ++a) {
    auto& pw = powers[static_cast<std::size_t>(a)];
    pw.assign(static_cast<std::size_t>(n + 1), T(1));
    for (int k = 1; k <= n; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * mu[a];
  }
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    T total = T(0);
    for (const auto& term : tab.entries[pos]) {
      T v = T(1);
      for (int a = 0; a < 4; ++a) {
        const int e = term.exps[static_cast<std::size_t>(a)];
        if (e > 0) v *= powers[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)];
      }
      if constexpr (std::is_same_v<T, Rational>) {
        total += term.weight * v;
      } else {
        total += term.weight_d * v;
      }
    }
    out[pos] = total;
  }
  return out;
}

// T^{.. c d} g_{cd}
template <class T>
SymTensor<T> trace_pair(const SymTensor<T>& t) {
  if (t.rank() < 2) throw DomainError("trace_pair needs rank >= 2");
  SymTensor<T> out(t.rank() - 2);
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const Counts& c = out.table().counts(pos);
    T sum = T(0);
    for (int a = 0; a < 4; ++a) {
      Counts d = c;
      d[static_cast<std::size_t>(a)] += 2;
      if (kMetric[static_cast<std::size_t>(a)] < 0) {
        sum -= t.at_counts(d);
      } else {
        sum += t.at_counts(d);
      }
    }
    out[pos] = sum;
  }
  return out;
}

// Contract the last slot with a covariant vector (contravariant input is lowered).
template <class T>
SymTensor<T> contract_mu(const SymTensor<T>& t, const FourVector<T>& mu) {
  if (t.rank() < 1) throw DomainError("contract_mu needs rank >= 1");
  const FourVector<T> low = mu.lowered();
  SymTensor<T> out(t.rank() - 1);
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const Counts& c = out.table().counts(pos);
    T sum = T(0);
    for (int a = 0; a < 4; ++a) {
      Counts d = c;
      d[static_cast<std::size_t>(a)] += 1;
      sum += t.at_counts(d) * low[a];
    }
    out[pos] = sum;
  }
  return out;
}

// R^{c} = T^{c d1..dm} S_{d1..dm}: the last m slots of t against the covariant
// components of s.
template <class T>
SymTensor<T> contract(const SymTensor<T>& t, const SymTensor<T>& s) {
  const int m = s.rank();
  if (m > t.rank()) throw DomainError("contract: second tensor has higher rank");
  SymTensor<T> out(t.rank() - m);
  const MultiIndexTable& st = s.table();
  std::vector<T> weights(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) weights[j] = s[j] * T(static_cast<long>(multiplicity(st.counts(j))));
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const Counts& c = out.table().counts(pos);
    T sum = T(0);
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (weights[j] == T(0)) continue;
      sum += t.at_counts(detail::add_counts(c, st.counts(j))) * weights[j];
    }
    out[pos] = sum;
  }
  return out;
}

template <class T>
SymTensor<T> metric_tensor() {
  SymTensor<T> g(2);
  for (int a = 0; a < 4; ++a) {
    Counts c{0, 0, 0, 0};
    c[static_cast<std::size_t>(a)] = 2;
    g.at_counts(c) = T(kMetric[static_cast<std::size_t>(a)]);
  }
  return g;
}

template <class T>
SymTensor<T> vector_tensor(const FourVector<T>& v) {
  SymTensor<T> t(1);
  for (int a = 0; a < 4; ++a) t.at({a}) = v[a];
  return t;
}

template <class T>
T max_abs(const SymTensor<T>& t) {
  T m = T(0);
  for (const auto& x : t.data()) {
    T a = x < T(0) ? T(-x) : x;
    if (a > m) m = a;
  }
  return m;
}

template <class T>
SymTensor<double> to_double(const SymTensor<T>& t) {
  SymTensor<double> out(t.rank());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if constexpr (std::is_same_v<T, Rational>) {
      out[i] = t[i].get_d();
    } else {
      out[i] = static_cast<double>(t[i]);
    }
  }
  return out;
}

}  // namespace etclosure
