#include "etclosure/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "etclosure/equilibrium.hpp"
#include "etclosure/errors.hpp"
#include "etclosure/moments.hpp"
#include "etclosure/oracle.hpp"
#include "etclosure/parallel.hpp"

namespace etclosure {

namespace {

// size of an exact residual: largest coefficient, 0 iff identically zero
double residual_size(const ScalarExpr& e) {
  double m = 0.0;
  for (const auto& [key, c] : e.terms()) m = std::max(m, std::fabs(to_double(c)));
  return m;
}

double residual_size(const std::vector<ScalarExpr>& es) {
  double m = 0.0;
  for (const auto& e : es) m = std::max(m, residual_size(e));
  return m;
}

double residual_size(const FFamilyElement& a, const FFamilyElement& b) {
  if (a.rank() != b.rank()) return INFINITY;
  return residual_size((a - b).coeffs());
}

// Collects case outcomes from worker threads.
class Tally {
 public:
  Tally(std::string name, std::uint64_t seed) { r_.suite = std::move(name), r_.seed = seed; }

  void record(double residual, bool pass, const std::string& what) {
    std::lock_guard<std::mutex> lock(m_);
    ++r_.cases;
    if (std::isnan(residual)) residual = INFINITY;
    r_.max_residual = std::max(r_.max_residual, residual);
    if (!pass) {
      ++r_.failures;
      r_.notes.push_back(what);
    }
  }
  void exact(double residual, const std::string& what) { record(residual, residual == 0.0, what); }

  // runs body(i); an exception counts as a failed case
  template <class Body>
  void cases(std::size_t n, Body&& body, const std::function<std::string(std::size_t)>& label) {
    parallel_for(n, [&](std::size_t i) {
      try {
        body(i);
      } catch (const std::exception& e) {
        record(INFINITY, false, label(i) + ": " + e.what());
      }
    });
  }

  SuiteReport take() {
    std::sort(r_.notes.begin(), r_.notes.end());
    return std::move(r_);
  }

 private:
  std::mutex m_;
  SuiteReport r_;
};

std::string hk(int h, int k) {
  std::ostringstream os;
  os << "(h,k)=(" << h << "," << k << ")";
  return os.str();
}

ClosureTensorSet closure_set(const VerifyOptions& opt, int extra = 0) {
  ClosureSpec spec = opt.spec;
  spec.h_max += extra;
  spec.k_max += extra;
  ClosureTensorSet set;
  try {
    set = build_closure_set(spec);
  } catch (const CapExceeded&) {
    set = build_closure_set(opt.spec);
  }
  if (opt.mutate != 0) mutate_closure_set(set, opt.mutate);
  return set;
}

std::vector<std::pair<int, int>> set_orders(const ClosureTensorSet& set) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [o, f] : set.tensors) out.push_back(o);
  return out;
}

SuiteReport characteristic_suite(const VerifyOptions& opt) {
  Tally t("characteristic", opt.seed);
  const auto set = closure_set(opt);
  const auto orders = set_orders(set);
  t.cases(orders.size(), [&](std::size_t i) {
    const auto [h, k] = orders[i];
    const auto rep = check_characteristic(set.at(h, k));
    t.exact(residual_size(rep.residuals), "characteristic " + hk(h, k));
  }, [&](std::size_t i) { return hk(orders[i].first, orders[i].second); });
  return t.take();
}

SuiteReport compatibility_suite(const VerifyOptions& opt) {
  Tally t("compatibility", opt.seed);
  const auto set = closure_set(opt, 1);
  std::vector<std::pair<int, int>> orders;
  for (const auto& [o, f] : set.tensors) {
    if (o.first <= opt.spec.h_max && o.second <= opt.spec.k_max) orders.push_back(o);
  }
  t.cases(orders.size(), [&](std::size_t i) {
    const auto [h, k] = orders[i];
    const auto rep = verify_compatibility(set, h, k);
    if (!rep.lambda_checked && !rep.mu_checked) return;
    t.exact(std::max(residual_size(rep.lambda_residual), residual_size(rep.mu_residual)), "compatibility " + hk(h, k));
  }, [&](std::size_t i) { return hk(orders[i].first, orders[i].second); });
  return t.take();
}

SuiteReport cross_route_suite(const VerifyOptions& opt) {
  Tally t("cross_route", opt.seed);
  const auto set = closure_set(opt);
  const auto orders = set_orders(set);
  const ClosureSpec& spec = opt.spec;
  t.cases(orders.size(), [&](std::size_t i) {
    const auto [h, k] = orders[i];
    if (spec.N == 1) {
      if (spec.M == 0) return;
      t.exact(residual_size(set.at(h, k), recursive_C_n1(spec, h)), "recursive N=1 route " + hk(h, k));
    } else {
      t.exact(residual_size(set.at(h, k), derive_C_from_E(spec, h, k)), "E-tensor route " + hk(h, k));
    }
  }, [&](std::size_t i) { return hk(orders[i].first, orders[i].second); });
  return t.take();
}

SuiteReport oracle_suite(const VerifyOptions& opt) {
  Tally t("oracle", opt.seed);
  constexpr std::size_t kCases = 24;
  t.cases(kCases, [&](std::size_t i) {
    oracle::Generator g(opt.seed + i);
    const int n = static_cast<int>(i % 6) + 1;
    const auto raw = g.raw_array<Rational>(n);
    RawTensor<Rational> fast_raw(n);
    // fast layout has the first index least significant
    for (std::size_t flat = 0; flat < raw.comps.size(); ++flat) {
      const auto idx = oracle::digits(flat, n);
      std::size_t pos = 0;
      for (int k = n - 1; k >= 0; --k) pos = pos * 4 + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
      fast_raw.comps[pos] = raw.comps[flat];
    }
    const auto sym = symmetrize(fast_raw);
    const auto bsym = oracle::brute_symmetrize(raw);
    t.exact(oracle::equal_exact(bsym, sym) ? 0.0 : 1.0, "symmetrize rank " + std::to_string(n));

    const ExactPoint p = g.exact_point();
    const auto reg = g.polynomial_registry(4);
    for (int s = 0; 2 * s <= n; ++s) {
      t.exact(oracle::equal_exact(oracle::brute_basis(n, s, p.mu), gmu_basis(n, s, p.mu)) ? 0.0 : 1.0,
              "basis n=" + std::to_string(n) + " s=" + std::to_string(s));
    }
    if (n >= 2) {
      t.exact(oracle::equal_exact(oracle::brute_trace(bsym), trace_pair(sym)) ? 0.0 : 1.0, "trace");
    }
    t.exact(oracle::equal_exact(oracle::brute_mu_contract(bsym, p.mu), contract_mu(sym, p.mu)) ? 0.0 : 1.0,
            "mu contraction");

    const FFamilyElement f = g.family_element(n, 4);
    const auto fast = realize_exact(f, p, reg);
    const auto brute = oracle::brute_realize(f, p, reg);
    t.exact(oracle::equal_exact(brute, fast) ? 0.0 : 1.0, "realize " + f.to_string());
    if (n >= 2) {
      t.exact(oracle::equal_exact(oracle::brute_trace(brute), realize_exact(trace(f), p, reg)) ? 0.0 : 1.0,
              "family trace " + f.to_string());
    }
  }, [](std::size_t i) { return "oracle case " + std::to_string(i); });
  return t.take();
}

SuiteReport roundtrip_suite(const VerifyOptions& opt) {
  Tally t("roundtrip", opt.seed);
  constexpr std::size_t kCases = 50;
  t.cases(kCases, [&](std::size_t i) {
    oracle::Generator g(opt.seed + 1000 + i);
    const int m = static_cast<int>(i % 5);
    const int r = 1 + static_cast<int>((i / 5) % 2);
    // leading gamma powers low enough that every lift ratio is regular
    ScalarExpr lead;
    std::uniform_int_distribution<int> gp(0, 3);
    lead += ScalarExpr::monomial(g.rational(5, 3) + 7, -2 * (m + 2 * r + 3 + gp(g.engine())), 0, Symbol{0, 0});
    const FFamilyElement f = FFamilyElement::from_leading(m, lead);
    std::vector<ScalarExpr> free;
    for (int j = 0; j < r; ++j) free.push_back(ScalarExpr::monomial(g.rational(4, 3), 0, j, Symbol{1 + j, 0}));
    const FFamilyElement back = trace(lift(f, r, free), r);
    t.exact(residual_size(back, f), "trace^r(lift(F, r)) rank " + std::to_string(m) + " r=" + std::to_string(r));
  }, [](std::size_t i) { return "lift case " + std::to_string(i); });

  // a ratio that passes through zero must raise, never return a value
  {
    bool raised = false;
    try {
      lift(FFamilyElement::from_leading(0, ScalarExpr::monomial(1, -4)), 2, {ScalarExpr(), ScalarExpr()});
    } catch (const SingularRatioError&) {
      raised = true;
    }
    t.record(raised ? 0.0 : 1.0, raised, "lift hypothesis violation did not raise");
  }

  const Rational msq = frac(3, 4);
  for (int M : {0, 2, 4, 6}) {
    for (int N : {1, 3, 5}) {
      oracle::Generator g(opt.seed + 77 + static_cast<std::uint64_t>(10 * M + N));
      const ExactPoint p = g.exact_point();
      const auto [lam, mu] = equilibrium_multipliers(p.lambda, p.mu.lowered(), M, N, msq);
      const auto [l2, m2] = project_equilibrium(lam, mu, msq);
      const bool ok = l2 == (M == 0 ? lam[0] : p.lambda) && m2.c == p.mu.lowered().c;
      t.record(ok ? 0.0 : 1.0, ok, "equilibrium round trip M=" + std::to_string(M) + " N=" + std::to_string(N));
    }
  }
  return t.take();
}

SuiteReport derivative_suite(const VerifyOptions& opt) {
  Tally t("derivative", opt.seed);
  const double tol = opt.tol.value_or(1e-6);
  const auto set = closure_set(opt);
  const auto reg = opt.spec.functions();
  std::vector<std::pair<int, int>> orders;
  for (const auto& [o, f] : set.tensors) {
    if (f.rank() <= 7 && !f.is_zero()) orders.push_back(o);
  }
  const std::size_t n = orders.size() * static_cast<std::size_t>(opt.states);
  t.cases(n, [&](std::size_t i) {
    const auto [h, k] = orders[i % orders.size()];
    oracle::Generator g(opt.seed + 2000 + i / orders.size());
    const ThermoState st = g.real_state();
    const FFamilyElement& f = set.at(h, k);
    const auto exact = realize(mu_derivative(f), st, *reg);
    const auto fd = oracle::fd_mu_derivative(f, st, *reg);
    const double rel = oracle::max_abs_diff(fd, exact) / std::max(max_abs(exact), 1e-10);
    t.record(rel, rel <= tol, "mu derivative " + hk(h, k));
  }, [&](std::size_t i) { return hk(orders[i % orders.size()].first, orders[i % orders.size()].second); });
  return t.take();
}

SuiteReport symmetry_suite(const VerifyOptions& opt) {
  Tally t("symmetry", opt.seed);
  const double tol = opt.tol.value_or(1e-6);
  const auto set = closure_set(opt);
  const auto reg = opt.spec.functions();
  t.cases(static_cast<std::size_t>(opt.states), [&](std::size_t i) {
    oracle::Generator g(opt.seed + 3000 + i);
    const ThermoState base = g.real_state();
    const MultiplierState st = g.deviation_state(base, opt.spec, 3e-6);
    const double r = symmetry_residual(set, st, *reg).max();
    t.record(r, r <= tol, "symmetry state " + std::to_string(i));
  }, [](std::size_t i) { return "state " + std::to_string(i); });
  return t.take();
}

SuiteReport equilibrium_suite(const VerifyOptions& opt) {
  Tally t("equilibrium", opt.seed);
  const double tol = opt.tol.value_or(1e-8);
  const double lambda = 0.2;
  const std::vector<double> zs = {0.1, 1.0, 10.0};
  const std::vector<Statistics> stats = {Statistics::nondegenerate, Statistics::fermion, Statistics::boson};
  t.cases(zs.size() * (1 + stats.size()), [&](std::size_t i) {
    const double z = zs[i % zs.size()];
    const std::size_t which = i / zs.size();
    const double gamma = z / opt.spec.mass;
    if (which == 0) {
      const auto q = juttner_potential(JuttnerDistribution(), lambda, gamma, opt.spec.mass);
      const auto c = maxwell_juttner_closed_form(lambda, gamma, opt.spec.mass);
      const double rel = std::max({std::fabs(q.H - c.H) / std::fabs(c.H),
                                   std::fabs(q.H_lambda - c.H_lambda) / std::fabs(c.H_lambda),
                                   std::fabs(q.H_gamma - c.H_gamma) / std::fabs(c.H_gamma)});
      t.record(rel, rel <= tol, "Bessel comparison z=" + std::to_string(z));
      return;
    }
    const JuttnerDistribution dist(stats[which - 1]);
    const double mass = opt.spec.mass;
    const auto rep = gibbs_residual(
        [&](double l, double gm) { return juttner_potential(dist, l, gm, mass); }, lambda, gamma);
    const double r = rep.max_relative();
    t.record(r, r <= tol, "Gibbs/integrability " + statistics_name(stats[which - 1]) + " z=" + std::to_string(z));
  }, [&](std::size_t i) { return "z=" + std::to_string(zs[i % zs.size()]); });
  return t.take();
}

SuiteReport kinetic_suite(const VerifyOptions& opt) {
  Tally t("kinetic", opt.seed);
  const double tol = opt.tol.value_or(1e-8);
  t.cases(3, [&](std::size_t i) {
    oracle::Generator g(opt.seed + 4000 + i);
    const ThermoState st = g.real_state();
    const ThermoState s(st.lambda(), st.mu_upper(), opt.spec.mass);
    const auto rep = equilibrium_moments_with_traces(s, opt.spec);
    t.record(rep.max_trace_residual, rep.max_trace_residual <= tol, "trace chain state " + std::to_string(i));
  }, [](std::size_t i) { return "state " + std::to_string(i); });
  return t.take();
}

const std::map<std::string, std::function<SuiteReport(const VerifyOptions&)>>& registry() {
  static const std::map<std::string, std::function<SuiteReport(const VerifyOptions&)>> suites = {
      {"characteristic", characteristic_suite}, {"compatibility", compatibility_suite},
      {"cross_route", cross_route_suite},       {"oracle", oracle_suite},
      {"roundtrip", roundtrip_suite},           {"derivative", derivative_suite},
      {"symmetry", symmetry_suite},             {"equilibrium", equilibrium_suite},
      {"kinetic", kinetic_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"characteristic", "compatibility", "cross_route",
                                                 "oracle",         "roundtrip",     "derivative",
                                                 "symmetry",       "equilibrium",   "kinetic"};
  return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown suite '" + name + "'");
  opt.spec.validate();
  return it->second(opt);
}

std::vector<SuiteReport> run_verification(const VerifyOptions& opt, const std::optional<std::string>& only) {
  std::vector<SuiteReport> out;
  if (only) {
    out.push_back(run_suite(*only, opt));
    return out;
  }
  for (const auto& name : suite_names()) out.push_back(run_suite(name, opt));
  return out;
}

}  // namespace etclosure
