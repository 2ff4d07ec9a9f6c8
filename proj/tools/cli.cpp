#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "etclosure/closure.hpp"
#include "etclosure/equilibrium.hpp"
#include "etclosure/errors.hpp"
#include "etclosure/moments.hpp"
#include "etclosure/oracle.hpp"
#include "etclosure/serialize.hpp"
#include "etclosure/verification.hpp"

#include <unistd.h>

namespace etclosure::cli {

namespace {

ClosureSpec spec_of(const RunConfig& cfg) {
  ClosureSpec spec;
  spec.M = cfg.M;
  spec.N = cfg.N;
  spec.h_max = cfg.h_max;
  spec.k_max = cfg.k_max;
  spec.mass = cfg.m;
  spec.validate();
  return spec;
}

ThermoState state_of(const RunConfig& cfg) {
  const Statistics stats = parse_statistics(cfg.stats);
  if (!(cfg.m > 0.0)) throw DomainError("--m must be positive");
  bool any_mu = false;
  for (const auto& c : cfg.mu) any_mu = any_mu || c.has_value();
  if (!any_mu) return ThermoState::at_rest(cfg.lambda, cfg.gamma.value_or(1.0), cfg.m, stats);
  if (cfg.gamma) throw DomainError("give either --gamma or --mu0..--mu3, not both");
  const Vec4 mu = Vec4::upper(cfg.mu[0].value_or(0.0), cfg.mu[1].value_or(0.0), cfg.mu[2].value_or(0.0),
                              cfg.mu[3].value_or(0.0));
  return ThermoState(cfg.lambda, mu, cfg.m, stats);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Output {
  std::string text;
  int code = kOk;
};

Output cmd_closure(const RunConfig& cfg) {
  const ClosureSpec spec = spec_of(cfg);
  const auto rows = closure_rows(build_closure_set(spec));
  if (cfg.format == "csv") return {rows_to_csv(rows)};
  Json j;
  j["M"] = spec.M;
  j["N"] = spec.N;
  j["h_max"] = spec.h_max;
  j["k_max"] = spec.N == 1 ? 0 : spec.k_max;
  j["rows"] = rows_to_json(rows);
  return {dump(j)};
}

Output cmd_verify(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.spec = spec_of(cfg);
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.mutate = cfg.mutate;
  const auto reports = run_verification(opt, cfg.suite);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();
  std::string text;
  if (cfg.format == "csv") {
    text = "suite,cases,failures,max_residual,seed\n";
    for (const auto& r : reports) {
      text += r.suite + "," + std::to_string(r.cases) + "," + std::to_string(r.failures) + "," +
              csv_number(r.max_residual) + "," + std::to_string(r.seed) + "\n";
    }
  } else {
    Json suites = Json::array();
    for (const auto& r : reports) {
      suites.push_back(Json{{"suite", r.suite},
                            {"cases", r.cases},
                            {"failures", r.failures},
                            {"max_residual", std::isfinite(r.max_residual) ? Json(r.max_residual) : Json("inf")},
                            {"seed", r.seed},
                            {"failed_cases", r.notes}});
    }
    Json j{{"M", cfg.M}, {"N", cfg.N}, {"seed", cfg.seed}, {"mutate", cfg.mutate}, {"passed", ok}, {"suites", suites}};
    text = dump(j);
  }
  return {text, ok ? kOk : kVerifyFailed};
}

Output cmd_equilibrium(const RunConfig& cfg) {
  const ThermoState st = state_of(cfg);
  const PotentialValues v = equilibrium_potential(st);
  const EquilibriumFunctions f = state_functions(v, st.lambda(), st.gamma());
  const JuttnerDistribution dist(st.statistics(), st.constants());
  const double mass = st.mass();
  const GibbsReport g = gibbs_residual(
      [&](double l, double gm) { return juttner_potential(dist, l, gm, mass); }, st.lambda(), st.gamma());
  const double gibbs = g.max_relative();
  if (cfg.format == "csv") {
    std::string text = "lambda,gamma,m,n,p,e,s,T,gibbs_residual\n";
    for (double x : {st.lambda(), st.gamma(), mass, f.n, f.p, f.e, f.s, f.T, gibbs}) text += csv_number(x) + ",";
    text.back() = '\n';
    return {text};
  }
  Json j{{"lambda", st.lambda()}, {"gamma", st.gamma()}, {"m", mass}, {"statistics", statistics_name(st.statistics())},
         {"n", f.n},          {"p", f.p},            {"e", f.e},  {"s", f.s},
         {"T", f.T},          {"gibbs_residual", gibbs}};
  return {dump(j)};
}

Output cmd_moments(const RunConfig& cfg) {
  const ClosureSpec spec = spec_of(cfg);
  const ThermoState base = state_of(cfg);
  const auto set = build_closure_set(spec);
  const auto reg = spec.functions();
  oracle::Generator gen(cfg.seed);
  const MultiplierState ms = cfg.dev_scale > 0.0 ? gen.deviation_state(base, spec, cfg.dev_scale)
                                                 : MultiplierState::at_equilibrium(base, spec);
  const MomentSet mset = moment_set(set, ms, *reg);
  const SymmetryReport sym = symmetry_residual(set, ms, *reg);
  const KineticMomentReport kin = equilibrium_moments_with_traces(base, spec);

  if (cfg.format == "csv") {
    std::string text = "quantity,index,value\n";
    auto vec = [&](const std::string& name, const Vec4& v) {
      for (int a = 0; a < 4; ++a) text += name + "," + std::to_string(a) + "," + csv_number(v[a]) + "\n";
    };
    auto ten = [&](const std::string& name, const DenseSymTensor& t) {
      for (std::size_t p = 0; p < t.size(); ++p) {
        std::string idx;
        for (int i : t.table().sorted_indices(p)) idx += std::to_string(i);
        text += name + "," + idx + "," + csv_number(t[p]) + "\n";
      }
    };
    ten("A", mset.A);
    ten("B", mset.B);
    ten("delta_A", mset.delta_A);
    ten("delta_B", mset.delta_B);
    vec("hprime", mset.hprime);
    vec("delta_hprime", mset.delta_hprime);
    return {text};
  }
  Json orders = Json::array();
  for (const auto& [o, f] : set.tensors) orders.push_back(Json::array({o.first, o.second}));
  Json traces = Json::array();
  for (const auto& t : kin.traces) traces.push_back(Json{{"rank", t.rank}, {"relative_residual", t.relative_residual}});
  Json j;
  j["M"] = spec.M;
  j["N"] = spec.N;
  j["A"] = to_json(mset.A);
  j["B"] = to_json(mset.B);
  j["delta_A"] = to_json(mset.delta_A);
  j["delta_B"] = to_json(mset.delta_B);
  j["hprime"] = to_json(mset.hprime);
  j["delta_hprime"] = to_json(mset.delta_hprime);
  j["truncation"] = Json{{"h_max", mset.h_max}, {"k_max", mset.k_max}};
  j["residuals"] = Json{{"symmetry", Json{{"lambda", sym.lambda_residual}, {"mu", sym.mu_residual}}},
                        {"traces", traces},
                        {"orders", orders}};
  return {dump(j)};
}

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--M", cfg.M, "rank of the lambda multiplier (even)");
  app.add_option("--N", cfg.N, "rank of the mu multiplier (odd)");
  app.add_option("--hmax", cfg.h_max, "truncation order in lambda deviations");
  app.add_option("--kmax", cfg.k_max, "truncation order in mu deviations");
  app.add_option("--lambda", cfg.lambda, "scalar multiplier lambda");
  app.add_option("--gamma", cfg.gamma, "rest-frame state mu^a = (gamma, 0, 0, 0)");
  app.add_option("--mu0", cfg.mu[0], "mu^0");
  app.add_option("--mu1", cfg.mu[1], "mu^1");
  app.add_option("--mu2", cfg.mu[2], "mu^2");
  app.add_option("--mu3", cfg.mu[3], "mu^3");
  app.add_option("--m", cfg.m, "particle mass");
  app.add_option("--stats", cfg.stats, "statistics")->check(CLI::IsMember({"mb", "fd", "be"}));
  app.add_option("--tol", cfg.tol, "tolerance override for numeric suites");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output path (written atomically)");
  app.add_option("--suite", cfg.suite, "run a single verification suite");
  app.add_option("--mutate", cfg.mutate, "corrupt one closure coefficient by a factor (1+K)");
  app.add_option("--dev-scale", cfg.dev_scale, "size of random multiplier deviations for moments");
}

}  // namespace

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place: " + ec.message());
  }
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Output o;
    if (cfg.subcommand == "closure") {
      o = cmd_closure(cfg);
    } else if (cfg.subcommand == "verify") {
      o = cmd_verify(cfg);
    } else if (cfg.subcommand == "equilibrium") {
      o = cmd_equilibrium(cfg);
    } else if (cfg.subcommand == "moments") {
      o = cmd_moments(cfg);
    } else {
      err << "unknown subcommand '" << cfg.subcommand << "'\n";
      return kUsage;
    }
    if (cfg.out) {
      write_atomic(*cfg.out, o.text);
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCap;
  } catch (const InvalidStateError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Extended-thermodynamics closure tables, checks and equilibrium values"};
  app.set_config("--config", "", "file of key = value lines; explicit flags win");
  add_options(app, cfg);
  app.require_subcommand(1);
  const std::pair<const char*, const char*> subs[] = {
      {"closure", "closure coefficient table up to (hmax, kmax)"},
      {"verify", "run the verification suites"},
      {"equilibrium", "n, p, e, s, T from the equilibrium potential"},
      {"moments", "equilibrium and nonequilibrium moments at a state"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return execute(cfg, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"etclosure"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace etclosure::cli
