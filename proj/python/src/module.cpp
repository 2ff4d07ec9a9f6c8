#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "etclosure/closure.hpp"
#include "etclosure/errors.hpp"
#include "etclosure/serialize.hpp"

namespace py = pybind11;
using etclosure::cli::RunConfig;

namespace {

// runs one subcommand and hands back (exit code, json text, stderr text)
py::tuple run_config(const RunConfig& cfg) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = etclosure::cli::execute(cfg, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

RunConfig base(const std::string& sub, int M, int N, int hmax, int kmax) {
  RunConfig c;
  c.subcommand = sub;
  c.M = M;
  c.N = N;
  c.h_max = hmax;
  c.k_max = kmax;
  return c;
}

}  // namespace

PYBIND11_MODULE(_etclosure, m) {
  m.doc() = "Closure tensors, verification and equilibrium thermodynamics for many-moment extended thermodynamics.";

  py::register_exception<etclosure::CapExceeded>(m, "CapExceeded", PyExc_OverflowError);
  py::register_exception<etclosure::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<etclosure::SingularRatioError>(m, "SingularRatioError", PyExc_ArithmeticError);

  m.def(
      "closure_coeff",
      [](int M, int N, int h, int k, int s) {
        return etclosure::to_json(etclosure::closure_coeff(M, N, h, k, s)).dump();
      },
      py::arg("M"), py::arg("N"), py::arg("h"), py::arg("k"), py::arg("s"));

  m.def(
      "closure",
      [](int M, int N, int hmax, int kmax, const std::string& format) {
        RunConfig c = base("closure", M, N, hmax, kmax);
        c.format = format;
        return run_config(c);
      },
      py::arg("M"), py::arg("N"), py::arg("hmax"), py::arg("kmax"), py::arg("format") = "json");

  m.def(
      "verify",
      [](int M, int N, int hmax, int kmax, std::uint64_t seed, std::optional<double> tol, int mutate,
         std::optional<std::string> suite) {
        RunConfig c = base("verify", M, N, hmax, kmax);
        c.seed = seed;
        c.tol = tol;
        c.mutate = mutate;
        c.suite = suite;
        return run_config(c);
      },
      py::arg("M"), py::arg("N"), py::arg("hmax"), py::arg("kmax"), py::arg("seed") = 20240601,
      py::arg("tol") = py::none(), py::arg("mutate") = 0, py::arg("suite") = py::none());

  m.def(
      "equilibrium",
      [](double lambda, double gamma, double mass, const std::string& stats) {
        RunConfig c;
        c.subcommand = "equilibrium";
        c.lambda = lambda;
        c.gamma = gamma;
        c.m = mass;
        c.stats = stats;
        return run_config(c);
      },
      py::arg("lam"), py::arg("gamma"), py::arg("m") = 1.0, py::arg("stats") = "mb");

  m.def(
      "moments",
      [](int M, int N, int hmax, int kmax, double lambda, std::array<double, 4> mu, double mass,
         std::uint64_t seed, double dev_scale) {
        RunConfig c = base("moments", M, N, hmax, kmax);
        c.lambda = lambda;
        for (int a = 0; a < 4; ++a) c.mu[static_cast<std::size_t>(a)] = mu[static_cast<std::size_t>(a)];
        c.m = mass;
        c.seed = seed;
        c.dev_scale = dev_scale;
        return run_config(c);
      },
      py::arg("M"), py::arg("N"), py::arg("hmax"), py::arg("kmax"), py::arg("lam"), py::arg("mu"),
      py::arg("m") = 1.0, py::arg("seed") = 20240601, py::arg("dev_scale") = 0.0);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = etclosure::cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
