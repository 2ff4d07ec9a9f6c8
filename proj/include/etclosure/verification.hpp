#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etclosure/closure.hpp"

namespace etclosure {

struct VerifyOptions {
  ClosureSpec spec;
  std::uint64_t seed = 20240601;
  std::optional<double> tol;  // overrides the numeric suites' tolerance
  int mutate = 0;             // nonzero corrupts one closure coefficient
  int states = 10;
};

struct SuiteReport {
  std::string suite;
  int cases = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;  // one line per failing case

  bool ok() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);
// every suite, or only `only`; DomainError on an unknown name
std::vector<SuiteReport> run_verification(const VerifyOptions& opt, const std::optional<std::string>& only = {});

}  // namespace etclosure
