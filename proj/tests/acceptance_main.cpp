// Acceptance suite: one line per criterion, exact checks, wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "bordqft/suites.hpp"

using namespace bordqft;

namespace {

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<SuiteResult(const SuiteConfig&)> run;
};

}  // namespace

int main() {
  SuiteConfig config;
  config.circumference = 8;
  config.t_max = 12;
  config.mass_squared = Rat(0);
  config.seed = 1;
  config.max_degree = 3;

  std::vector<Criterion> criteria = {
      {"pseudo-category laws (generated + bordism instance)", 30.0, run_coherence_suite},
      {"truncation/inclusion adjunction", 30.0, run_adjunction_suite},
      {"companions and weak inverses", 10.0, run_bordism_suite},
      {"Green operator axioms", 60.0, run_green_axioms},
      {"Poisson space chain", 30.0, run_poisson_chain},
      {"algebraic theory axioms", 60.0, run_aqft_axioms},
      {"free-field comparison naturality", 120.0, run_scalar_comparison_suite},
      {"reconstruction roundtrip (incl. one-dimensional)", 60.0, run_roundtrip_suite},
      {"non-fullness witness", 10.0, run_nonfullness_suite},
  };

  bool all_ok = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& criterion = criteria[i];
    auto start = std::chrono::steady_clock::now();
    SuiteResult result;
    bool threw = false;
    std::string what;
    try {
      result = criterion.run(config);
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < criterion.budget_seconds;
    bool ok = !threw && result.passed() && in_budget;
    all_ok = all_ok && ok;
    std::printf("%s criterion %zu: %s [%zu checks, %d failed, %.2fs / %.0fs budget]%s%s\n",
                ok ? "PASS" : "FAIL", i + 1, criterion.name, result.checks.size(),
                result.failed_count(), elapsed, criterion.budget_seconds,
                threw ? " exception: " : "", threw ? what.c_str() : "");
    if (!ok && !threw) {
      int shown = 0;
      for (const CheckResult& c : result.checks) {
        if (c.status || shown >= 5) continue;
        std::printf("       failed: %s [%s] lhs=%s rhs=%s\n", c.check.c_str(),
                    c.instance_key.c_str(), c.lhs.c_str(), c.rhs.c_str());
        ++shown;
      }
    }
  }
  return all_ok ? 0 : 1;
}
