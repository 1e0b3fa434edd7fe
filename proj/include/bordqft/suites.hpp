#pragma once

#include <string>
#include <vector>

#include "bordqft/compare.hpp"
#include "bordqft/json_io.hpp"

namespace bordqft {

struct SuiteConfig {
  int circumference = 8;
  int t_max = 12;
  Rat mass_squared = Rat(0);
  uint64_t seed = 1;
  int max_degree = 3;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const;
  int failed_count() const;
};

// The bounded bordism instance used by the law/adjunction suites.
LbordInstanceConfig verification_instance_config();

// A small fibrant pseudo-category with two parallel horizontals joined by a
// globular cell; its homotopy category is the walking arrow.
PseudoCat collapsing_pair_pseudocat();

// pseudo-category laws on the generated finite instances and on the exported
// bordism instance
SuiteResult run_coherence_suite(const SuiteConfig& config);
// truncation/inclusion adjunction checks and hom-set counts
SuiteResult run_adjunction_suite(const SuiteConfig& config);
// companions and weak inverses at the bordism level
SuiteResult run_bordism_suite(const SuiteConfig& config);

// Green operator axioms over the configured slab family and masses
SuiteResult run_green_axioms(const SuiteConfig& config);
// the three Poisson descriptions and their exact isomorphisms
SuiteResult run_poisson_chain(const SuiteConfig& config);
SuiteResult run_kg_suite(const SuiteConfig& config);

SuiteResult run_aqft_axioms(const SuiteConfig& config);
SuiteResult run_scalar_comparison_suite(const SuiteConfig& config);
SuiteResult run_roundtrip_suite(const SuiteConfig& config);
SuiteResult run_nonfullness_suite(const SuiteConfig& config);
SuiteResult run_compare_suite(const SuiteConfig& config);

// selector: coherence | adjunction | bordism | kg | compare | all
std::vector<SuiteResult> run_suites(const std::string& selector, const SuiteConfig& config);

Json report_json(const std::vector<SuiteResult>& suites, const SuiteConfig& config,
                 bool with_timestamp);

}  // namespace bordqft
