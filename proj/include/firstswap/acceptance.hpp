#pragma once

// The reproduction sweep: every exit criterion as a self-contained check,
// shared by the acceptance test binary and the CLI `report` command.

#include "firstswap/continuous.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace firstswap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Informational findings that never fail the criterion.
  std::vector<std::string> notes;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  int exact_max_n = 200;
  int identity_max_n = 50;
  int wasserstein_max_n = 1000;
  int random_functions = 100;
  std::size_t samples = 100000;
  std::uint64_t seed = 20140503;
  unsigned threads = 0;
};

/// Twenty smooth test functions on [0, 1] with sup|h'| <= 1.
std::vector<LipschitzFunction> lipschitz_family();

CriterionResult criterion_pmf_validity(const AcceptanceOptions& opt);
CriterionResult criterion_enumeration_counts(const AcceptanceOptions& opt);
CriterionResult criterion_first_letter_oracle(const AcceptanceOptions& opt);
CriterionResult criterion_stein_identities(const AcceptanceOptions& opt);
CriterionResult criterion_moments(const AcceptanceOptions& opt);
CriterionResult criterion_beta_bounds(const AcceptanceOptions& opt);
CriterionResult criterion_semicircle_bounds(const AcceptanceOptions& opt);
CriterionResult criterion_cdf_identity(const AcceptanceOptions& opt);
CriterionResult criterion_stein_solution_bounds(const AcceptanceOptions& opt);
CriterionResult criterion_yang_baxter(const AcceptanceOptions& opt);
CriterionResult criterion_sampling(const AcceptanceOptions& opt);

/// All criteria in order 1..11.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace firstswap
