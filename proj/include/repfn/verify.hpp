#pragma once

// Verification sweeps cross-checking the characterization, the existence
// criteria, the counting formulas and the three representation routes
// against brute force.

#include "repfn/core_arith.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace repfn {

struct VerifyOptions {
    Int max_m = 12;
    /// Subset of check_names(); empty means all.
    std::vector<std::string> scope;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    /// Random instances for the route and lemma samples.
    std::size_t samples = 1000;
    /// Sweeps over all 2^m subsets stop at min(max_m, exhaustive_limit).
    Int exhaustive_limit = 12;
};

struct CheckResult {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_counterexample;
    std::chrono::milliseconds elapsed{0};

    bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
    const CheckResult* first_failure() const noexcept;
};

/// theorem, theorem_refined, corollary, counting, counting_refined, routes,
/// lemmas, construction, determinism.
const std::vector<std::string>& check_names();

/// Throws UsageError for max_m < 2 or an unknown scope name.
VerifyReport run_verify(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

} // namespace repfn
