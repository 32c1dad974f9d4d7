#pragma once

// Randomized verification suites. Each suite draws its own samples from an
// explicit seed, runs a family of identity checks, and returns a
// machine-readable report; suites are deterministic given the seed.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hypinv {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    bool pass = true;
    std::vector<CheckResult> checks;

    void add(CheckResult c) {
        pass = pass && c.pass;
        checks.push_back(std::move(c));
    }
};

// Exact-mode product identities A*B = B*A = Id on random rational tuples.
SuiteReport run_suite_pair(std::uint64_t seed, int tuples = 25, int n_max = 12);

// Coefficient-extraction criterion on the five-parameter sequences; an
// optional perturbation (m0, k0) adds 1 to the b-coefficient at that index
// and must flip exactly the cells (n, k0) with n >= k0 + m0.
SuiteReport run_suite_criterion(std::uint64_t seed, int n_max = 15,
                                std::optional<std::pair<int, int>> perturb = {});

// Difference-quotient closed form vs its defining alternating sum, including
// near-coincident and integer-coincident arguments.
SuiteReport run_suite_lemma1(std::uint64_t seed, int samples = 500);

// Implicit-function residuals, series/scalar coherence for Sigma, the
// quarter-radius coefficients, root-test radius law, and the inverse-map
// consistency checks.
SuiteReport run_suite_theta(std::uint64_t seed, int residual_points = 200,
                            int omega_points = 100);

// OGF transforms vs triangular matrix action, exact mode.
SuiteReport run_suite_ogf(std::uint64_t seed, int draws = 10, int order = 15);

// EGF formula vs direct summation of the matrix image.
SuiteReport run_suite_egf(std::uint64_t seed, int draws = 10);

nlohmann::json report_to_json(const SuiteReport& r);

}  // namespace hypinv
