#pragma once

// The acceptance experiment suite: every headline claim as a runnable,
// seeded check with a measured summary line.

#include <cstdint>
#include <string>
#include <vector>

namespace effsolve::experiments {

struct CriterionResult {
    std::string name;
    std::string measured;
    bool pass = false;
};

// Criterion names, in execution order:
//   scheduler-optimality, adjacent-exchange, recall-reachability,
//   zebra-elimination, abstraction-gate, effectivity-tradeoff,
//   state-machine, determinism
std::vector<std::string> criterion_names();

CriterionResult run_criterion(const std::string& name, std::uint64_t seed);

// Runs every criterion whose name contains `only` (all when empty).
std::vector<CriterionResult> run_all(std::uint64_t seed, const std::string& only = "");

} // namespace effsolve::experiments
