#pragma once

#include <cstdint>

#include "effsolve/memory.hpp"
#include "effsolve/retrieval.hpp"

namespace effsolve {

struct EngineConfig {
    int budget = 1000;            // max steps, > 0
    int max_depth = 3;            // subgoal recursion limit, >= 0
    double switch_margin = 1.5;   // mu >= 1, hysteresis against plan thrashing
    int fruitless_rounds = 3;     // G >= 1, generation rounds before a break
    int incubation_ticks = 2;     // decay ticks applied per break, >= 1
    double acceptance_floor = 0.001; // epsilon >= 0, minimum workable ratio
    std::uint64_t rng_seed = 42;

    void validate() const; // throws InputError
};

// Cost constants of the integer-summation domain. Chosen so the crossover
// between iterating and searching for something better sits between n=10
// and n=1e6; all tunable.
struct GaussParams {
    double c_add = 1.0;      // cost of one addition
    double c_formula = 5.0;  // cost of applying the pairing formula
    double p_search = 0.3;   // chance one search attempt finds the formula
    double t_search = 200.0; // cost of one search attempt
};

struct CspParams {
    double t_eliminate = 50.0; // estimated cost of propagate-and-test
    double c_check = 0.001;    // per-assignment cost of blind enumeration
};

struct RunConfig {
    EngineConfig engine;
    retrieval::RetrievalOptions retrieval;
    memory::ActivationParams memory_params;
    GaussParams gauss;
    CspParams csp;
};

} // namespace effsolve
