#pragma once

// Candidate ordering by success-probability / test-cost ratio, the expected
// time to first success it minimizes, and a brute-force permutation oracle.

#include <string>
#include <vector>

#include "effsolve/errors.hpp"

namespace effsolve::scheduler {

enum class Source {
    RecalledSurface,
    RecalledGist,
    Associated,
    Constructed,
    DomainBuiltin,
};

struct Candidate {
    std::string id;
    double p = 0.0;     // success probability in [0,1]
    double t = 1.0;     // test cost in time units, > 0
    Source source = Source::DomainBuiltin;
    std::string payload; // opaque domain action reference (method id)
    bool intuition = false; // gist-level hit the solver cannot articulate
};

struct Schedule {
    std::vector<Candidate> order; // p/t non-increasing, ties by id ascending
    double expected_time = 0.0;
};

// p/t. Throws NonPositiveCostError when t <= 0.
double ratio(const Candidate& c);

// Expected time to first success when testing in the given order, assuming
// independent outcomes: sum over k of t_k * prod_{j<k} (1 - p_j).
// Empty list -> 0. Throws NonPositiveCostError.
double expected_time(const std::vector<Candidate>& order);

// Stable sort by ratio descending, ties by id ascending; candidates with
// p = 0 are kept (sorted last), not dropped.
Schedule schedule(std::vector<Candidate> candidates);

// True iff the scheduled order attains the minimum expected time over every
// permutation, within 1e-9. Throws TooManyCandidatesError for more than 8.
bool verify_optimal(const std::vector<Candidate>& candidates);

const char* to_string(Source source);

} // namespace effsolve::scheduler
