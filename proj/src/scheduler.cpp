#include "effsolve/scheduler.hpp"

#include <algorithm>
#include <numeric>

namespace effsolve::scheduler {

namespace {

void require_positive_costs(const std::vector<Candidate>& candidates) {
    for (const Candidate& c : candidates)
        if (!(c.t > 0.0))
            throw NonPositiveCostError("candidate " + c.id + " has non-positive cost");
}

double expected_time_unchecked(const std::vector<Candidate>& order) {
    double total = 0.0;
    double survival = 1.0; // probability no earlier candidate succeeded
    for (const Candidate& c : order) {
        total += survival * c.t;
        survival *= 1.0 - c.p;
    }
    return total;
}

} // namespace

double ratio(const Candidate& c) {
    if (!(c.t > 0.0))
        throw NonPositiveCostError("candidate " + c.id + " has non-positive cost");
    return c.p / c.t;
}

double expected_time(const std::vector<Candidate>& order) {
    require_positive_costs(order);
    return expected_time_unchecked(order);
}

Schedule schedule(std::vector<Candidate> candidates) {
    require_positive_costs(candidates);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         const double ra = a.p / a.t;
                         const double rb = b.p / b.t;
                         if (ra != rb)
                             return ra > rb;
                         return a.id < b.id;
                     });
    Schedule out;
    out.expected_time = expected_time_unchecked(candidates);
    out.order = std::move(candidates);
    return out;
}

bool verify_optimal(const std::vector<Candidate>& candidates) {
    if (candidates.size() > 8)
        throw TooManyCandidatesError("brute-force check limited to 8 candidates");
    const double scheduled = schedule(candidates).expected_time;

    std::vector<std::size_t> perm(candidates.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Candidate> order(candidates.size());
    do {
        for (std::size_t i = 0; i < perm.size(); ++i)
            order[i] = candidates[perm[i]];
        if (scheduled > expected_time_unchecked(order) + 1e-9)
            return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

const char* to_string(Source source) {
    switch (source) {
    case Source::RecalledSurface: return "recalled_surface";
    case Source::RecalledGist: return "recalled_gist";
    case Source::Associated: return "associated";
    case Source::Constructed: return "constructed";
    case Source::DomainBuiltin: return "domain_builtin";
    }
    return "domain_builtin";
}

} // namespace effsolve::scheduler
