#pragma once

// Desk-scale problem domains: integer summation (method trade-off), a
// zebra-style CSP (candidate elimination), and analogy/gist transfer
// word problems — plus the plug-in seam the solver engine drives them by.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effsolve/config.hpp"
#include "effsolve/problem.hpp"
#include "effsolve/rand.hpp"
#include "effsolve/scheduler.hpp"

namespace effsolve::domains {

// ---------------------------------------------------------------------------
// Plug-in seam
// ---------------------------------------------------------------------------

struct EvalOutcome {
    bool success = false;
    std::optional<double> value; // numeric answer when the domain has one
    std::string solution;        // rendered solution, "" if none
    std::string note;
};

struct SubgoalResult {
    bool solved = false;
    std::optional<double> value;
    std::string solution;
};

struct GenContext {
    const retrieval::Casebase& casebase;
    const RunConfig& config;
};

using CandidateGenerator =
    std::function<std::vector<scheduler::Candidate>(const Problem&, const GenContext&)>;

struct DomainSpec {
    std::string tag;
    std::vector<CandidateGenerator> candidate_generators;
    std::vector<CandidateGenerator> manipulation_operators;
    // Multiplicative time-unit scale applied to a retrieved case's
    // cost_estimate for the given method on the given problem.
    std::function<double(const std::string& method, const Problem&)> cost_model;
    std::function<EvalOutcome(const scheduler::Candidate&, const Problem&, Rng&)> evaluate;
    std::function<bool(const Problem&, const EvalOutcome&)> goal_check;

    // Optional recursive-subgoal seam: propose a subproblem during a
    // generation round; absorb its solution as a constructed candidate.
    std::function<std::optional<Problem>(const Problem&, int round)> propose_subproblem;
    std::function<std::optional<scheduler::Candidate>(const Problem&, const SubgoalResult&)>
        absorb_subsolution;
};

// Resolves the DomainSpec for a problem tag; the config's domain constants
// are baked into the returned cost model. Throws InputError on an unknown tag.
DomainSpec make_domain(const std::string& tag, const RunConfig& config);

// ---------------------------------------------------------------------------
// Integer summation (1..n)
// ---------------------------------------------------------------------------

// Surface features shared by the summation problems and their cases.
retrieval::FeatureSet gauss_surface();

Problem gauss_problem(std::int64_t n);

// Casebase holding only the iterate-add experience.
retrieval::Casebase gauss_novice_casebase();
// Adds the pairing-formula experience.
retrieval::Casebase gauss_expert_casebase();

// Always yields iterate-add (p=1, t=n*c_add) and a search-for-better attempt
// (p=p_search, t=t_search); yields pairing-formula (p=1, t=c_formula) only if
// the formula case can be retrieved from the casebase.
std::vector<scheduler::Candidate> gauss_candidates(std::int64_t n,
                                                   const retrieval::Casebase& casebase,
                                                   const GaussParams& params,
                                                   const retrieval::RetrievalOptions& opts);

std::int64_t gauss_iterate(std::int64_t n); // literal summation
std::int64_t gauss_pairing(std::int64_t n); // n*(n+1)/2

// ---------------------------------------------------------------------------
// Constraint-satisfaction puzzles
// ---------------------------------------------------------------------------

// One value arrangement per attribute: solution[attr][house] = value index.
struct CspSolution {
    std::vector<std::vector<int>> arrangement;

    std::string render(const CspInstance& instance) const;
    // Nationality (or first attribute) sharing a house with the given
    // attribute value, e.g. who_owns("pet", "zebra").
    std::optional<std::string> who_owns(const CspInstance& instance,
                                        const std::string& attr,
                                        const std::string& value) const;
};

struct CspResult {
    std::optional<CspSolution> solution; // absent = unsatisfiable
    long tested = 0;                     // full-assignment goal checks
    int solutions_found = 0;             // > 1 only in count_all mode
};

bool csp_satisfies(const CspInstance& instance, const CspSolution& solution);

// Full lexicographic enumeration; returns the first satisfying assignment and
// how many full assignments were checked. Throws TooLargeError when
// (n!)^attributes exceeds 1e6.
CspResult csp_enumerate_blind(const CspInstance& instance);

// Arc-consistency-style position-domain pruning, then lexicographic
// backtracking that checks constraints as soon as both endpoints are
// assigned. Finds the same (lexicographically least) solution as blind
// enumeration while testing far fewer full assignments. With count_all the
// whole pruned space is exhausted to count every solution.
CspResult csp_eliminate(const CspInstance& instance, bool count_all = false);

// The classic five-house puzzle; unique solution, the zebra sits with the
// Japanese in house 5.
CspInstance zebra_instance();

// Small instance with a unique solution, enumerable blind.
CspInstance csp_three_house_fixture();
// Contradictory fixed constraints; blind must scan all 216 assignments.
CspInstance csp_three_house_unsat_fixture();

// Random satisfiable 3-house instance: constraints are sampled consistent
// with a hidden random solution.
CspInstance random_three_house_instance(Rng& rng, int num_constraints);

Problem csp_problem(CspInstance instance, std::string id = "csp");

// ---------------------------------------------------------------------------
// Analogy / gist transfer
// ---------------------------------------------------------------------------

struct AnalogyFixture {
    retrieval::Casebase casebase;   // rate-time-distance experiences
    std::vector<Problem> targets;   // disjoint surfaces, same gist
};

// Casebase cases share the {rate, time, distance} gist with the targets but
// have no surface feature in common with them. The fly/cyclists target
// (50 miles apart, 18+22 mph closing, fly at 100 mph) carries answer 125.
AnalogyFixture analogy_fixture();

} // namespace effsolve::domains
