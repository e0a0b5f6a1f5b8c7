#pragma once

// The A1/A2/B/C solver state machine: follow the plan, find a better
// approach, find any acceptable approach, take a break. Wires candidate
// generation (retrieval + memory + domain operators), plan assessment
// (scheduling by p/t), and incubation (memory decay), with recursive
// subgoaling and a step-by-step trace.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effsolve/config.hpp"
#include "effsolve/domains.hpp"
#include "effsolve/memory.hpp"
#include "effsolve/problem.hpp"
#include "effsolve/rand.hpp"
#include "effsolve/retrieval.hpp"
#include "effsolve/scheduler.hpp"

namespace effsolve::engine {

enum class StateTag { A1, A2, B, C };

enum class TraceAction {
    TestCandidate,
    Generate,
    Manipulate,
    Assess,
    Incubate,
    SubgoalPush,
    SubgoalPop,
    Solved,
    Failed,
};

struct SolverState {
    StateTag tag = StateTag::B;
    std::optional<std::vector<scheduler::Candidate>> plan; // nonempty when A1
    int generation_rounds = 0;
};

struct TraceRecord {
    int step = 0;
    StateTag state = StateTag::B;
    TraceAction action = TraceAction::Generate;
    std::optional<std::string> candidate_id;
    std::optional<double> p;
    std::optional<double> t;
    std::optional<double> ratio;
    std::string note;
};

// Budget cost of one trace record: candidate tests cost ceil(t) steps,
// bookkeeping-only records cost nothing, everything else costs one step.
int step_cost(const TraceRecord& rec);

struct RunResult {
    bool solved = false;
    std::string reason;              // "budget exhausted" etc. when failed
    std::optional<double> answer;    // numeric solution when the domain has one
    std::string solution;            // rendered solution
    int steps = 0;                   // budget steps consumed
    int candidates_tested = 0;
    std::vector<TraceRecord> trace;
};

// Maps a retrieval hit onto a testable candidate: p = score x confidence
// (clamped to [0,1]), t = the case's cost estimate scaled by the domain
// cost model, source per retrieval level.
scheduler::Candidate estimate_candidate(const retrieval::RetrievalResult& result,
                                        const retrieval::Case& c,
                                        const Problem& problem,
                                        const domains::DomainSpec& domain);

// Initial state: A1 with a plan when exactly one candidate clears the
// acceptance floor, A2 when several do, B when none.
SolverState start_state(const Problem& problem, const retrieval::Casebase& casebase,
                        memory::MemoryGraph& memory, const RunConfig& config);

class Engine {
public:
    Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
           RunConfig config);
    // Injectable domain for tests and custom domains.
    Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
           RunConfig config, domains::DomainSpec domain);
    ~Engine();
    Engine(Engine&&) noexcept;
    Engine& operator=(Engine&&) = delete;

    // Iterates step() until solved or the budget runs out.
    RunResult run();

    // One transition; emits at least one trace record. Subgoal excursions
    // emit their push/inner/pop records inside the host step.
    void step();

    bool finished() const { return outcome_.has_value(); }
    const SolverState& state() const { return state_; }
    const std::vector<TraceRecord>& trace() const { return trace_; }
    memory::MemoryGraph& memory() { return memory_; }

    // Runs the same machinery on a subproblem against the shared budget and
    // trace. Throws DepthExceededError unless sub.depth == problem.depth + 1
    // and sub.depth <= max_depth.
    domains::SubgoalResult subgoal(const Problem& sub);

private:
    struct Shared; // budget, step counter, trace sink — one per run tree

    Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
           RunConfig config, domains::DomainSpec domain, Shared* shared);

    void start();
    void step_a1();
    void step_a2();
    void step_b();
    void step_c();

    TraceRecord& emit(TraceAction action, std::string note);
    void fail(std::string reason);
    std::vector<scheduler::Candidate> knowledge_candidates();
    std::vector<scheduler::Candidate> run_generators(
        const std::vector<domains::CandidateGenerator>& generators);
    void stage(std::vector<scheduler::Candidate> candidates);
    void adopt(std::vector<scheduler::Candidate> pool, const char* how);
    void finish_round();

    Problem problem_;
    retrieval::Casebase casebase_;
    memory::MemoryGraph memory_;
    RunConfig config_;
    domains::DomainSpec domain_;

    SolverState state_;
    std::map<std::string, scheduler::Candidate> staged_;
    int round_phase_ = 0;
    bool subgoal_tried_this_round_ = false;

    std::unique_ptr<Shared> owned_shared_;
    Shared* shared_ = nullptr;

    std::optional<RunResult> outcome_;
    std::vector<TraceRecord> trace_; // filled from shared sink at the end
};

// Convenience wrapper: build an engine and run it.
RunResult run(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
              RunConfig config);

const char* to_string(StateTag tag);
const char* to_string(TraceAction action);

} // namespace effsolve::engine
