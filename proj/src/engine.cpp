#include "effsolve/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace effsolve {

void EngineConfig::validate() const {
    if (budget <= 0)
        throw InputError("budget must be > 0");
    if (max_depth < 0)
        throw InputError("max_depth must be >= 0");
    if (switch_margin < 1.0)
        throw InputError("switch_margin must be >= 1");
    if (fruitless_rounds < 1)
        throw InputError("fruitless_rounds must be >= 1");
    if (incubation_ticks < 1)
        throw InputError("incubation_ticks must be >= 1");
    if (acceptance_floor < 0.0)
        throw InputError("acceptance_floor must be >= 0");
}

} // namespace effsolve

namespace effsolve::engine {

using scheduler::Candidate;

namespace {

std::string fmt_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Everything the solver currently knows: association-driven recall from the
// memory graph plus casebase retrieval. Zero-similarity cases are not
// recalled at all; only method concepts recall as testable ideas.
std::vector<Candidate> gather_knowledge(const Problem& problem,
                                        const retrieval::Casebase& casebase,
                                        memory::MemoryGraph& mem,
                                        const RunConfig& config,
                                        const domains::DomainSpec& domain) {
    std::vector<Candidate> out;

    std::set<std::string> seeds;
    for (const auto& [name, w] : problem.surface.entries)
        if (mem.has_concept(name))
            seeds.insert(name);
    if (!seeds.empty()) {
        for (const auto& [id, act] : retrieval::recall_associated(mem, seeds)) {
            if (mem.concept(id).kind != memory::ConceptKind::Method)
                continue;
            Candidate c;
            c.id = "assoc:" + id;
            c.p = std::clamp(act, 0.0, 1.0);
            c.t = domain.cost_model(id, problem);
            c.source = scheduler::Source::Associated;
            c.payload = id;
            out.push_back(std::move(c));
        }
    }

    const auto hits = retrieval::retrieve(problem.surface, casebase.cases,
                                          casebase.taxonomy, config.retrieval.k,
                                          config.retrieval.mode, config.retrieval);
    for (const auto& hit : hits) {
        if (hit.score <= 0.0)
            continue;
        auto it = std::find_if(casebase.cases.begin(), casebase.cases.end(),
                               [&](const retrieval::Case& c) { return c.id == hit.case_id; });
        if (it != casebase.cases.end())
            out.push_back(estimate_candidate(hit, *it, problem, domain));
    }
    return out;
}

} // namespace

Candidate estimate_candidate(const retrieval::RetrievalResult& result,
                             const retrieval::Case& c, const Problem& problem,
                             const domains::DomainSpec& domain) {
    Candidate out;
    out.id = c.id;
    out.p = std::clamp(result.score * c.confidence, 0.0, 1.0);
    out.t = c.cost_estimate * domain.cost_model(c.method, problem);
    out.source = result.level == retrieval::MatchLevel::Gist
                     ? scheduler::Source::RecalledGist
                     : scheduler::Source::RecalledSurface;
    out.payload = c.method;
    out.intuition = !result.explained;
    return out;
}

int step_cost(const TraceRecord& rec) {
    switch (rec.action) {
    case TraceAction::TestCandidate:
    case TraceAction::Solved:
        return rec.t ? static_cast<int>(std::ceil(*rec.t)) : 1;
    case TraceAction::SubgoalPop:
    case TraceAction::Failed:
        return 0;
    default:
        return 1;
    }
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

struct Engine::Shared {
    int budget;
    int steps_used = 0;
    int step_counter = 0;
    int candidates_tested = 0;
    std::vector<TraceRecord> trace;
    Rng rng;

    explicit Shared(const EngineConfig& cfg) : budget(cfg.budget), rng(cfg.rng_seed) {}
};

Engine::Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
               RunConfig config)
    : Engine(std::move(problem), std::move(casebase), std::move(memory), config,
             domains::DomainSpec{}, nullptr) {
    domain_ = domains::make_domain(problem_.domain, config_);
}

Engine::Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
               RunConfig config, domains::DomainSpec domain)
    : Engine(std::move(problem), std::move(casebase), std::move(memory), config,
             std::move(domain), nullptr) {}

Engine::Engine(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
               RunConfig config, domains::DomainSpec domain, Shared* shared)
    : problem_(std::move(problem)),
      casebase_(std::move(casebase)),
      memory_(std::move(memory)),
      config_(config),
      domain_(std::move(domain)) {
    config_.engine.validate();
    if (!shared) {
        owned_shared_ = std::make_unique<Shared>(config_.engine);
        shared_ = owned_shared_.get();
    } else {
        shared_ = shared;
    }
}

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;

TraceRecord& Engine::emit(TraceAction action, std::string note) {
    TraceRecord rec;
    rec.step = ++shared_->step_counter;
    rec.state = state_.tag;
    rec.action = action;
    rec.note = std::move(note);
    shared_->trace.push_back(std::move(rec));
    return shared_->trace.back();
}

void Engine::fail(std::string reason) {
    emit(TraceAction::Failed, reason);
    RunResult r;
    r.solved = false;
    r.reason = std::move(reason);
    outcome_ = std::move(r);
}

std::vector<Candidate> Engine::knowledge_candidates() {
    return gather_knowledge(problem_, casebase_, memory_, config_, domain_);
}

std::vector<Candidate> Engine::run_generators(
    const std::vector<domains::CandidateGenerator>& generators) {
    std::vector<Candidate> out;
    domains::GenContext ctx{casebase_, config_};
    for (const auto& gen : generators) {
        auto made = gen(problem_, ctx);
        out.insert(out.end(), std::make_move_iterator(made.begin()),
                   std::make_move_iterator(made.end()));
    }
    return out;
}

void Engine::stage(std::vector<Candidate> candidates) {
    for (auto& c : candidates)
        staged_[c.id] = std::move(c); // latest estimate per id wins
}

void Engine::adopt(std::vector<Candidate> pool, const char* how) {
    auto sched = scheduler::schedule(std::move(pool));
    const double best = scheduler::ratio(sched.order.front());
    emit(TraceAction::Assess, std::string(how) + ": " +
                                  std::to_string(sched.order.size()) +
                                  " candidate(s), best ratio " + fmt_num(best) +
                                  ", expected time " + fmt_num(sched.expected_time));
    shared_->steps_used += 1;
    state_.plan = std::move(sched.order);
    state_.tag = StateTag::A1;
    state_.generation_rounds = 0;
    staged_.clear();
}

void Engine::start() {
    auto cands = knowledge_candidates();
    int acceptable = 0;
    for (const auto& c : cands)
        if (scheduler::ratio(c) >= config_.engine.acceptance_floor)
            ++acceptable;
    if (acceptable == 0) {
        state_.tag = StateTag::B;
        state_.plan.reset();
        stage(std::move(cands)); // weak ideas stay around for later rounds
    } else {
        state_.tag = acceptable == 1 ? StateTag::A1 : StateTag::A2;
        state_.plan = scheduler::schedule(std::move(cands)).order;
    }
    state_.generation_rounds = 0;
}

RunResult Engine::run() {
    start();
    while (!outcome_)
        step();
    RunResult result = *outcome_;
    result.steps = shared_->steps_used;
    result.candidates_tested = shared_->candidates_tested;
    result.trace = shared_->trace;
    return result;
}

void Engine::step() {
    if (outcome_)
        return;
    if (shared_->steps_used >= shared_->budget) {
        fail("budget_exhausted");
        return;
    }
    switch (state_.tag) {
    case StateTag::A1: step_a1(); break;
    case StateTag::A2: step_a2(); break;
    case StateTag::B: step_b(); break;
    case StateTag::C: step_c(); break;
    }
}

void Engine::step_a1() {
    auto& plan = *state_.plan;
    const Candidate candidate = plan.front();
    const double r = scheduler::ratio(candidate);

    // progress monitor: a stalled plan is worth re-assessing
    if (r < config_.engine.acceptance_floor) {
        emit(TraceAction::Assess,
             "best remaining ratio " + fmt_num(r) + " below acceptance floor");
        shared_->steps_used += 1;
        state_.tag = StateTag::A2;
        return;
    }

    const int cost = static_cast<int>(std::ceil(candidate.t));
    if (shared_->steps_used + cost > shared_->budget) {
        fail("budget_exhausted");
        return;
    }

    auto outcome = domain_.evaluate(candidate, problem_, shared_->rng);
    const bool solved = outcome.success && domain_.goal_check(problem_, outcome);
    shared_->candidates_tested += 1;

    std::string note = outcome.note;
    if (candidate.intuition)
        note += "; felt similar without articulable surface reasons";

    if (solved) {
        auto& rec = emit(TraceAction::Solved, note);
        rec.candidate_id = candidate.id;
        rec.p = candidate.p;
        rec.t = candidate.t;
        rec.ratio = r;
        shared_->steps_used += cost;
        RunResult res;
        res.solved = true;
        res.answer = outcome.value;
        res.solution = outcome.solution.empty()
                           ? (outcome.value ? fmt_num(*outcome.value) : std::string())
                           : outcome.solution;
        outcome_ = std::move(res);
        return;
    }

    auto& rec = emit(TraceAction::TestCandidate, note.empty() ? "no solution" : note);
    rec.candidate_id = candidate.id;
    rec.p = candidate.p;
    rec.t = candidate.t;
    rec.ratio = r;
    shared_->steps_used += cost;

    plan.erase(plan.begin());
    if (plan.empty()) {
        state_.plan.reset();
        state_.tag = StateTag::B;
    }
}

void Engine::step_a2() {
    std::vector<Candidate> pool;
    if (state_.plan)
        pool = *state_.plan;
    for (const auto& [id, c] : staged_)
        if (std::none_of(pool.begin(), pool.end(),
                         [&](const Candidate& p) { return p.id == id; }))
            pool.push_back(c);

    double best = 0.0;
    for (const auto& c : pool)
        best = std::max(best, scheduler::ratio(c));

    if (pool.empty() || best < config_.engine.acceptance_floor) {
        emit(TraceAction::Assess,
             pool.empty() ? "nothing to assess"
                          : "no candidate clears the floor (best " + fmt_num(best) + ")");
        shared_->steps_used += 1;
        state_.plan.reset();
        state_.tag = StateTag::B;
        return;
    }

    const bool have_plan = state_.plan && !state_.plan->empty();
    const double current = have_plan ? scheduler::ratio(state_.plan->front()) : 0.0;
    const bool current_stalled = !have_plan || current < config_.engine.acceptance_floor;
    if (current_stalled || best >= config_.engine.switch_margin * current) {
        adopt(std::move(pool), have_plan ? "switched plan" : "adopted plan");
    } else {
        emit(TraceAction::Assess, "kept current plan: best alternative " + fmt_num(best) +
                                      " within margin of " + fmt_num(current));
        shared_->steps_used += 1;
        state_.tag = StateTag::A1;
    }
}

void Engine::step_b() {
    const bool has_manipulation =
        !domain_.manipulation_operators.empty() || domain_.propose_subproblem != nullptr;

    if (round_phase_ == 0) {
        auto found = knowledge_candidates();
        auto built = run_generators(domain_.candidate_generators);
        const std::size_t recalled = found.size();
        found.insert(found.end(), std::make_move_iterator(built.begin()),
                     std::make_move_iterator(built.end()));
        stage(std::move(found));
        emit(TraceAction::Generate,
             "recalled/retrieved " + std::to_string(recalled) + ", generated " +
                 std::to_string(built.size()) + ", staged " + std::to_string(staged_.size()));
        shared_->steps_used += 1;
        if (has_manipulation) {
            round_phase_ = 1;
            return;
        }
        finish_round();
        return;
    }

    auto made = run_generators(domain_.manipulation_operators);
    const std::size_t constructed = made.size();
    stage(std::move(made));
    emit(TraceAction::Manipulate,
         "manipulation produced " + std::to_string(constructed) + " candidate(s)");
    shared_->steps_used += 1;

    if (domain_.propose_subproblem && problem_.depth < config_.engine.max_depth) {
        if (auto sub = domain_.propose_subproblem(problem_, state_.generation_rounds)) {
            auto result = subgoal(*sub);
            if (result.solved && domain_.absorb_subsolution) {
                if (auto cand = domain_.absorb_subsolution(problem_, result))
                    stage({*cand});
            }
            if (outcome_)
                return; // budget died inside the subgoal
        }
    }
    finish_round();
}

void Engine::finish_round() {
    round_phase_ = 0;
    state_.generation_rounds += 1;
    double best = 0.0;
    for (const auto& [id, c] : staged_)
        best = std::max(best, scheduler::ratio(c));
    if (best >= config_.engine.acceptance_floor) {
        state_.tag = StateTag::A2;
    } else if (state_.generation_rounds >= config_.engine.fruitless_rounds) {
        state_.tag = StateTag::C;
    }
}

void Engine::step_c() {
    emit(TraceAction::Incubate, "break: " + std::to_string(config_.engine.incubation_ticks) +
                                    " decay tick(s), context cleared");
    shared_->steps_used += 1;
    for (int i = 0; i < config_.engine.incubation_ticks; ++i)
        memory_.decay_tick();
    staged_.clear();
    state_.generation_rounds = 0;
    state_.tag = StateTag::B;
}

domains::SubgoalResult Engine::subgoal(const Problem& sub) {
    if (sub.depth != problem_.depth + 1)
        throw DepthExceededError("subgoal depth must be parent depth + 1");
    if (sub.depth > config_.engine.max_depth)
        throw DepthExceededError("subgoal depth " + std::to_string(sub.depth) +
                                 " exceeds max depth " +
                                 std::to_string(config_.engine.max_depth));

    emit(TraceAction::SubgoalPush, "formulated subproblem " + sub.id + " at depth " +
                                       std::to_string(sub.depth));
    shared_->steps_used += 1;

    domains::DomainSpec sub_domain =
        sub.domain == domain_.tag ? domain_ : domains::make_domain(sub.domain, config_);
    Engine child(sub, casebase_, std::move(memory_), config_, std::move(sub_domain), shared_);
    child.start();
    while (!child.outcome_)
        child.step();
    memory_ = std::move(child.memory_);

    domains::SubgoalResult result;
    result.solved = child.outcome_->solved;
    result.value = child.outcome_->answer;
    result.solution = child.outcome_->solution;
    emit(TraceAction::SubgoalPop,
         result.solved ? "subproblem solved" : "subproblem failed; round stays fruitless");
    return result;
}

SolverState start_state(const Problem& problem, const retrieval::Casebase& casebase,
                        memory::MemoryGraph& mem, const RunConfig& config) {
    auto domain = domains::make_domain(problem.domain, config);
    auto cands = gather_knowledge(problem, casebase, mem, config, domain);
    int acceptable = 0;
    for (const auto& c : cands)
        if (scheduler::ratio(c) >= config.engine.acceptance_floor)
            ++acceptable;
    SolverState state;
    if (acceptable == 0) {
        state.tag = StateTag::B;
    } else {
        state.tag = acceptable == 1 ? StateTag::A1 : StateTag::A2;
        state.plan = scheduler::schedule(std::move(cands)).order;
    }
    return state;
}

RunResult run(Problem problem, retrieval::Casebase casebase, memory::MemoryGraph memory,
              RunConfig config) {
    Engine engine(std::move(problem), std::move(casebase), std::move(memory), config);
    return engine.run();
}

const char* to_string(StateTag tag) {
    switch (tag) {
    case StateTag::A1: return "A1";
    case StateTag::A2: return "A2";
    case StateTag::B: return "B";
    case StateTag::C: return "C";
    }
    return "B";
}

const char* to_string(TraceAction action) {
    switch (action) {
    case TraceAction::TestCandidate: return "test_candidate";
    case TraceAction::Generate: return "generate";
    case TraceAction::Manipulate: return "manipulate";
    case TraceAction::Assess: return "assess";
    case TraceAction::Incubate: return "incubate";
    case TraceAction::SubgoalPush: return "subgoal_push";
    case TraceAction::SubgoalPop: return "subgoal_pop";
    case TraceAction::Solved: return "solved";
    case TraceAction::Failed: return "failed";
    }
    return "generate";
}

} // namespace effsolve::engine
