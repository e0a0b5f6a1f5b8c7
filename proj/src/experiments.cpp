#include "effsolve/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "effsolve/domains.hpp"
#include "effsolve/engine.hpp"
#include "effsolve/json_io.hpp"
#include "effsolve/memory.hpp"
#include "effsolve/rand.hpp"
#include "effsolve/retrieval.hpp"
#include "effsolve/scheduler.hpp"

namespace effsolve::experiments {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<scheduler::Candidate> random_candidates(Rng& rng, int n) {
    std::vector<scheduler::Candidate> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        scheduler::Candidate c;
        c.id = "c" + std::to_string(i);
        c.p = rng.uniform01();                  // [0,1)
        c.t = 10.0 * (1.0 - rng.uniform01());   // (0,10]
        out.push_back(std::move(c));
    }
    return out;
}

// --- criterion 1: the ratio order is the brute-force optimum -------------

CriterionResult scheduler_optimality(std::uint64_t seed) {
    const auto start = Clock::now();
    Rng rng(seed * 2654435761u + 1);
    const int trials = 1000;
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
        const int n = 1 + static_cast<int>(rng.range(0, 6)); // sizes 1..7
        if (!scheduler::verify_optimal(random_candidates(rng, n)))
            ++failures;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream measured;
    measured << (trials - failures) << "/" << trials
             << " random candidate sets optimal within 1e-9 ("
             << elapsed << " s)";
    return {"scheduler-optimality", measured.str(), failures == 0 && elapsed < 30.0};
}

// --- criterion 2: adjacent exchange never helps the wrong order ----------

CriterionResult adjacent_exchange(std::uint64_t seed) {
    Rng rng(seed * 2654435761u + 2);
    const int trials = 10000;
    int order_violations = 0;
    int strict_violations = 0;
    for (int i = 0; i < trials; ++i) {
        const int n = 2 + static_cast<int>(rng.range(0, 5)); // 2..7
        auto cands = random_candidates(rng, n);
        const int idx = static_cast<int>(rng.range(0, n - 2));
        auto ordered = cands;
        if (scheduler::ratio(ordered[idx]) < scheduler::ratio(ordered[idx + 1]))
            std::swap(ordered[idx], ordered[idx + 1]);
        auto swapped = ordered;
        std::swap(swapped[idx], swapped[idx + 1]);

        const double good = scheduler::expected_time(ordered);
        const double bad = scheduler::expected_time(swapped);
        if (good > bad)
            ++order_violations;
        const double dr = std::abs(scheduler::ratio(ordered[idx]) -
                                   scheduler::ratio(ordered[idx + 1]));
        if (dr > 1e-12 && !(good < bad))
            ++strict_violations;
    }
    std::ostringstream measured;
    measured << trials << " adjacent pairs: " << order_violations
             << " order violations, " << strict_violations << " strictness violations";
    return {"adjacent-exchange", measured.str(),
            order_violations == 0 && strict_violations == 0};
}

// --- criterion 3: recall stays inside the seeds' graph components --------

CriterionResult recall_reachability(std::uint64_t seed) {
    Rng rng(seed * 2654435761u + 3);
    const int trials = 200;
    int violations = 0;
    long recalled_total = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 3 + static_cast<int>(rng.range(0, 27));
        memory::MemoryGraph graph;
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) {
            ids.push_back("k" + std::to_string(i));
            graph.add_concept({ids.back(), ids.back(), memory::ConceptKind::Feature, 0.0});
        }
        const int edges = static_cast<int>(rng.range(0, 3 * n));
        for (int e = 0; e < edges; ++e) {
            const auto a = rng.range(0, n - 1);
            auto b = rng.range(0, n - 1);
            if (a == b)
                continue;
            const int strengthenings = 1 + static_cast<int>(rng.range(0, 4));
            for (int s = 0; s < strengthenings; ++s)
                graph.hebb_update(ids[a], ids[b]);
        }
        std::set<std::string> seeds;
        const int num_seeds = 1 + static_cast<int>(rng.range(0, 2));
        for (int s = 0; s < num_seeds; ++s)
            seeds.insert(ids[rng.range(0, n - 1)]);

        // independent connectivity oracle over the undirected edge set
        std::map<std::string, std::vector<std::string>> undirected;
        for (const auto& assoc : graph.associations()) {
            undirected[assoc.from].push_back(assoc.to);
            undirected[assoc.to].push_back(assoc.from);
        }
        std::set<std::string> component(seeds.begin(), seeds.end());
        std::vector<std::string> frontier(seeds.begin(), seeds.end());
        while (!frontier.empty()) {
            const std::string u = frontier.back();
            frontier.pop_back();
            for (const auto& v : undirected[u])
                if (component.insert(v).second)
                    frontier.push_back(v);
        }

        graph.activate(seeds);
        for (const auto& [id, act] : graph.recall()) {
            ++recalled_total;
            if (!component.count(id))
                ++violations;
        }
    }
    std::ostringstream measured;
    measured << trials << " random graphs, " << recalled_total
             << " recalled concepts, " << violations << " outside a seed component";
    return {"recall-reachability", measured.str(), violations == 0};
}

// --- criterion 4: elimination beats blind enumeration --------------------

CriterionResult zebra_elimination(std::uint64_t seed) {
    const auto start = Clock::now();
    Rng rng(seed * 2654435761u + 4);
    const int trials = 100;
    long blind_total = 0;
    long eliminate_total = 0;
    int mismatches = 0;
    for (int i = 0; i < trials; ++i) {
        const int k = 4 + static_cast<int>(rng.range(0, 6));
        const auto instance = domains::random_three_house_instance(rng, k);
        const auto blind = domains::csp_enumerate_blind(instance);
        const auto elim = domains::csp_eliminate(instance);
        if (!blind.solution || !elim.solution ||
            blind.solution->arrangement != elim.solution->arrangement)
            ++mismatches;
        blind_total += blind.tested;
        eliminate_total += std::max<long>(elim.tested, 1);
    }
    const double reduction =
        static_cast<double>(blind_total) / static_cast<double>(eliminate_total);

    const auto zebra = domains::csp_eliminate(domains::zebra_instance(), /*count_all=*/true);
    const auto owner = zebra.solution
                           ? zebra.solution->who_owns(domains::zebra_instance(), "pet", "zebra")
                           : std::nullopt;
    const bool zebra_ok = zebra.solution && zebra.solutions_found == 1 &&
                          zebra.tested < 10000 && owner && *owner == "japanese";
    const double elapsed = seconds_since(start);

    std::ostringstream measured;
    measured << trials << " random 3-house instances: " << mismatches
             << " solution mismatches, tested " << blind_total << " blind vs "
             << eliminate_total << " eliminating (" << reduction
             << "x); zebra unique=" << (zebra.solutions_found == 1 ? "yes" : "no")
             << " tested=" << zebra.tested << " owner="
             << (owner ? *owner : std::string("?")) << " (" << elapsed << " s)";
    return {"zebra-elimination", measured.str(),
            mismatches == 0 && reduction >= 10.0 && zebra_ok && elapsed < 60.0};
}

// --- engine scenarios shared by criteria 5-8 -----------------------------

struct ScenarioRun {
    std::string name;
    int budget = 0;
    engine::RunResult result;
};

RunConfig scenario_config(std::uint64_t seed, int budget) {
    RunConfig cfg;
    cfg.engine.rng_seed = seed;
    cfg.engine.budget = budget;
    return cfg;
}

ScenarioRun run_gauss(std::uint64_t seed, std::int64_t n, int budget) {
    RunConfig cfg = scenario_config(seed, budget);
    ScenarioRun run;
    run.name = "gauss_" + std::to_string(n);
    run.budget = budget;
    run.result = engine::run(domains::gauss_problem(n), domains::gauss_novice_casebase(),
                             memory::MemoryGraph(cfg.memory_params), cfg);
    return run;
}

ScenarioRun run_analogy(std::uint64_t seed, const Problem& target,
                        const retrieval::Casebase& casebase,
                        retrieval::RetrievalMode mode, int budget) {
    RunConfig cfg = scenario_config(seed, budget);
    cfg.retrieval.mode = mode;
    ScenarioRun run;
    run.name = target.id + (mode == retrieval::RetrievalMode::WithAbstraction
                                ? "_abstraction"
                                : "_surface_only");
    run.budget = budget;
    run.result =
        engine::run(target, casebase, memory::MemoryGraph(cfg.memory_params), cfg);
    return run;
}

ScenarioRun run_zebra_engine(std::uint64_t seed, int budget) {
    RunConfig cfg = scenario_config(seed, budget);
    ScenarioRun run;
    run.name = "zebra_engine";
    run.budget = budget;
    run.result = engine::run(domains::csp_problem(domains::zebra_instance(), "zebra"),
                             retrieval::Casebase{}, memory::MemoryGraph(cfg.memory_params),
                             cfg);
    return run;
}

std::vector<ScenarioRun> experiment_scenarios(std::uint64_t seed) {
    std::vector<ScenarioRun> runs;
    runs.push_back(run_gauss(seed, 10, 1000));
    runs.push_back(run_gauss(seed, 1000000, 5000));
    const auto fx = domains::analogy_fixture();
    for (const auto& target : fx.targets) {
        runs.push_back(run_analogy(seed, target, fx.casebase,
                                   retrieval::RetrievalMode::WithAbstraction, 200));
        runs.push_back(run_analogy(seed, target, fx.casebase,
                                   retrieval::RetrievalMode::SurfaceOnly, 200));
    }
    runs.push_back(run_zebra_engine(seed, 1000));
    return runs;
}

const engine::TraceRecord* solved_record(const engine::RunResult& result) {
    for (const auto& rec : result.trace)
        if (rec.action == engine::TraceAction::Solved)
            return &rec;
    return nullptr;
}

// --- criterion 5: same gist solves, same surface does not ----------------

CriterionResult abstraction_gate(std::uint64_t seed) {
    const auto fx = domains::analogy_fixture();
    std::ostringstream measured;
    bool pass = true;
    for (const auto& target : fx.targets) {
        const auto with = run_analogy(seed, target, fx.casebase,
                                      retrieval::RetrievalMode::WithAbstraction, 200);
        const auto without = run_analogy(seed, target, fx.casebase,
                                         retrieval::RetrievalMode::SurfaceOnly, 200);
        const auto* word = std::get_if<WordProblem>(&target.data);
        const bool answer_ok = with.result.answer && word &&
                               std::abs(*with.result.answer - word->answer) <= 1e-9;
        if (!(with.result.solved && answer_ok && !without.result.solved))
            pass = false;
        measured << target.id << ": abstraction "
                 << (with.result.solved ? "solved" : "failed") << " (answer "
                 << (with.result.answer ? *with.result.answer : 0.0)
                 << "), surface-only "
                 << (without.result.solved ? "solved" : "failed") << "; ";
    }
    const auto& fly = fx.targets.front();
    const auto fly_run = run_analogy(seed, fly, fx.casebase,
                                     retrieval::RetrievalMode::WithAbstraction, 200);
    if (!(fly_run.result.answer && *fly_run.result.answer == 125.0))
        pass = false;
    measured << "fly distance = "
             << (fly_run.result.answer ? *fly_run.result.answer : 0.0) << " miles";
    return {"abstraction-gate", measured.str(), pass};
}

// --- criterion 6: pick the drudge work small, the search large -----------

CriterionResult effectivity_tradeoff(std::uint64_t seed) {
    const auto small = run_gauss(seed, 10, 1000);
    const auto big = run_gauss(seed, 1000000, 5000);

    const auto* small_solved = solved_record(small.result);
    const bool small_ok = small.result.solved && small_solved &&
                          small_solved->candidate_id == "sum_by_iteration" &&
                          small.result.answer && *small.result.answer == 55.0;

    const auto* big_solved = solved_record(big.result);
    bool big_never_iterated = true;
    for (const auto& rec : big.result.trace) {
        const bool is_test = rec.action == engine::TraceAction::TestCandidate ||
                             rec.action == engine::TraceAction::Solved;
        if (is_test && rec.candidate_id &&
            (*rec.candidate_id == "sum_by_iteration" || *rec.candidate_id == "iterate_add"))
            big_never_iterated = false;
    }
    const bool big_ok = big.result.solved && big_solved &&
                        big_solved->candidate_id == "search_for_better" &&
                        big.result.answer && *big.result.answer == 500000500000.0 &&
                        big_never_iterated;

    // both methods agree with a running reference for every n up to 1e4
    bool methods_agree = true;
    std::int64_t running = 0;
    for (std::int64_t n = 1; n <= 10000; ++n) {
        running += n;
        if (domains::gauss_iterate(n) != running || domains::gauss_pairing(n) != running) {
            methods_agree = false;
            break;
        }
    }

    std::ostringstream measured;
    measured << "n=10 solved by "
             << (small_solved && small_solved->candidate_id ? *small_solved->candidate_id
                                                            : std::string("-"))
             << "; n=1e6 solved by "
             << (big_solved && big_solved->candidate_id ? *big_solved->candidate_id
                                                        : std::string("-"))
             << (big_never_iterated ? " without touching iteration"
                                    : " but iteration was tested")
             << "; methods agree with direct summation up to 1e4: "
             << (methods_agree ? "yes" : "no");
    return {"effectivity-tradeoff", measured.str(), small_ok && big_ok && methods_agree};
}

// --- criterion 7: trace conformance over all scenarios -------------------

CriterionResult state_machine(std::uint64_t seed) {
    const auto runs = experiment_scenarios(seed);
    int bad_state = 0;
    int solved_outside_a1 = 0;
    int order_violations = 0;
    int budget_violations = 0;
    int incubation_violations = 0;
    long records = 0;

    RunConfig defaults;
    const int fruitless = defaults.engine.fruitless_rounds;

    for (const auto& run : runs) {
        records += static_cast<long>(run.result.trace.size());
        int consumed = 0;
        double last_ratio = 0.0;
        bool in_a1_block = false;
        int recent_b_generates = 0;

        for (const auto& rec : run.result.trace) {
            switch (rec.state) {
            case engine::StateTag::A1:
            case engine::StateTag::A2:
            case engine::StateTag::B:
            case engine::StateTag::C:
                break;
            default:
                ++bad_state;
            }
            consumed += engine::step_cost(rec);

            if (rec.action == engine::TraceAction::Solved &&
                rec.state != engine::StateTag::A1)
                ++solved_outside_a1;

            const bool is_test = rec.action == engine::TraceAction::TestCandidate ||
                                 rec.action == engine::TraceAction::Solved;
            if (rec.state == engine::StateTag::A1 && is_test) {
                if (in_a1_block && rec.ratio && *rec.ratio > last_ratio + 1e-12)
                    ++order_violations;
                if (rec.ratio)
                    last_ratio = *rec.ratio;
                in_a1_block = true;
            } else if (rec.state != engine::StateTag::A1) {
                in_a1_block = false;
            }

            if (rec.state == engine::StateTag::B &&
                rec.action == engine::TraceAction::Generate) {
                ++recent_b_generates;
            } else if (rec.state == engine::StateTag::C) {
                if (recent_b_generates < fruitless)
                    ++incubation_violations;
                recent_b_generates = 0;
            } else if (rec.state != engine::StateTag::B) {
                recent_b_generates = 0;
            }
        }
        if (consumed != run.result.steps || run.result.steps > run.budget)
            ++budget_violations;
    }

    std::ostringstream measured;
    measured << records << " trace records over " << runs.size() << " runs: "
             << bad_state << " bad states, " << solved_outside_a1
             << " solved outside A1, " << order_violations
             << " plan-order violations, " << budget_violations
             << " budget mismatches, " << incubation_violations
             << " premature breaks";
    return {"state-machine", measured.str(),
            bad_state == 0 && solved_outside_a1 == 0 && order_violations == 0 &&
                budget_violations == 0 && incubation_violations == 0};
}

// --- criterion 8: identical flags and seed, identical bytes --------------

CriterionResult determinism(std::uint64_t seed) {
    const auto once = experiment_scenarios(seed);
    const auto twice = experiment_scenarios(seed);
    int mismatches = 0;
    for (std::size_t i = 0; i < once.size(); ++i) {
        if (io::trace_to_jsonl(once[i].result.trace) !=
            io::trace_to_jsonl(twice[i].result.trace))
            ++mismatches;
    }
    std::ostringstream measured;
    measured << once.size() << " scenario traces re-run: " << mismatches
             << " byte mismatches";
    return {"determinism", measured.str(), mismatches == 0};
}

} // namespace

std::vector<std::string> criterion_names() {
    return {"scheduler-optimality", "adjacent-exchange", "recall-reachability",
            "zebra-elimination",    "abstraction-gate",  "effectivity-tradeoff",
            "state-machine",        "determinism"};
}

CriterionResult run_criterion(const std::string& name, std::uint64_t seed) {
    if (name == "scheduler-optimality") return scheduler_optimality(seed);
    if (name == "adjacent-exchange") return adjacent_exchange(seed);
    if (name == "recall-reachability") return recall_reachability(seed);
    if (name == "zebra-elimination") return zebra_elimination(seed);
    if (name == "abstraction-gate") return abstraction_gate(seed);
    if (name == "effectivity-tradeoff") return effectivity_tradeoff(seed);
    if (name == "state-machine") return state_machine(seed);
    if (name == "determinism") return determinism(seed);
    throw InputError("unknown criterion: " + name);
}

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::string& only) {
    std::vector<CriterionResult> out;
    for (const auto& name : criterion_names()) {
        if (!only.empty() && name.find(only) == std::string::npos)
            continue;
        out.push_back(run_criterion(name, seed));
    }
    return out;
}

} // namespace effsolve::experiments
