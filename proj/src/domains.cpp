#include "effsolve/domains.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace effsolve::domains {

using retrieval::Case;
using retrieval::Casebase;
using retrieval::FeatureSet;
using scheduler::Candidate;
using scheduler::Source;

// ---------------------------------------------------------------------------
// Integer summation
// ---------------------------------------------------------------------------

FeatureSet gauss_surface() {
    return FeatureSet{{"summation", 1.0}, {"integer_range", 1.0}, {"arithmetic", 1.0}};
}

Problem gauss_problem(std::int64_t n) {
    Problem p;
    p.id = "gauss_" + std::to_string(n);
    p.domain = "gauss";
    p.surface = gauss_surface();
    p.params["n"] = static_cast<double>(n);
    return p;
}

Casebase gauss_novice_casebase() {
    Casebase cb;
    Case iterate;
    iterate.id = "sum_by_iteration";
    iterate.surface = gauss_surface();
    iterate.gist = gauss_surface();
    iterate.method = "iterate_add";
    iterate.confidence = 1.0;
    iterate.cost_estimate = 1.0;
    cb.cases.push_back(iterate);
    return cb;
}

Casebase gauss_expert_casebase() {
    Casebase cb = gauss_novice_casebase();
    Case pairing;
    pairing.id = "sum_by_pairing";
    pairing.surface = gauss_surface();
    pairing.gist = gauss_surface();
    pairing.method = "pairing_formula";
    pairing.confidence = 1.0;
    pairing.cost_estimate = 1.0;
    cb.cases.push_back(pairing);
    return cb;
}

std::int64_t gauss_iterate(std::int64_t n) {
    std::int64_t sum = 0;
    for (std::int64_t i = 1; i <= n; ++i)
        sum += i;
    return sum;
}

std::int64_t gauss_pairing(std::int64_t n) {
    return n % 2 == 0 ? (n / 2) * (n + 1) : ((n + 1) / 2) * n;
}

std::vector<Candidate> gauss_candidates(std::int64_t n, const Casebase& casebase,
                                        const GaussParams& params,
                                        const retrieval::RetrievalOptions& opts) {
    if (n < 1)
        throw InputError("summation needs n >= 1");
    std::vector<Candidate> out;

    Candidate iterate;
    iterate.id = "iterate_add";
    iterate.p = 1.0;
    iterate.t = static_cast<double>(n) * params.c_add;
    iterate.source = Source::DomainBuiltin;
    iterate.payload = "iterate_add";
    out.push_back(iterate);

    const auto hits = retrieval::retrieve(gauss_surface(), casebase.cases,
                                          casebase.taxonomy, opts.k, opts.mode, opts);
    const bool pairing_retrievable =
        std::any_of(hits.begin(), hits.end(), [&](const retrieval::RetrievalResult& r) {
            if (r.score <= 0.0)
                return false;
            auto it = std::find_if(casebase.cases.begin(), casebase.cases.end(),
                                   [&](const Case& c) { return c.id == r.case_id; });
            return it != casebase.cases.end() && it->method == "pairing_formula";
        });
    if (pairing_retrievable) {
        Candidate pairing;
        pairing.id = "pairing_formula";
        pairing.p = 1.0;
        pairing.t = params.c_formula;
        pairing.source = Source::DomainBuiltin;
        pairing.payload = "pairing_formula";
        out.push_back(pairing);
    }

    Candidate search;
    search.id = "search_for_better";
    search.p = params.p_search;
    search.t = params.t_search;
    search.source = Source::Constructed;
    search.payload = "search_for_better";
    out.push_back(search);
    return out;
}

// ---------------------------------------------------------------------------
// CSP machinery
// ---------------------------------------------------------------------------

void CspInstance::validate() const {
    if (houses < 1)
        throw InputError("csp instance needs at least one house");
    if (attributes.empty())
        throw InputError("csp instance needs at least one attribute");
    for (const CspAttribute& attr : attributes) {
        if (static_cast<int>(attr.values.size()) != houses)
            throw InputError("attribute " + attr.name + " must have exactly " +
                             std::to_string(houses) + " values");
        std::set<std::string> uniq(attr.values.begin(), attr.values.end());
        if (static_cast<int>(uniq.size()) != houses)
            throw InputError("attribute " + attr.name + " has duplicate values");
    }
    auto value_index = [&](const std::string& attr, const std::string& value) {
        for (const CspAttribute& a : attributes) {
            if (a.name != attr)
                continue;
            if (std::find(a.values.begin(), a.values.end(), value) == a.values.end())
                throw InputError("unknown value " + value + " for attribute " + attr);
            return;
        }
        throw InputError("unknown attribute: " + attr);
    };
    for (const CspConstraint& c : constraints) {
        value_index(c.attr1, c.value1);
        if (c.kind == CspConstraintKind::Fixed) {
            if (c.position < 1 || c.position > houses)
                throw InputError("fixed position out of range");
        } else {
            value_index(c.attr2, c.value2);
        }
    }
}

namespace {

struct CompiledCsp {
    int n = 0;
    int num_attrs = 0;
    struct Constraint {
        CspConstraintKind kind;
        int a1, v1, a2, v2; // attribute / value indices
        int pos;            // 0-based, Fixed only
    };
    std::vector<Constraint> constraints;

    static CompiledCsp compile(const CspInstance& instance) {
        instance.validate();
        CompiledCsp out;
        out.n = instance.houses;
        out.num_attrs = static_cast<int>(instance.attributes.size());
        auto attr_index = [&](const std::string& name) {
            for (int i = 0; i < out.num_attrs; ++i)
                if (instance.attributes[i].name == name)
                    return i;
            throw InputError("unknown attribute: " + name);
        };
        auto value_index = [&](int attr, const std::string& value) {
            const auto& vals = instance.attributes[attr].values;
            return static_cast<int>(std::find(vals.begin(), vals.end(), value) -
                                    vals.begin());
        };
        for (const CspConstraint& c : instance.constraints) {
            Constraint cc{};
            cc.kind = c.kind;
            cc.a1 = attr_index(c.attr1);
            cc.v1 = value_index(cc.a1, c.value1);
            if (c.kind == CspConstraintKind::Fixed) {
                cc.a2 = -1;
                cc.v2 = -1;
                cc.pos = c.position - 1;
            } else {
                cc.a2 = attr_index(c.attr2);
                cc.v2 = value_index(cc.a2, c.value2);
                cc.pos = -1;
            }
            out.constraints.push_back(cc);
        }
        return out;
    }

    // position of value v of attribute a under the given arrangement
    static int pos_of(const std::vector<std::vector<int>>& arrangement, int a, int v) {
        const auto& row = arrangement[a];
        for (int h = 0; h < static_cast<int>(row.size()); ++h)
            if (row[h] == v)
                return h;
        return -1;
    }

    bool check(const Constraint& c, const std::vector<std::vector<int>>& arrangement) const {
        const int p1 = pos_of(arrangement, c.a1, c.v1);
        switch (c.kind) {
        case CspConstraintKind::Fixed:
            return p1 == c.pos;
        case CspConstraintKind::SameHouse:
            return p1 == pos_of(arrangement, c.a2, c.v2);
        case CspConstraintKind::Adjacent:
            return std::abs(p1 - pos_of(arrangement, c.a2, c.v2)) == 1;
        case CspConstraintKind::LeftOf:
            return p1 + 1 == pos_of(arrangement, c.a2, c.v2);
        }
        return false;
    }

    bool satisfies(const std::vector<std::vector<int>>& arrangement) const {
        for (const Constraint& c : constraints)
            if (!check(c, arrangement))
                return false;
        return true;
    }
};

double blind_space_size(const CspInstance& instance) {
    double fact = 1.0;
    for (int i = 2; i <= instance.houses; ++i)
        fact *= i;
    return std::pow(fact, static_cast<double>(instance.attributes.size()));
}

} // namespace

bool csp_satisfies(const CspInstance& instance, const CspSolution& solution) {
    return CompiledCsp::compile(instance).satisfies(solution.arrangement);
}

std::string CspSolution::render(const CspInstance& instance) const {
    std::ostringstream out;
    for (std::size_t a = 0; a < instance.attributes.size(); ++a) {
        if (a)
            out << "; ";
        out << instance.attributes[a].name << ":";
        for (int h = 0; h < instance.houses; ++h)
            out << (h ? "," : "") << instance.attributes[a].values[arrangement[a][h]];
    }
    return out.str();
}

std::optional<std::string> CspSolution::who_owns(const CspInstance& instance,
                                                 const std::string& attr,
                                                 const std::string& value) const {
    int attr_idx = -1;
    int value_idx = -1;
    for (std::size_t a = 0; a < instance.attributes.size(); ++a) {
        if (instance.attributes[a].name != attr)
            continue;
        attr_idx = static_cast<int>(a);
        const auto& vals = instance.attributes[a].values;
        auto it = std::find(vals.begin(), vals.end(), value);
        if (it == vals.end())
            return std::nullopt;
        value_idx = static_cast<int>(it - vals.begin());
    }
    if (attr_idx < 0)
        return std::nullopt;
    int house = -1;
    for (int h = 0; h < instance.houses; ++h)
        if (arrangement[attr_idx][h] == value_idx)
            house = h;
    if (house < 0)
        return std::nullopt;
    // prefer a nationality-like attribute for the answer
    int who_attr = -1;
    for (std::size_t a = 0; a < instance.attributes.size(); ++a) {
        const std::string& name = instance.attributes[a].name;
        if (name == "nationality" || name == "nation") {
            who_attr = static_cast<int>(a);
            break;
        }
    }
    if (who_attr < 0)
        who_attr = attr_idx == 0 ? (instance.attributes.size() > 1 ? 1 : 0) : 0;
    return instance.attributes[who_attr].values[arrangement[who_attr][house]];
}

CspResult csp_enumerate_blind(const CspInstance& instance) {
    const CompiledCsp csp = CompiledCsp::compile(instance);
    if (blind_space_size(instance) > 1e6)
        throw TooLargeError("blind enumeration over " +
                            std::to_string(blind_space_size(instance)) +
                            " assignments refused");

    CspResult result;
    std::vector<std::vector<int>> arrangement(csp.num_attrs);
    std::vector<int> base(csp.n);
    std::iota(base.begin(), base.end(), 0);

    // lexicographic odometer: earlier attributes are more significant
    std::function<bool(int)> enumerate = [&](int depth) -> bool {
        if (depth == csp.num_attrs) {
            ++result.tested;
            if (csp.satisfies(arrangement)) {
                result.solution = CspSolution{arrangement};
                result.solutions_found = 1;
                return true;
            }
            return false;
        }
        arrangement[depth] = base;
        do {
            if (enumerate(depth + 1))
                return true;
        } while (std::next_permutation(arrangement[depth].begin(), arrangement[depth].end()));
        return false;
    };
    enumerate(0);
    return result;
}

CspResult csp_eliminate(const CspInstance& instance, bool count_all) {
    const CompiledCsp csp = CompiledCsp::compile(instance);
    const int n = csp.n;
    const std::uint32_t full = (1u << n) - 1u;

    // position domains: domains[a][v] = bitmask of houses value v may occupy
    std::vector<std::vector<std::uint32_t>> domains(
        csp.num_attrs, std::vector<std::uint32_t>(n, full));

    auto shrink = [&](int a, int v, std::uint32_t mask, bool& changed, bool& dead) {
        const std::uint32_t next = domains[a][v] & mask;
        if (next != domains[a][v]) {
            domains[a][v] = next;
            changed = true;
            if (next == 0)
                dead = true;
        }
    };

    bool dead = false;
    bool changed = true;
    while (changed && !dead) {
        changed = false;
        for (const auto& c : csp.constraints) {
            switch (c.kind) {
            case CspConstraintKind::Fixed:
                shrink(c.a1, c.v1, 1u << c.pos, changed, dead);
                break;
            case CspConstraintKind::SameHouse: {
                const std::uint32_t both = domains[c.a1][c.v1] & domains[c.a2][c.v2];
                shrink(c.a1, c.v1, both, changed, dead);
                shrink(c.a2, c.v2, both, changed, dead);
                break;
            }
            case CspConstraintKind::LeftOf:
                shrink(c.a1, c.v1, (domains[c.a2][c.v2] >> 1) & full, changed, dead);
                shrink(c.a2, c.v2, (domains[c.a1][c.v1] << 1) & full, changed, dead);
                break;
            case CspConstraintKind::Adjacent: {
                const std::uint32_t d2 = domains[c.a2][c.v2];
                shrink(c.a1, c.v1, ((d2 << 1) | (d2 >> 1)) & full, changed, dead);
                const std::uint32_t d1 = domains[c.a1][c.v1];
                shrink(c.a2, c.v2, ((d1 << 1) | (d1 >> 1)) & full, changed, dead);
                break;
            }
            }
            if (dead)
                break;
        }
        if (dead)
            break;
        // all-different within an attribute: a pinned value excludes its
        // house from every sibling value
        for (int a = 0; a < csp.num_attrs && !dead; ++a) {
            for (int v = 0; v < n && !dead; ++v) {
                const std::uint32_t d = domains[a][v];
                if (std::popcount(d) != 1)
                    continue;
                for (int u = 0; u < n && !dead; ++u) {
                    if (u == v)
                        continue;
                    shrink(a, u, ~d, changed, dead);
                }
            }
        }
    }

    CspResult result;
    if (dead)
        return result; // pruned to contradiction without testing anything

    // constraints checkable once `depth` attributes are assigned
    std::vector<std::vector<CompiledCsp::Constraint>> by_depth(csp.num_attrs + 1);
    for (const auto& c : csp.constraints) {
        const int need =
            c.kind == CspConstraintKind::Fixed ? c.a1 + 1 : std::max(c.a1, c.a2) + 1;
        by_depth[need].push_back(c);
    }

    std::vector<std::vector<int>> arrangement(csp.num_attrs);
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);

    std::function<bool(int)> search = [&](int depth) -> bool {
        if (depth == csp.num_attrs) {
            ++result.tested;
            if (csp.satisfies(arrangement)) {
                ++result.solutions_found;
                if (!result.solution)
                    result.solution = CspSolution{arrangement};
                if (!count_all)
                    return true;
            }
            return false;
        }
        arrangement[depth] = base;
        do {
            bool viable = true;
            for (int h = 0; h < n && viable; ++h)
                viable = (domains[depth][arrangement[depth][h]] >> h) & 1u;
            for (std::size_t i = 0; i < by_depth[depth + 1].size() && viable; ++i)
                viable = csp.check(by_depth[depth + 1][i], arrangement);
            if (viable && search(depth + 1))
                return true;
        } while (std::next_permutation(arrangement[depth].begin(), arrangement[depth].end()));
        return false;
    };
    search(0);
    return result;
}

CspInstance zebra_instance() {
    CspInstance z;
    z.houses = 5;
    z.attributes = {
        {"color", {"red", "green", "ivory", "yellow", "blue"}},
        {"nationality", {"englishman", "spaniard", "ukrainian", "norwegian", "japanese"}},
        {"drink", {"coffee", "tea", "milk", "orange_juice", "water"}},
        {"smoke", {"old_gold", "kools", "chesterfields", "lucky_strike", "parliaments"}},
        {"pet", {"dog", "snails", "fox", "horse", "zebra"}},
    };
    using K = CspConstraintKind;
    auto pair = [](K k, std::string a1, std::string v1, std::string a2, std::string v2) {
        CspConstraint c;
        c.kind = k;
        c.attr1 = std::move(a1);
        c.value1 = std::move(v1);
        c.attr2 = std::move(a2);
        c.value2 = std::move(v2);
        return c;
    };
    auto fixed = [](std::string a, std::string v, int pos) {
        CspConstraint c;
        c.kind = K::Fixed;
        c.attr1 = std::move(a);
        c.value1 = std::move(v);
        c.position = pos;
        return c;
    };
    z.constraints = {
        pair(K::SameHouse, "nationality", "englishman", "color", "red"),
        pair(K::SameHouse, "nationality", "spaniard", "pet", "dog"),
        pair(K::SameHouse, "drink", "coffee", "color", "green"),
        pair(K::SameHouse, "nationality", "ukrainian", "drink", "tea"),
        pair(K::LeftOf, "color", "ivory", "color", "green"),
        pair(K::SameHouse, "smoke", "old_gold", "pet", "snails"),
        pair(K::SameHouse, "smoke", "kools", "color", "yellow"),
        fixed("drink", "milk", 3),
        fixed("nationality", "norwegian", 1),
        pair(K::Adjacent, "smoke", "chesterfields", "pet", "fox"),
        pair(K::Adjacent, "smoke", "kools", "pet", "horse"),
        pair(K::SameHouse, "smoke", "lucky_strike", "drink", "orange_juice"),
        pair(K::SameHouse, "nationality", "japanese", "smoke", "parliaments"),
        pair(K::Adjacent, "nationality", "norwegian", "color", "blue"),
    };
    return z;
}

CspInstance csp_three_house_fixture() {
    CspInstance f;
    f.houses = 3;
    f.attributes = {
        {"color", {"red", "green", "blue"}},
        {"nation", {"english", "spanish", "norwegian"}},
        {"pet", {"dog", "fox", "zebra"}},
    };
    using K = CspConstraintKind;
    CspConstraint c1{K::Fixed, "nation", "norwegian", "", "", 1};
    CspConstraint c2{K::SameHouse, "nation", "english", "color", "red", 0};
    CspConstraint c3{K::SameHouse, "nation", "spanish", "pet", "dog", 0};
    CspConstraint c4{K::LeftOf, "color", "green", "color", "red", 0};
    CspConstraint c5{K::SameHouse, "color", "blue", "pet", "dog", 0};
    CspConstraint c6{K::SameHouse, "nation", "english", "pet", "zebra", 0};
    f.constraints = {c1, c2, c3, c4, c5, c6};
    return f;
}

CspInstance csp_three_house_unsat_fixture() {
    CspInstance f = csp_three_house_fixture();
    f.constraints.clear();
    CspConstraint a{CspConstraintKind::Fixed, "color", "red", "", "", 1};
    CspConstraint b{CspConstraintKind::Fixed, "color", "red", "", "", 2};
    f.constraints = {a, b};
    return f;
}

CspInstance random_three_house_instance(Rng& rng, int num_constraints) {
    CspInstance f = csp_three_house_fixture();
    f.constraints.clear();

    // hidden solution the sampled constraints will be consistent with
    std::vector<std::vector<int>> sol(3, std::vector<int>{0, 1, 2});
    for (auto& row : sol)
        for (int i = 2; i > 0; --i)
            std::swap(row[i], row[static_cast<int>(rng.range(0, i))]);

    auto value_at = [&](int attr, int house) {
        return f.attributes[attr].values[sol[attr][house]];
    };

    for (int i = 0; i < num_constraints; ++i) {
        const int kind = static_cast<int>(rng.range(0, 3));
        CspConstraint c;
        switch (kind) {
        case 0: { // same_house
            const int h = static_cast<int>(rng.range(0, 2));
            const int a1 = static_cast<int>(rng.range(0, 2));
            int a2 = static_cast<int>(rng.range(0, 1));
            if (a2 >= a1)
                ++a2; // distinct attribute
            c.kind = CspConstraintKind::SameHouse;
            c.attr1 = f.attributes[a1].name;
            c.value1 = value_at(a1, h);
            c.attr2 = f.attributes[a2].name;
            c.value2 = value_at(a2, h);
            break;
        }
        case 1: { // adjacent
            const int p = static_cast<int>(rng.range(0, 1));
            const int a1 = static_cast<int>(rng.range(0, 2));
            const int a2 = static_cast<int>(rng.range(0, 2));
            c.kind = CspConstraintKind::Adjacent;
            c.attr1 = f.attributes[a1].name;
            c.value1 = value_at(a1, p);
            c.attr2 = f.attributes[a2].name;
            c.value2 = value_at(a2, p + 1);
            break;
        }
        case 2: { // left_of
            const int p = static_cast<int>(rng.range(0, 1));
            const int a1 = static_cast<int>(rng.range(0, 2));
            const int a2 = static_cast<int>(rng.range(0, 2));
            c.kind = CspConstraintKind::LeftOf;
            c.attr1 = f.attributes[a1].name;
            c.value1 = value_at(a1, p);
            c.attr2 = f.attributes[a2].name;
            c.value2 = value_at(a2, p + 1);
            break;
        }
        default: { // fixed
            const int p = static_cast<int>(rng.range(0, 2));
            const int a = static_cast<int>(rng.range(0, 2));
            c.kind = CspConstraintKind::Fixed;
            c.attr1 = f.attributes[a].name;
            c.value1 = value_at(a, p);
            c.position = p + 1;
            break;
        }
        }
        f.constraints.push_back(c);
    }
    return f;
}

Problem csp_problem(CspInstance instance, std::string id) {
    Problem p;
    p.id = std::move(id);
    p.domain = "csp";
    p.surface = FeatureSet{{"constraints", 1.0}, {"assignment_grid", 1.0}};
    p.params["houses"] = static_cast<double>(instance.houses);
    p.data = std::move(instance);
    return p;
}

// ---------------------------------------------------------------------------
// Analogy fixture
// ---------------------------------------------------------------------------

AnalogyFixture analogy_fixture() {
    AnalogyFixture fx;

    auto& tax = fx.casebase.taxonomy;
    for (const char* rate : {"fly_speed", "bird_speed", "train_speed", "current_speed"})
        tax.add_is_a(rate, "rate");
    for (const char* time : {"chase_minutes", "travel_hours", "transit_minutes", "drift_hours"})
        tax.add_is_a(time, "time");
    for (const char* dist : {"mile_separation", "km_gap", "tunnel_length", "river_width"})
        tax.add_is_a(dist, "distance");

    const FeatureSet core{{"rate", 1.0}, {"time", 1.0}, {"distance", 1.0}};

    Case train;
    train.id = "train_through_tunnel";
    train.surface = FeatureSet{
        {"train_speed", 1.0}, {"transit_minutes", 1.0}, {"tunnel_length", 1.0}, {"whistle", 0.1}};
    train.gist = core;
    train.method = "rate_time_distance";
    train.confidence = 0.9;
    train.cost_estimate = 3.0;
    fx.casebase.cases.push_back(train);

    Case raft;
    raft.id = "raft_drifting_downstream";
    raft.surface = FeatureSet{
        {"current_speed", 1.0}, {"drift_hours", 1.0}, {"river_width", 1.0}, {"paddling", 0.1}};
    raft.gist = core;
    raft.method = "rate_time_distance";
    raft.confidence = 0.9;
    raft.cost_estimate = 3.0;
    fx.casebase.cases.push_back(raft);

    auto target = [](std::string id, FeatureSet surface, double separation, double speed_a,
                     double speed_b, double shuttle_speed, double answer) {
        Problem p;
        p.id = std::move(id);
        p.domain = "analogy";
        p.surface = surface;
        WordProblem w;
        w.surface = std::move(surface);
        w.quantities = {{"separation", separation},
                        {"speed_a", speed_a},
                        {"speed_b", speed_b},
                        {"shuttle_speed", shuttle_speed}};
        w.answer = answer;
        p.data = std::move(w);
        return p;
    };

    // collision after 50/(18+22) = 1.25 h; the fly covers 100 * 1.25 = 125 miles
    fx.targets.push_back(target(
        "fly_between_cyclists",
        FeatureSet{
            {"fly_speed", 1.0}, {"chase_minutes", 1.0}, {"mile_separation", 1.0}, {"zigzag_path", 0.2}},
        50.0, 18.0, 22.0, 100.0, 125.0));

    // trains meet after 60/(25+35) = 1 h; the bird covers 90
    fx.targets.push_back(target(
        "bird_between_trains",
        FeatureSet{
            {"bird_speed", 1.0}, {"travel_hours", 1.0}, {"km_gap", 1.0}, {"swoop_pattern", 0.3}},
        60.0, 25.0, 35.0, 90.0, 90.0));

    return fx;
}

// ---------------------------------------------------------------------------
// Domain registry
// ---------------------------------------------------------------------------

namespace {

DomainSpec make_gauss_domain(const RunConfig& config) {
    DomainSpec d;
    d.tag = "gauss";
    auto n_of = [](const Problem& p) {
        return static_cast<std::int64_t>(p.param("n", 0.0));
    };
    d.candidate_generators.push_back([n_of](const Problem& p, const GenContext& ctx) {
        auto all = gauss_candidates(n_of(p), ctx.casebase, ctx.config.gauss,
                                    ctx.config.retrieval);
        std::erase_if(all, [](const Candidate& c) { return c.payload == "search_for_better"; });
        return all;
    });
    d.manipulation_operators.push_back([n_of](const Problem& p, const GenContext& ctx) {
        auto all = gauss_candidates(n_of(p), ctx.casebase, ctx.config.gauss,
                                    ctx.config.retrieval);
        std::erase_if(all, [](const Candidate& c) { return c.payload != "search_for_better"; });
        return all;
    });
    d.cost_model = [n_of, gp = config.gauss](const std::string& method, const Problem& p) {
        if (method == "iterate_add")
            return static_cast<double>(n_of(p)) * gp.c_add;
        if (method == "pairing_formula")
            return gp.c_formula;
        return 1.0;
    };
    d.evaluate = [n_of](const Candidate& c, const Problem& p, Rng& rng) {
        EvalOutcome out;
        const std::int64_t n = n_of(p);
        if (c.payload == "iterate_add") {
            out.success = true;
            out.value = static_cast<double>(gauss_iterate(n));
            out.note = "summed 1.." + std::to_string(n) + " directly";
        } else if (c.payload == "pairing_formula") {
            out.success = true;
            out.value = static_cast<double>(gauss_pairing(n));
            out.note = "paired ends: n*(n+1)/2";
        } else if (c.payload == "search_for_better") {
            if (rng.bernoulli(c.p)) {
                out.success = true;
                out.value = static_cast<double>(gauss_pairing(n));
                out.note = "search uncovered the pairing structure";
            } else {
                out.note = "search attempt found nothing";
            }
        } else {
            out.note = "unknown method: " + c.payload;
        }
        return out;
    };
    d.goal_check = [n_of](const Problem& p, const EvalOutcome& out) {
        if (!out.success || !out.value)
            return false;
        return *out.value == static_cast<double>(gauss_pairing(n_of(p)));
    };
    return d;
}

DomainSpec make_csp_domain() {
    DomainSpec d;
    d.tag = "csp";
    d.candidate_generators.push_back([](const Problem& p, const GenContext& ctx) {
        std::vector<Candidate> out;
        const auto* instance = std::get_if<CspInstance>(&p.data);
        if (!instance)
            return out;
        Candidate eliminate;
        eliminate.id = "csp_eliminate";
        eliminate.p = 1.0;
        eliminate.t = ctx.config.csp.t_eliminate;
        eliminate.source = Source::DomainBuiltin;
        eliminate.payload = "csp_eliminate";
        out.push_back(eliminate);
        Candidate blind;
        blind.id = "csp_blind";
        blind.p = 1.0;
        blind.t = std::max(1.0, blind_space_size(*instance) * ctx.config.csp.c_check);
        blind.source = Source::DomainBuiltin;
        blind.payload = "csp_blind";
        out.push_back(blind);
        return out;
    });
    d.cost_model = [](const std::string&, const Problem&) { return 1.0; };
    d.evaluate = [](const Candidate& c, const Problem& p, Rng&) {
        EvalOutcome out;
        const auto* instance = std::get_if<CspInstance>(&p.data);
        if (!instance) {
            out.note = "problem carries no csp instance";
            return out;
        }
        CspResult res;
        try {
            res = c.payload == "csp_blind" ? csp_enumerate_blind(*instance)
                                           : csp_eliminate(*instance);
        } catch (const TooLargeError& e) {
            out.note = e.what();
            return out;
        }
        if (!res.solution) {
            out.note = "unsatisfiable after " + std::to_string(res.tested) + " tests";
            return out;
        }
        out.success = true;
        out.solution = res.solution->render(*instance);
        out.note = "tested " + std::to_string(res.tested) + " full assignments";
        if (auto owner = res.solution->who_owns(*instance, "pet", "zebra"))
            out.note += "; zebra owner: " + *owner;
        return out;
    };
    d.goal_check = [](const Problem& p, const EvalOutcome& out) {
        return out.success && !out.solution.empty() &&
               std::holds_alternative<CspInstance>(p.data);
    };
    return d;
}

DomainSpec make_analogy_domain() {
    DomainSpec d;
    d.tag = "analogy";
    d.cost_model = [](const std::string&, const Problem&) { return 1.0; };
    d.evaluate = [](const Candidate& c, const Problem& p, Rng&) {
        EvalOutcome out;
        if (c.payload != "rate_time_distance") {
            out.note = "unknown method: " + c.payload;
            return out;
        }
        const auto* w = std::get_if<WordProblem>(&p.data);
        if (!w) {
            out.note = "problem carries no quantities";
            return out;
        }
        auto q = [&](const char* name) -> std::optional<double> {
            auto it = w->quantities.find(name);
            if (it == w->quantities.end())
                return std::nullopt;
            return it->second;
        };
        const auto separation = q("separation");
        const auto speed_a = q("speed_a");
        const auto speed_b = q("speed_b");
        const auto shuttle = q("shuttle_speed");
        if (!separation || !speed_a || !speed_b || !shuttle ||
            *speed_a + *speed_b <= 0.0) {
            out.note = "missing closing-speed quantities";
            return out;
        }
        const double time = *separation / (*speed_a + *speed_b);
        out.success = true;
        out.value = *shuttle * time;
        out.note = "distance = speed x time over the closing interval";
        return out;
    };
    d.goal_check = [](const Problem& p, const EvalOutcome& out) {
        const auto* w = std::get_if<WordProblem>(&p.data);
        if (!w || !out.success || !out.value)
            return false;
        return std::abs(*out.value - w->answer) <= 1e-9;
    };
    return d;
}

} // namespace

DomainSpec make_domain(const std::string& tag, const RunConfig& config) {
    if (tag == "gauss")
        return make_gauss_domain(config);
    if (tag == "csp")
        return make_csp_domain();
    if (tag == "analogy")
        return make_analogy_domain();
    throw InputError("unknown domain: " + tag);
}

} // namespace effsolve::domains
