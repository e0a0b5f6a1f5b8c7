#include "effsolve/json_io.hpp"

#include <fstream>
#include <sstream>

namespace effsolve::io {

namespace {

json feature_set_to_json(const retrieval::FeatureSet& fs) {
    json out = json::object();
    for (const auto& [name, w] : fs.entries)
        out[name] = w;
    return out;
}

retrieval::FeatureSet feature_set_from_json(const json& j, const std::string& where) {
    if (!j.is_object())
        throw InputError(where + " must be an object of name:weight");
    retrieval::FeatureSet fs;
    for (const auto& [name, w] : j.items()) {
        if (!w.is_number())
            throw InputError(where + "." + name + " must be a number");
        fs.set(name, w.get<double>());
    }
    return fs;
}

double require_number(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw InputError(where + " needs numeric field \"" + key + "\"");
    return j.at(key).get<double>();
}

std::string require_string(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw InputError(where + " needs string field \"" + key + "\"");
    return j.at(key).get<std::string>();
}

} // namespace

// ---------------------------------------------------------------------------
// Memory snapshots
// ---------------------------------------------------------------------------

json memory_to_json(const memory::MemoryGraph& graph) {
    json concepts = json::array();
    for (const auto& [id, c] : graph.concepts())
        concepts.push_back({{"id", c.id},
                            {"label", c.label},
                            {"kind", memory::to_string(c.kind)},
                            {"activation", c.activation}});
    json associations = json::array();
    for (const auto& a : graph.associations())
        associations.push_back({{"from", a.from},
                                {"to", a.to},
                                {"weight", a.weight},
                                {"kind", memory::to_string(a.kind)}});
    const auto& p = graph.params();
    json params = {{"damping", p.damping},
                   {"propagation_threshold", p.propagation_threshold},
                   {"recall_threshold", p.recall_threshold},
                   {"hebb_rate", p.hebb_rate},
                   {"decay", p.decay},
                   {"focus_boost", p.focus_boost}};
    return {{"concepts", concepts}, {"associations", associations}, {"params", params}};
}

memory::MemoryGraph memory_from_json(const json& j) {
    memory::ActivationParams params;
    if (j.contains("params")) {
        const json& p = j.at("params");
        if (p.contains("damping")) params.damping = p.at("damping").get<double>();
        if (p.contains("propagation_threshold"))
            params.propagation_threshold = p.at("propagation_threshold").get<double>();
        if (p.contains("recall_threshold"))
            params.recall_threshold = p.at("recall_threshold").get<double>();
        if (p.contains("hebb_rate")) params.hebb_rate = p.at("hebb_rate").get<double>();
        if (p.contains("decay")) params.decay = p.at("decay").get<double>();
        if (p.contains("focus_boost")) params.focus_boost = p.at("focus_boost").get<double>();
    }
    memory::MemoryGraph graph(params);
    for (const json& c : j.value("concepts", json::array())) {
        memory::Concept concept;
        concept.id = require_string(c, "id", "concept");
        concept.label = c.value("label", concept.id);
        concept.kind = memory::concept_kind_from_string(c.value("kind", "feature"));
        concept.activation = c.value("activation", 0.0);
        graph.restore_concept(std::move(concept));
    }
    for (const json& a : j.value("associations", json::array())) {
        memory::Association assoc;
        assoc.from = require_string(a, "from", "association");
        assoc.to = require_string(a, "to", "association");
        assoc.weight = require_number(a, "weight", "association");
        assoc.kind = memory::link_kind_from_string(a.value("kind", "assoc"));
        graph.restore_association(std::move(assoc));
    }
    return graph;
}

// ---------------------------------------------------------------------------
// Casebase
// ---------------------------------------------------------------------------

json casebase_to_json(const retrieval::Casebase& cb) {
    json cases = json::array();
    for (const auto& c : cb.cases)
        cases.push_back({{"id", c.id},
                         {"surface", feature_set_to_json(c.surface)},
                         {"gist", feature_set_to_json(c.gist)},
                         {"method", c.method},
                         {"confidence", c.confidence},
                         {"cost_estimate", c.cost_estimate}});
    json is_a = json::array();
    for (const auto& [child, parent] : cb.taxonomy.edges())
        is_a.push_back(json::array({child, parent}));
    return {{"cases", cases}, {"taxonomy", {{"is_a", is_a}}}};
}

retrieval::Casebase casebase_from_json(const json& j) {
    retrieval::Casebase cb;
    for (const json& c : j.value("cases", json::array())) {
        retrieval::Case item;
        item.id = require_string(c, "id", "case");
        item.surface = feature_set_from_json(c.value("surface", json::object()), "surface");
        item.gist = feature_set_from_json(c.value("gist", json::object()), "gist");
        item.method = require_string(c, "method", "case " + item.id);
        item.confidence = c.value("confidence", 1.0);
        item.cost_estimate = c.value("cost_estimate", 1.0);
        if (item.confidence < 0.0 || item.confidence > 1.0)
            throw InputError("case " + item.id + ": confidence must be in [0,1]");
        if (!(item.cost_estimate > 0.0))
            throw InputError("case " + item.id + ": cost_estimate must be > 0");
        cb.cases.push_back(std::move(item));
    }
    if (j.contains("taxonomy")) {
        for (const json& edge : j.at("taxonomy").value("is_a", json::array())) {
            if (!edge.is_array() || edge.size() != 2)
                throw InputError("taxonomy is_a entries must be [child, parent] pairs");
            cb.taxonomy.add_is_a(edge.at(0).get<std::string>(), edge.at(1).get<std::string>());
        }
    }
    return cb;
}

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

json problem_to_json(const Problem& problem) {
    json params = json::object();
    for (const auto& [name, v] : problem.params)
        params[name] = v;
    if (const auto* csp = std::get_if<CspInstance>(&problem.data)) {
        params["houses"] = csp->houses;
        json attrs = json::array();
        for (const auto& a : csp->attributes)
            attrs.push_back({{"name", a.name}, {"values", a.values}});
        params["attributes"] = attrs;
        json constraints = json::array();
        for (const auto& c : csp->constraints) {
            json args = json::array();
            args.push_back(c.attr1);
            args.push_back(c.value1);
            if (c.kind == CspConstraintKind::Fixed) {
                args.push_back(c.position);
            } else {
                args.push_back(c.attr2);
                args.push_back(c.value2);
            }
            constraints.push_back({{"kind", to_string(c.kind)}, {"args", args}});
        }
        params["constraints"] = constraints;
    } else if (const auto* word = std::get_if<WordProblem>(&problem.data)) {
        json q = json::object();
        for (const auto& [name, v] : word->quantities)
            q[name] = v;
        params["quantities"] = q;
        params["answer"] = word->answer;
    }
    json out = {{"domain", problem.domain}, {"params", params},
                {"surface", feature_set_to_json(problem.surface)}};
    if (!problem.id.empty())
        out["id"] = problem.id;
    if (!problem.goal.empty())
        out["goal"] = problem.goal;
    return out;
}

Problem problem_from_json(const json& j) {
    Problem p;
    p.domain = require_string(j, "domain", "problem");
    p.id = j.value("id", p.domain + "_problem");
    p.goal = j.value("goal", "");
    p.surface = feature_set_from_json(j.value("surface", json::object()), "surface");

    const json params = j.value("params", json::object());
    for (const auto& [name, v] : params.items())
        if (v.is_number())
            p.params[name] = v.get<double>();

    if (p.domain == "csp") {
        CspInstance instance;
        instance.houses = static_cast<int>(require_number(params, "houses", "csp params"));
        for (const json& a : params.value("attributes", json::array())) {
            CspAttribute attr;
            attr.name = require_string(a, "name", "attribute");
            for (const json& v : a.value("values", json::array()))
                attr.values.push_back(v.get<std::string>());
            instance.attributes.push_back(std::move(attr));
        }
        for (const json& c : params.value("constraints", json::array())) {
            CspConstraint constraint;
            constraint.kind =
                csp_constraint_kind_from_string(require_string(c, "kind", "constraint"));
            const json args = c.value("args", json::array());
            if (constraint.kind == CspConstraintKind::Fixed) {
                if (args.size() != 3)
                    throw InputError("fixed constraint needs [attr, value, position]");
                constraint.attr1 = args.at(0).get<std::string>();
                constraint.value1 = args.at(1).get<std::string>();
                constraint.position = args.at(2).get<int>();
            } else {
                if (args.size() != 4)
                    throw InputError(std::string(to_string(constraint.kind)) +
                                     " constraint needs [attr1, value1, attr2, value2]");
                constraint.attr1 = args.at(0).get<std::string>();
                constraint.value1 = args.at(1).get<std::string>();
                constraint.attr2 = args.at(2).get<std::string>();
                constraint.value2 = args.at(3).get<std::string>();
            }
            instance.constraints.push_back(std::move(constraint));
        }
        instance.validate();
        p.data = std::move(instance);
    } else if (p.domain == "analogy") {
        WordProblem word;
        word.surface = p.surface;
        for (const auto& [name, v] : params.value("quantities", json::object()).items())
            word.quantities[name] = v.get<double>();
        word.answer = require_number(params, "answer", "analogy params");
        p.data = std::move(word);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Config overlays
// ---------------------------------------------------------------------------

void apply_config_json(const json& j, RunConfig& config) {
    if (j.contains("engine")) {
        const json& e = j.at("engine");
        auto& cfg = config.engine;
        if (e.contains("budget")) cfg.budget = e.at("budget").get<int>();
        if (e.contains("max_depth")) cfg.max_depth = e.at("max_depth").get<int>();
        if (e.contains("switch_margin")) cfg.switch_margin = e.at("switch_margin").get<double>();
        if (e.contains("fruitless_rounds"))
            cfg.fruitless_rounds = e.at("fruitless_rounds").get<int>();
        if (e.contains("incubation_ticks"))
            cfg.incubation_ticks = e.at("incubation_ticks").get<int>();
        if (e.contains("acceptance_floor"))
            cfg.acceptance_floor = e.at("acceptance_floor").get<double>();
        if (e.contains("rng_seed")) cfg.rng_seed = e.at("rng_seed").get<std::uint64_t>();
        cfg.validate();
    }
    if (j.contains("retrieval")) {
        const json& r = j.at("retrieval");
        auto& opts = config.retrieval;
        if (r.contains("mode")) {
            const std::string mode = r.at("mode").get<std::string>();
            if (mode == "surface_only")
                opts.mode = retrieval::RetrievalMode::SurfaceOnly;
            else if (mode == "with_abstraction")
                opts.mode = retrieval::RetrievalMode::WithAbstraction;
            else
                throw InputError("unknown retrieval mode: " + mode);
        }
        if (r.contains("k")) opts.k = r.at("k").get<int>();
        if (r.contains("intuition_floor"))
            opts.intuition_floor = r.at("intuition_floor").get<double>();
        if (r.contains("gist_salience_floor"))
            opts.gist_salience_floor = r.at("gist_salience_floor").get<double>();
        if (r.contains("gist_levels")) opts.gist_levels = r.at("gist_levels").get<int>();
    }
    if (j.contains("memory_params")) {
        const json& m = j.at("memory_params");
        auto& p = config.memory_params;
        if (m.contains("damping")) p.damping = m.at("damping").get<double>();
        if (m.contains("propagation_threshold"))
            p.propagation_threshold = m.at("propagation_threshold").get<double>();
        if (m.contains("recall_threshold"))
            p.recall_threshold = m.at("recall_threshold").get<double>();
        if (m.contains("hebb_rate")) p.hebb_rate = m.at("hebb_rate").get<double>();
        if (m.contains("decay")) p.decay = m.at("decay").get<double>();
        if (m.contains("focus_boost")) p.focus_boost = m.at("focus_boost").get<double>();
        p.validate();
    }
    if (j.contains("gauss")) {
        const json& g = j.at("gauss");
        auto& gp = config.gauss;
        if (g.contains("c_add")) gp.c_add = g.at("c_add").get<double>();
        if (g.contains("c_formula")) gp.c_formula = g.at("c_formula").get<double>();
        if (g.contains("p_search")) gp.p_search = g.at("p_search").get<double>();
        if (g.contains("t_search")) gp.t_search = g.at("t_search").get<double>();
    }
    if (j.contains("csp")) {
        const json& c = j.at("csp");
        auto& cp = config.csp;
        if (c.contains("t_eliminate")) cp.t_eliminate = c.at("t_eliminate").get<double>();
        if (c.contains("c_check")) cp.c_check = c.at("c_check").get<double>();
    }
}

// ---------------------------------------------------------------------------
// Traces and reports
// ---------------------------------------------------------------------------

json trace_record_to_json(const engine::TraceRecord& rec) {
    json out;
    out["step"] = rec.step;
    out["state"] = engine::to_string(rec.state);
    out["action"] = engine::to_string(rec.action);
    if (rec.candidate_id)
        out["candidate_id"] = *rec.candidate_id;
    if (rec.p)
        out["p"] = *rec.p;
    if (rec.t)
        out["t"] = *rec.t;
    if (rec.ratio)
        out["ratio"] = *rec.ratio;
    out["note"] = rec.note;
    return out;
}

std::string trace_to_jsonl(const std::vector<engine::TraceRecord>& trace) {
    std::ostringstream out;
    for (const auto& rec : trace)
        out << trace_record_to_json(rec).dump() << '\n';
    return out.str();
}

json run_report(const engine::RunResult& result, double wall_seconds,
                const std::string& trace_path) {
    json out;
    out["outcome"] = result.solved ? "solved" : "failed";
    if (!result.solved)
        out["reason"] = result.reason;
    if (result.answer)
        out["answer"] = *result.answer;
    if (!result.solution.empty())
        out["solution"] = result.solution;
    out["steps_used"] = result.steps;
    out["candidates_tested"] = result.candidates_tested;
    out["wall_time_seconds"] = wall_seconds;
    out["trace_path"] = trace_path;
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("cannot parse JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write file: " + path);
    out << text;
}

} // namespace effsolve::io
