#include "effsolve/memory.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace effsolve::memory {

void ActivationParams::validate() const {
    if (!(damping > 0.0 && damping <= 1.0))
        throw InputError("damping must be in (0,1]");
    if (!(propagation_threshold > 0.0))
        throw InputError("propagation_threshold must be > 0");
    if (!(recall_threshold > 0.0 && recall_threshold < 1.0))
        throw InputError("recall_threshold must be in (0,1)");
    if (recall_threshold < propagation_threshold)
        throw InputError("recall_threshold must be >= propagation_threshold");
    if (!(hebb_rate > 0.0 && hebb_rate < 1.0))
        throw InputError("hebb_rate must be in (0,1)");
    if (!(decay > 0.0 && decay < 1.0))
        throw InputError("decay must be in (0,1)");
    if (!(focus_boost >= 1.0))
        throw InputError("focus_boost must be >= 1");
}

MemoryGraph::MemoryGraph(ActivationParams params) : params_(params) {
    params_.validate();
}

void MemoryGraph::require_concept(const std::string& id) const {
    if (!concepts_.count(id))
        throw UnknownConceptError("unknown concept: " + id);
}

void MemoryGraph::add_concept(Concept concept) {
    if (concepts_.count(concept.id))
        throw DuplicateIdError("concept id already present: " + concept.id);
    concept.activation = 0.0;
    concepts_.emplace(concept.id, std::move(concept));
}

void MemoryGraph::restore_concept(Concept concept) {
    if (concepts_.count(concept.id))
        throw DuplicateIdError("concept id already present: " + concept.id);
    if (!(concept.activation >= 0.0 && concept.activation <= 1.0))
        throw InputError("activation out of [0,1] for concept: " + concept.id);
    concepts_.emplace(concept.id, std::move(concept));
}

void MemoryGraph::restore_association(Association assoc) {
    require_concept(assoc.from);
    require_concept(assoc.to);
    if (assoc.from == assoc.to)
        throw SelfLoopError("self-loop association on: " + assoc.from);
    if (!(assoc.weight > 0.0 && assoc.weight < 1.0))
        throw InputError("association weight must be in (0,1)");
    EdgeKey key{assoc.from, assoc.to, assoc.kind};
    if (edges_.count(key))
        throw DuplicateIdError("duplicate association " + assoc.from + " -> " + assoc.to);
    edges_.emplace(key, assoc.weight);
}

void MemoryGraph::bump_edge(const std::string& from, const std::string& to) {
    EdgeKey key{from, to, LinkKind::Assoc};
    auto it = edges_.find(key);
    if (it == edges_.end()) {
        edges_.emplace(key, params_.hebb_rate);
    } else {
        // w + eta*(1-w): strictly increasing, fixed point 1 never reached
        it->second += params_.hebb_rate * (1.0 - it->second);
    }
}

void MemoryGraph::hebb_update(const std::string& a, const std::string& b) {
    if (a == b)
        throw SelfLoopError("hebb_update on a single concept: " + a);
    require_concept(a);
    require_concept(b);
    bump_edge(a, b);
    bump_edge(b, a);
}

void MemoryGraph::add_is_a(const std::string& from, const std::string& to, double weight) {
    restore_association({from, to, weight, LinkKind::IsA});
}

void MemoryGraph::activate(const std::set<std::string>& seeds) {
    for (const auto& id : seeds)
        require_concept(id);

    // Deterministic adjacency; assoc edges exist in both directions already,
    // is_a edges spread along their stored direction.
    std::map<std::string, std::vector<std::pair<std::string, double>>> adj;
    for (const auto& [key, w] : edges_)
        adj[std::get<0>(key)].emplace_back(std::get<1>(key), w);

    std::deque<std::string> queue;
    std::set<std::string> queued;
    std::set<std::string> reached(seeds.begin(), seeds.end());
    for (const auto& id : seeds) {
        concepts_[id].activation = 1.0;
        queue.push_back(id);
        queued.insert(id);
    }

    while (!queue.empty()) {
        const std::string node = queue.front();
        queue.pop_front();
        queued.erase(node);
        const double source = concepts_[node].activation;
        auto it = adj.find(node);
        if (it == adj.end())
            continue;
        for (const auto& [target, w] : it->second) {
            double contribution = source * w * params_.damping;
            if (focus_.count(target))
                contribution *= params_.focus_boost;
            contribution = std::min(contribution, 1.0);
            if (contribution < params_.propagation_threshold)
                continue;
            Concept& tc = concepts_[target];
            const bool first_reach = reached.insert(target).second;
            if (contribution > tc.activation) {
                tc.activation = contribution;
            } else if (!first_reach) {
                continue; // nothing new to spread
            }
            // enqueue on strict increase or on first reach (a stored, larger
            // activation becomes a propagation source once touched)
            if (!queued.count(target)) {
                queue.push_back(target);
                queued.insert(target);
            }
        }
    }
}

std::vector<std::pair<std::string, double>> MemoryGraph::recall() const {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [id, c] : concepts_)
        if (c.activation >= params_.recall_threshold)
            out.emplace_back(id, c.activation);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

void MemoryGraph::decay_tick() {
    for (auto& [id, c] : concepts_)
        c.activation *= params_.decay;
    focus_.clear();
}

void MemoryGraph::set_focus(const std::set<std::string>& ids) {
    for (const auto& id : ids)
        require_concept(id);
    focus_ = ids;
}

bool MemoryGraph::has_concept(const std::string& id) const {
    return concepts_.count(id) > 0;
}

const Concept& MemoryGraph::concept(const std::string& id) const {
    auto it = concepts_.find(id);
    if (it == concepts_.end())
        throw UnknownConceptError("unknown concept: " + id);
    return it->second;
}

double MemoryGraph::weight(const std::string& from, const std::string& to,
                           LinkKind kind) const {
    auto it = edges_.find({from, to, kind});
    return it == edges_.end() ? 0.0 : it->second;
}

std::vector<Association> MemoryGraph::associations() const {
    std::vector<Association> out;
    out.reserve(edges_.size());
    for (const auto& [key, w] : edges_)
        out.push_back({std::get<0>(key), std::get<1>(key), w, std::get<2>(key)});
    return out;
}

const char* to_string(ConceptKind kind) {
    switch (kind) {
    case ConceptKind::Feature: return "feature";
    case ConceptKind::Method: return "method";
    case ConceptKind::Case: return "case";
    case ConceptKind::Goal: return "goal";
    }
    return "feature";
}

const char* to_string(LinkKind kind) {
    return kind == LinkKind::Assoc ? "assoc" : "is_a";
}

ConceptKind concept_kind_from_string(const std::string& s) {
    if (s == "feature") return ConceptKind::Feature;
    if (s == "method") return ConceptKind::Method;
    if (s == "case") return ConceptKind::Case;
    if (s == "goal") return ConceptKind::Goal;
    throw InputError("unknown concept kind: " + s);
}

LinkKind link_kind_from_string(const std::string& s) {
    if (s == "assoc") return LinkKind::Assoc;
    if (s == "is_a") return LinkKind::IsA;
    throw InputError("unknown association kind: " + s);
}

} // namespace effsolve::memory
