#include "effsolve/retrieval.hpp"

#include <algorithm>
#include <cmath>

namespace effsolve::retrieval {

FeatureSet::FeatureSet(std::initializer_list<std::pair<const std::string, double>> init) {
    for (const auto& [name, weight] : init)
        set(name, weight);
}

void FeatureSet::set(const std::string& name, double weight) {
    if (!(weight > 0.0))
        throw InputError("feature weight must be > 0: " + name);
    entries[name] = weight;
}

double FeatureSet::total_weight() const {
    double sum = 0.0;
    for (const auto& [name, w] : entries)
        sum += w;
    return sum;
}

void Taxonomy::add_is_a(const std::string& child, const std::string& parent) {
    if (child == parent)
        throw InputError("is_a self-loop: " + child);
    if (parent_.count(child))
        throw InputError("feature already has a parent: " + child);
    // walk up from the proposed parent; meeting the child closes a cycle
    std::string cur = parent;
    while (true) {
        if (cur == child)
            throw InputError("is_a edge would create a cycle at: " + child);
        auto it = parent_.find(cur);
        if (it == parent_.end())
            break;
        cur = it->second;
    }
    parent_[child] = parent;
}

std::optional<std::string> Taxonomy::parent_of(const std::string& name) const {
    auto it = parent_.find(name);
    if (it == parent_.end())
        return std::nullopt;
    return it->second;
}

std::string Taxonomy::ancestor(const std::string& name, int levels) const {
    std::string cur = name;
    for (int i = 0; i < levels; ++i) {
        auto it = parent_.find(cur);
        if (it == parent_.end())
            break; // topmost ancestor reached early
        cur = it->second;
    }
    return cur;
}

double similarity(const FeatureSet& a, const FeatureSet& b) {
    double min_sum = 0.0;
    double max_sum = 0.0;
    auto ia = a.entries.begin();
    auto ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
            max_sum += ia->second;
            ++ia;
        } else if (ia == a.entries.end() || ib->first < ia->first) {
            max_sum += ib->second;
            ++ib;
        } else {
            min_sum += std::min(ia->second, ib->second);
            max_sum += std::max(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    if (max_sum == 0.0)
        return 0.0; // two empty sets
    return min_sum / max_sum;
}

FeatureSet generalize(const FeatureSet& fs, const Taxonomy& tax, int levels) {
    FeatureSet out;
    for (const auto& [name, w] : fs.entries) {
        const std::string up = tax.ancestor(name, levels);
        out.entries[up] += w; // merge-sum under one ancestor
    }
    return out;
}

FeatureSet specify(const FeatureSet& fs, const FeatureSet& constraints) {
    FeatureSet out = fs;
    for (const auto& [name, w] : constraints.entries)
        out.entries[name] = w; // constraint weight wins
    return out;
}

FeatureSet abstract_gist(const FeatureSet& fs, const Taxonomy& tax,
                         double salience_floor, int levels) {
    if (salience_floor < 0.0)
        throw InputError("salience floor must be >= 0");
    FeatureSet kept;
    for (const auto& [name, w] : fs.entries)
        if (w >= salience_floor)
            kept.entries[name] = w;
    return generalize(kept, tax, levels);
}

std::vector<RetrievalResult> retrieve(const FeatureSet& problem,
                                      const std::vector<Case>& casebase,
                                      const Taxonomy& tax, int k,
                                      RetrievalMode mode,
                                      const RetrievalOptions& opts) {
    if (k < 1)
        throw InputError("retrieve requires k >= 1");

    FeatureSet problem_gist;
    if (mode == RetrievalMode::WithAbstraction)
        problem_gist = abstract_gist(problem, tax, opts.gist_salience_floor,
                                     opts.gist_levels);

    std::vector<RetrievalResult> results;
    results.reserve(casebase.size());
    for (const Case& c : casebase) {
        RetrievalResult r;
        r.case_id = c.id;
        const double surface_score = similarity(problem, c.surface);
        r.score = surface_score;
        r.level = MatchLevel::Surface;
        if (mode == RetrievalMode::WithAbstraction) {
            const double gist_score = similarity(problem_gist, c.gist);
            if (gist_score > surface_score) {
                r.score = gist_score;
                r.level = MatchLevel::Gist;
                r.explained = surface_score >= opts.intuition_floor;
            }
        }
        results.push_back(r);
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const RetrievalResult& a, const RetrievalResult& b) {
                         if (a.score != b.score)
                             return a.score > b.score;
                         return a.case_id < b.case_id;
                     });
    if (static_cast<int>(results.size()) > k)
        results.resize(static_cast<std::size_t>(k));
    return results;
}

std::vector<std::pair<std::string, double>>
recall_associated(memory::MemoryGraph& graph, const std::set<std::string>& seeds) {
    graph.set_focus(seeds);
    graph.activate(seeds);
    return graph.recall();
}

const char* to_string(MatchLevel level) {
    switch (level) {
    case MatchLevel::Surface: return "surface";
    case MatchLevel::Generalized: return "generalized";
    case MatchLevel::Gist: return "gist";
    }
    return "surface";
}

} // namespace effsolve::retrieval
