#pragma once

// Query operations over problems and a casebase: weighted-Jaccard similarity,
// generalization/specification, gist abstraction, ranked retrieval, and
// association-driven recall through the memory graph.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effsolve/errors.hpp"
#include "effsolve/memory.hpp"

namespace effsolve::retrieval {

// Feature name -> salience weight (> 0).
struct FeatureSet {
    std::map<std::string, double> entries;

    FeatureSet() = default;
    FeatureSet(std::initializer_list<std::pair<const std::string, double>> init);

    // Throws InputError on weight <= 0.
    void set(const std::string& name, double weight);
    bool contains(const std::string& name) const { return entries.count(name) > 0; }
    bool empty() const { return entries.empty(); }
    double total_weight() const;

    bool operator==(const FeatureSet&) const = default;
};

// Forest of child -> parent links (single parent, acyclic).
class Taxonomy {
public:
    // Throws InputError when the child already has a parent or the edge
    // would close a cycle.
    void add_is_a(const std::string& child, const std::string& parent);

    std::optional<std::string> parent_of(const std::string& name) const;

    // Ancestor `levels` steps up, or the topmost ancestor if shallower.
    std::string ancestor(const std::string& name, int levels) const;

    const std::map<std::string, std::string>& edges() const { return parent_; }

private:
    std::map<std::string, std::string> parent_;
};

struct Case {
    std::string id;
    FeatureSet surface;
    FeatureSet gist;
    std::string method;
    double confidence = 1.0;   // in [0,1]
    double cost_estimate = 1.0; // time units, > 0
};

struct Casebase {
    std::vector<Case> cases;
    Taxonomy taxonomy;
};

enum class MatchLevel { Surface, Generalized, Gist };

struct RetrievalResult {
    std::string case_id;
    double score = 0.0; // in [0,1]
    MatchLevel level = MatchLevel::Surface;
    bool explained = true; // false = gist hit with weak surface support
};

enum class RetrievalMode { SurfaceOnly, WithAbstraction };

struct RetrievalOptions {
    RetrievalMode mode = RetrievalMode::WithAbstraction;
    int k = 5;
    double intuition_floor = 0.2;     // rho_intuition
    double gist_salience_floor = 0.5; // sigma used for the problem's gist
    int gist_levels = 1;
};

// Weighted Jaccard: sum of min weights over sum of max weights across the
// union of names; 0/0 is defined as 0.
double similarity(const FeatureSet& a, const FeatureSet& b);

// Each name replaced by its ancestor `levels` steps up; weights merging under
// one ancestor are summed. Total weight is preserved.
FeatureSet generalize(const FeatureSet& fs, const Taxonomy& tax, int levels);

// Union of fs and constraints; the constraint weight wins on collision.
FeatureSet specify(const FeatureSet& fs, const FeatureSet& constraints);

// Drop features below the salience floor, then generalize. Throws InputError
// for a negative floor.
FeatureSet abstract_gist(const FeatureSet& fs, const Taxonomy& tax,
                         double salience_floor, int levels);

// Top-k cases by score (descending, ties by case id). SurfaceOnly scores the
// surfaces; WithAbstraction takes the max of the surface score and the gist
// similarity, recording where the max occurred. Gist wins only when strictly
// better. A gist-level win with surface score below the intuition floor is
// flagged explained=false.
std::vector<RetrievalResult> retrieve(const FeatureSet& problem,
                                      const std::vector<Case>& casebase,
                                      const Taxonomy& tax, int k,
                                      RetrievalMode mode,
                                      const RetrievalOptions& opts = {});

// Focus on the seed concepts, spread activation from them, recall.
// Throws UnknownConceptError when a seed is missing.
std::vector<std::pair<std::string, double>>
recall_associated(memory::MemoryGraph& graph, const std::set<std::string>& seeds);

const char* to_string(MatchLevel level);

} // namespace effsolve::retrieval
