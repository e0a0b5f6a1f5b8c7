#pragma once

// Weighted concept graph with Hebb-rule learning, spreading activation,
// context focus and decay-based forgetting.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "effsolve/errors.hpp"

namespace effsolve::memory {

enum class ConceptKind { Feature, Method, Case, Goal };

enum class LinkKind { Assoc, IsA };

struct Concept {
    std::string id;
    std::string label;
    ConceptKind kind = ConceptKind::Feature;
    double activation = 0.0; // always in [0,1]
};

struct Association {
    std::string from;
    std::string to;
    double weight = 0.0; // strictly in (0,1)
    LinkKind kind = LinkKind::Assoc;
};

struct ActivationParams {
    double damping = 0.5;             // d in (0,1], per-edge attenuation
    double propagation_threshold = 0.01; // theta > 0, contribution cutoff
    double recall_threshold = 0.1;    // rho in (0,1), rho >= theta
    double hebb_rate = 0.1;           // eta in (0,1)
    double decay = 0.5;               // lambda in (0,1)
    double focus_boost = 2.0;         // beta >= 1

    void validate() const; // throws InputError on out-of-range values
};

// Single-writer value type: one engine mutates at a time, read-only queries
// (recall) may run concurrently with each other.
class MemoryGraph {
public:
    MemoryGraph() = default;
    explicit MemoryGraph(ActivationParams params);

    // Inserts the concept with activation reset to 0. Throws DuplicateIdError.
    void add_concept(Concept concept);

    // Strengthens the symmetric assoc edge a<->b by w + eta*(1-w), creating
    // it at w = eta when absent. Throws UnknownConceptError / SelfLoopError.
    void hebb_update(const std::string& a, const std::string& b);

    // Directed is_a edge with an explicit weight; same uniqueness rules.
    void add_is_a(const std::string& from, const std::string& to, double weight);

    // Sets seeds to activation 1 and spreads breadth-first. A node receives
    // a_source * w * d (times beta if it is in focus), clamped to 1;
    // contributions below theta do not propagate; stored activations are kept
    // when larger (max-merge). Throws UnknownConceptError on missing seeds.
    void activate(const std::set<std::string>& seeds);

    // Concepts with activation >= rho, strongest first, ties by id ascending.
    std::vector<std::pair<std::string, double>> recall() const;

    // Multiplies every activation by lambda and clears the focus set.
    void decay_tick();

    // Replaces the focus set. Throws UnknownConceptError.
    void set_focus(const std::set<std::string>& ids);

    bool has_concept(const std::string& id) const;
    const Concept& concept(const std::string& id) const; // throws UnknownConceptError
    const std::map<std::string, Concept>& concepts() const { return concepts_; }
    std::size_t concept_count() const { return concepts_.size(); }

    // Edge weight for an ordered (from, to, kind) triple; 0 when absent.
    double weight(const std::string& from, const std::string& to,
                  LinkKind kind = LinkKind::Assoc) const;

    std::vector<Association> associations() const;
    const std::set<std::string>& focus() const { return focus_; }
    const ActivationParams& params() const { return params_; }
    ActivationParams& params() { return params_; }

    // Snapshot import path: restores stored activations and weights verbatim
    // (validated). Used by the JSON loader; add_concept stays the normal way in.
    void restore_concept(Concept concept);
    void restore_association(Association assoc);

private:
    using EdgeKey = std::tuple<std::string, std::string, LinkKind>;

    void require_concept(const std::string& id) const;
    void bump_edge(const std::string& from, const std::string& to);

    std::map<std::string, Concept> concepts_;
    std::map<EdgeKey, double> edges_;
    std::set<std::string> focus_;
    ActivationParams params_;
};

const char* to_string(ConceptKind kind);
const char* to_string(LinkKind kind);
ConceptKind concept_kind_from_string(const std::string& s); // throws InputError
LinkKind link_kind_from_string(const std::string& s);       // throws InputError

} // namespace effsolve::memory
