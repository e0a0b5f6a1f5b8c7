#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "effsolve/retrieval.hpp"

namespace effsolve {

// ---------------------------------------------------------------------------
// Domain payloads
// ---------------------------------------------------------------------------

enum class CspConstraintKind { SameHouse, Adjacent, LeftOf, Fixed };

struct CspConstraint {
    CspConstraintKind kind = CspConstraintKind::SameHouse;
    // same_house / adjacent / left_of: attr1, value1, attr2, value2
    // fixed: attr, value (position below)
    std::string attr1, value1, attr2, value2;
    int position = 0; // 1-based house position, Fixed only
};

struct CspAttribute {
    std::string name;
    std::vector<std::string> values; // exactly n distinct values
};

struct CspInstance {
    int houses = 0;
    std::vector<CspAttribute> attributes;
    std::vector<CspConstraint> constraints;

    void validate() const; // throws InputError
};

struct WordProblem {
    retrieval::FeatureSet surface;
    std::map<std::string, double> quantities;
    double answer = 0.0; // ground truth, must be finite
};

// ---------------------------------------------------------------------------
// Problem
// ---------------------------------------------------------------------------

struct Problem {
    std::string id;
    std::string domain; // "gauss" | "csp" | "analogy" | test domains
    retrieval::FeatureSet surface;
    std::map<std::string, double> params; // scalar knobs (e.g. gauss n)
    std::string goal; // goal predicate selector, "" = domain default
    int depth = 0;    // subgoal recursion depth

    std::variant<std::monostate, CspInstance, WordProblem> data;

    double param(const std::string& name, double fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
};

const char* to_string(CspConstraintKind kind);
CspConstraintKind csp_constraint_kind_from_string(const std::string& s);

} // namespace effsolve
