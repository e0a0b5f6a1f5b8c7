#include "effsolve/problem.hpp"

namespace effsolve {

const char* to_string(CspConstraintKind kind) {
    switch (kind) {
    case CspConstraintKind::SameHouse: return "same_house";
    case CspConstraintKind::Adjacent: return "adjacent";
    case CspConstraintKind::LeftOf: return "left_of";
    case CspConstraintKind::Fixed: return "fixed";
    }
    return "same_house";
}

CspConstraintKind csp_constraint_kind_from_string(const std::string& s) {
    if (s == "same_house") return CspConstraintKind::SameHouse;
    if (s == "adjacent") return CspConstraintKind::Adjacent;
    if (s == "left_of") return CspConstraintKind::LeftOf;
    if (s == "fixed") return CspConstraintKind::Fixed;
    throw InputError("unknown constraint kind: " + s);
}

} // namespace effsolve
