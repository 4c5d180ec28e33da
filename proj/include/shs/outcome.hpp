#pragma once

#include "shs/tolerance.hpp"

#include <cmath>
#include <string>

namespace shs {

// One evaluated assertion. For inequalities the claim is lhs <= rhs; for
// equalities it is lhs = rhs. The violation predicate combines a relative
// and an absolute term.
struct CheckOutcome {
    std::string check_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // rhs - lhs
    bool equality = false;
    bool violated = false;
    double ratio = 0.0; // lhs / max(rhs, eps)
    std::string part;   // which assertion of a multi-part check this is
    bool diagnostic = false; // recorded outside the hypotheses of the series bound (singular weight)

    static CheckOutcome make(std::string id, double lhs, double rhs,
                             bool equality, const TolerancePolicy& pol,
                             std::string part = {}) {
        CheckOutcome o;
        o.check_id = std::move(id);
        o.lhs = lhs;
        o.rhs = rhs;
        o.margin = rhs - lhs;
        o.equality = equality;
        o.part = std::move(part);
        if (equality) {
            o.violated = std::abs(lhs - rhs) > pol.eq_rel * (1.0 + std::abs(rhs));
        } else {
            o.violated = lhs > rhs * (1.0 + pol.ineq_rel) + pol.ineq_abs;
        }
        o.ratio = lhs / std::max(rhs, 1e-30);
        return o;
    }
};

} // namespace shs
