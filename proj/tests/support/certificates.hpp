#pragma once

#include "nutrilp/lp.hpp"

namespace nutrilp::testing {

/// Optimality evidence recomputed from a solution, independent of the
/// solver's own bookkeeping.
struct Certificate {
    double primal_violation = 0.0;    // scaled rows and x >= 0
    double duality_gap = 0.0;         // |c·x - b·y|
    double dual_sign_violation = 0.0; // y_i on the wrong side of 0 for its relation
    double reduced_cost_violation = 0.0;  // max(-(c - A'y)_j)
    double row_slackness = 0.0;       // max |y_i * (a_i·x - b_i)|
    double column_slackness = 0.0;    // max |x_j * (c - A'y)_j|
    std::size_t positive_variables = 0;
    std::size_t binding_rows = 0;
};

Certificate certify(const lp::Problem& problem, const lp::Solution& solution, double support_eps = 1e-6);

}  // namespace nutrilp::testing
