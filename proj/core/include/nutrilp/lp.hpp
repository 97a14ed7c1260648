#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nutrilp/error.hpp"

/// Dense two-phase primal simplex for
///
///     minimize  c·x   subject to  a_i·x {=, >=, <=} b_i,  x >= 0.
///
/// Rows are scaled by their largest |coefficient| before solving; all
/// tolerances apply to the scaled rows. Results (duals, reduced costs) are
/// reported in the caller's original units.
namespace nutrilp::lp {

enum class Relation { equal, greater_equal, less_equal };

const char* to_string(Relation r);

struct Row {
    std::vector<double> coefficients;
    Relation relation = Relation::greater_equal;
    double rhs = 0.0;
};

struct Problem {
    std::vector<double> objective;
    std::vector<Row> rows;

    std::size_t variable_count() const { return objective.size(); }
};

struct Options {
    double feasibility_tol = 1e-8;
    double binding_tol = 1e-8;
    double optimality_tol = 1e-9;
    double pivot_tol = 1e-9;
    /// Defaults to 50 * (variables + rows).
    std::optional<std::size_t> iteration_limit;
};

enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status s);

struct BasisEntry {
    enum class Kind { structural, slack, artificial };
    Kind kind;
    std::size_t index;  // variable index for structural, row index otherwise

    friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

struct Solution {
    Status status = Status::infeasible;
    /// Optimal point (optimal), phase-1 end point (infeasible), or the last
    /// basic feasible point before the ray was found (unbounded).
    std::vector<double> primal;
    /// c·primal; meaningful only when optimal.
    double objective = 0.0;
    /// d(objective)/d(rhs_i): >= 0 on >= rows, <= 0 on <= rows.
    std::vector<double> duals;
    std::vector<double> reduced_costs;
    std::vector<std::size_t> binding_rows;
    /// Basic variable for each (scaled, internal) tableau row.
    std::vector<BasisEntry> basis;
    std::size_t iterations = 0;
    /// Rows taking part in the phase-1 infeasibility certificate.
    std::vector<std::size_t> infeasible_rows;
    /// Direction d >= 0 with feasible recession and c·d < 0 (unbounded only).
    std::vector<double> ray;
};

class LpError : public Error {
public:
    using Error::Error;
};

class IterationLimitError : public LpError {
public:
    using LpError::LpError;
};

/// Throws LpError for malformed input (dimension mismatch, NaN/inf) and
/// IterationLimitError when the pivot budget is exhausted.
Solution solve(const Problem& problem, const Options& options = {});

struct FeasibilityReport {
    bool feasible = false;
    /// Phase-1 optimum: sum of artificial values on the scaled rows.
    double residual = 0.0;
    std::vector<std::size_t> violated_rows;
};

FeasibilityReport phase1_feasibility(const Problem& problem, const Options& options = {});

/// Row activity a_i·x.
double activity(const Row& row, const std::vector<double>& x);

}  // namespace nutrilp::lp
