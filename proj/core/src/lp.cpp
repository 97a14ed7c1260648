#include "nutrilp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace nutrilp::lp {

const char* to_string(Relation r) {
    switch (r) {
        case Relation::equal: return "=";
        case Relation::greater_equal: return ">=";
        case Relation::less_equal: return "<=";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
    }
    return "?";
}

double activity(const Row& row, const std::vector<double>& x) {
    double sum = 0.0;
    for (std::size_t j = 0; j < row.coefficients.size() && j < x.size(); ++j)
        sum += row.coefficients[j] * x[j];
    return sum;
}

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

void validate(const Problem& p) {
    if (p.objective.empty()) throw LpError("problem has no variables");
    for (double c : p.objective)
        if (!std::isfinite(c)) throw LpError("objective coefficient is not finite");
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const auto& row = p.rows[i];
        if (row.coefficients.size() != p.objective.size())
            throw LpError("row " + std::to_string(i) + " has " + std::to_string(row.coefficients.size()) +
                          " coefficients, expected " + std::to_string(p.objective.size()));
        if (!std::isfinite(row.rhs)) throw LpError("row " + std::to_string(i) + " rhs is not finite");
        for (double a : row.coefficients)
            if (!std::isfinite(a)) throw LpError("row " + std::to_string(i) + " has a non-finite coefficient");
    }
}

enum class ColumnKind { structural, slack, artificial };

/// Standard-form tableau over the scaled rows. Column layout: structural
/// variables, then one slack/surplus per inequality row, then one artificial
/// per >= or = row. The identity columns (slack of <= rows, artificial of
/// the rest) are kept for the whole solve so B^-1 can be read off them.
class Tableau {
public:
    Tableau(const Problem& p, const Options& opts) : opts_(opts), n_(p.variable_count()), m_(p.rows.size()) {
        scale_.assign(m_, 1.0);
        sign_.assign(m_, 1.0);
        relation_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = p.rows[i];
            double largest = 0.0;
            for (double a : row.coefficients) largest = std::max(largest, std::abs(a));
            scale_[i] = largest > 0.0 ? largest : 1.0;
            Relation rel = row.relation;
            if (row.rhs / scale_[i] < 0.0) {
                sign_[i] = -1.0;
                if (rel == Relation::greater_equal) rel = Relation::less_equal;
                else if (rel == Relation::less_equal) rel = Relation::greater_equal;
            }
            relation_[i] = rel;
        }

        kind_.assign(n_, ColumnKind::structural);
        owner_.assign(n_, npos);
        slack_col_.assign(m_, npos);
        art_col_.assign(m_, npos);
        for (std::size_t i = 0; i < m_; ++i) {
            if (relation_[i] != Relation::equal) {
                slack_col_[i] = kind_.size();
                kind_.push_back(ColumnKind::slack);
                owner_.push_back(i);
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (relation_[i] != Relation::less_equal) {
                art_col_[i] = kind_.size();
                kind_.push_back(ColumnKind::artificial);
                owner_.push_back(i);
            }
        }
        cols_ = kind_.size();
        width_ = cols_ + 1;
        data_.assign(m_ * width_, 0.0);
        basis_.assign(m_, npos);
        init_col_.assign(m_, npos);

        for (std::size_t i = 0; i < m_; ++i) {
            const double f = sign_[i] / scale_[i];
            const auto& row = p.rows[i];
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = row.coefficients[j] * f;
            rhs(i) = row.rhs * f;
            if (relation_[i] == Relation::less_equal) {
                at(i, slack_col_[i]) = 1.0;
                init_col_[i] = slack_col_[i];
            } else {
                if (relation_[i] == Relation::greater_equal) at(i, slack_col_[i]) = -1.0;
                at(i, art_col_[i]) = 1.0;
                init_col_[i] = art_col_[i];
            }
            basis_[i] = init_col_[i];
        }

        limit_ = opts.iteration_limit.value_or(50 * (n_ + m_));
    }

    std::size_t rows() const { return m_; }
    std::size_t iterations() const { return iterations_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
    double& rhs(std::size_t r) { return data_[r * width_ + cols_]; }
    double rhs(std::size_t r) const { return data_[r * width_ + cols_]; }

    std::vector<double> phase1_costs() const {
        std::vector<double> c(cols_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j)
            if (kind_[j] == ColumnKind::artificial) c[j] = 1.0;
        return c;
    }

    std::vector<double> phase2_costs(const std::vector<double>& objective) const {
        std::vector<double> c(cols_, 0.0);
        std::copy(objective.begin(), objective.end(), c.begin());
        return c;
    }

    struct RunResult {
        bool unbounded = false;
        std::size_t entering = npos;
    };

    /// Primal simplex from the current basis. Dantzig pricing; after
    /// 2 * columns consecutive degenerate pivots it switches to Bland's rule
    /// until the next improving pivot.
    RunResult run(const std::vector<double>& cost, bool allow_artificial) {
        std::vector<double> d = reduced_costs(cost);
        std::size_t degenerate_streak = 0;
        const std::size_t bland_after = 2 * cols_;
        for (;;) {
            const bool bland = degenerate_streak >= bland_after;
            std::size_t entering = npos;
            double best = -opts_.optimality_tol;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allow_artificial && kind_[j] == ColumnKind::artificial) continue;
                if (is_basic(j)) continue;
                if (d[j] < best) {
                    entering = j;
                    if (bland) break;
                    best = d[j];
                }
            }
            if (entering == npos) return {};

            std::size_t leave = npos;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, entering);
                if (a <= opts_.pivot_tol) continue;
                const double ratio = std::max(rhs(r), 0.0) / a;
                if (leave == npos) {
                    leave = r;
                    best_ratio = ratio;
                    continue;
                }
                const double slack = 1e-12 * (1.0 + best_ratio);
                if (ratio < best_ratio - slack) {
                    leave = r;
                    best_ratio = ratio;
                } else if (bland && ratio <= best_ratio + slack && basis_[r] < basis_[leave]) {
                    leave = r;
                }
            }
            if (leave == npos) return {true, entering};

            if (++iterations_ > limit_)
                throw IterationLimitError("simplex iteration limit (" + std::to_string(limit_) + ") exceeded");
            degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
            pivot(leave, entering);
            const double de = d[entering];
            if (de != 0.0) {
                for (std::size_t j = 0; j < cols_; ++j) d[j] -= de * at(leave, j);
            }
            d[entering] = 0.0;
        }
    }

    /// Moves zero-valued artificials out of the basis after phase 1. Rows
    /// where no non-artificial pivot exists are redundant and keep their
    /// artificial (barred from re-entering, so it stays at zero).
    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (kind_[basis_[r]] != ColumnKind::artificial) continue;
            rhs(r) = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (kind_[j] == ColumnKind::artificial || is_basic(j)) continue;
                if (std::abs(at(r, j)) > opts_.pivot_tol) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }

    double basic_artificial_sum() const {
        double sum = 0.0;
        for (std::size_t r = 0; r < m_; ++r)
            if (kind_[basis_[r]] == ColumnKind::artificial) sum += std::max(rhs(r), 0.0);
        return sum;
    }

    /// y_scaled = c_B B^-1, read from the identity columns.
    std::vector<double> scaled_duals(const std::vector<double>& cost) const {
        std::vector<double> y(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            double sum = 0.0;
            for (std::size_t r = 0; r < m_; ++r) sum += cost[basis_[r]] * at(r, init_col_[i]);
            y[i] = sum;
        }
        return y;
    }

    std::vector<double> original_duals(const std::vector<double>& cost) const {
        auto y = scaled_duals(cost);
        for (std::size_t i = 0; i < m_; ++i) y[i] = y[i] * sign_[i] / scale_[i];
        return y;
    }

    std::vector<double> structural_values() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t r = 0; r < m_; ++r)
            if (kind_[basis_[r]] == ColumnKind::structural) x[basis_[r]] = std::max(rhs(r), 0.0);
        return x;
    }

    std::vector<double> ray(std::size_t entering) const {
        std::vector<double> d(n_, 0.0);
        if (kind_[entering] == ColumnKind::structural) d[entering] = 1.0;
        for (std::size_t r = 0; r < m_; ++r)
            if (kind_[basis_[r]] == ColumnKind::structural) d[basis_[r]] = -at(r, entering);
        return d;
    }

    /// Original rows with a positive artificial or a nonzero phase-1 dual.
    std::vector<std::size_t> phase1_culprits(const std::vector<double>& phase1_cost) const {
        const auto y = scaled_duals(phase1_cost);
        std::vector<bool> flagged(m_, false);
        for (std::size_t i = 0; i < m_; ++i)
            if (std::abs(y[i]) > 1e-9) flagged[i] = true;
        for (std::size_t r = 0; r < m_; ++r)
            if (kind_[basis_[r]] == ColumnKind::artificial && rhs(r) > opts_.feasibility_tol)
                flagged[owner_[basis_[r]]] = true;
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < m_; ++i)
            if (flagged[i]) out.push_back(i);
        return out;
    }

    std::vector<BasisEntry> basis_description() const {
        std::vector<BasisEntry> out;
        out.reserve(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            const std::size_t c = basis_[r];
            switch (kind_[c]) {
                case ColumnKind::structural: out.push_back({BasisEntry::Kind::structural, c}); break;
                case ColumnKind::slack: out.push_back({BasisEntry::Kind::slack, owner_[c]}); break;
                case ColumnKind::artificial: out.push_back({BasisEntry::Kind::artificial, owner_[c]}); break;
            }
        }
        return out;
    }

    double scale(std::size_t i) const { return scale_[i]; }

private:
    bool is_basic(std::size_t col) const {
        return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
    }

    std::vector<double> reduced_costs(const std::vector<double>& cost) const {
        std::vector<double> d(cost);
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = cost[basis_[r]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * at(r, j);
        }
        for (std::size_t r = 0; r < m_; ++r) d[basis_[r]] = 0.0;
        return d;
    }

    void pivot(std::size_t p, std::size_t e) {
        const double inv = 1.0 / at(p, e);
        for (std::size_t c = 0; c < width_; ++c) at(p, c) *= inv;
        at(p, e) = 1.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == p) continue;
            const double f = at(r, e);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) at(r, c) -= f * at(p, c);
            at(r, e) = 0.0;
            if (rhs(r) < 0.0 && rhs(r) > -1e-12) rhs(r) = 0.0;
        }
        basis_[p] = e;
    }

    const Options& opts_;
    std::size_t n_;
    std::size_t m_;
    std::size_t cols_ = 0;
    std::size_t width_ = 0;
    std::vector<double> scale_;
    std::vector<double> sign_;
    std::vector<Relation> relation_;
    std::vector<ColumnKind> kind_;
    std::vector<std::size_t> owner_;
    std::vector<std::size_t> slack_col_;
    std::vector<std::size_t> art_col_;
    std::vector<std::size_t> init_col_;
    std::vector<std::size_t> basis_;
    std::vector<double> data_;
    std::size_t iterations_ = 0;
    std::size_t limit_ = 0;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
    validate(problem);
    Tableau t(problem, options);
    Solution out;

    const auto cost1 = t.phase1_costs();
    t.run(cost1, true);
    if (t.basic_artificial_sum() > options.feasibility_tol) {
        out.status = Status::infeasible;
        out.primal = t.structural_values();
        out.infeasible_rows = t.phase1_culprits(cost1);
        out.basis = t.basis_description();
        out.iterations = t.iterations();
        return out;
    }

    t.drive_out_artificials();
    const auto cost2 = t.phase2_costs(problem.objective);
    const auto result = t.run(cost2, false);
    out.primal = t.structural_values();
    out.basis = t.basis_description();
    out.iterations = t.iterations();
    if (result.unbounded) {
        out.status = Status::unbounded;
        out.ray = t.ray(result.entering);
        return out;
    }

    out.status = Status::optimal;
    const std::size_t n = problem.variable_count();
    for (std::size_t j = 0; j < n; ++j) out.objective += problem.objective[j] * out.primal[j];
    out.duals = t.original_duals(cost2);
    for (std::size_t i = 0; i < problem.rows.size(); ++i) {
        const auto& row = problem.rows[i];
        const double residual = std::abs(activity(row, out.primal) - row.rhs) / t.scale(i);
        if (row.relation == Relation::equal || residual <= options.binding_tol) out.binding_rows.push_back(i);
        else out.duals[i] = 0.0;  // slack is basic; clear rounding residue
    }
    out.reduced_costs = problem.objective;
    for (std::size_t i = 0; i < problem.rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) out.reduced_costs[j] -= problem.rows[i].coefficients[j] * out.duals[i];
    return out;
}

FeasibilityReport phase1_feasibility(const Problem& problem, const Options& options) {
    validate(problem);
    Tableau t(problem, options);
    const auto cost1 = t.phase1_costs();
    t.run(cost1, true);
    FeasibilityReport report;
    report.residual = t.basic_artificial_sum();
    report.feasible = report.residual <= options.feasibility_tol;
    if (!report.feasible) report.violated_rows = t.phase1_culprits(cost1);
    return report;
}

}  // namespace nutrilp::lp
