#include "nutrilp/diet_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "nutrilp/evaluator.hpp"

namespace nutrilp {

namespace {

std::string compact_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

lp::Relation relation_of(BoundKind k) {
    switch (k) {
        case BoundKind::lower: return lp::Relation::greater_equal;
        case BoundKind::upper: return lp::Relation::less_equal;
        case BoundKind::equality: return lp::Relation::equal;
    }
    return lp::Relation::equal;
}

bool contains(const std::vector<Constraint>& v, const Constraint& c) {
    return std::find(v.begin(), v.end(), c) != v.end();
}

std::string join_labels(const std::vector<Constraint>& cs) {
    std::string out;
    for (const auto& c : cs) {
        if (!out.empty()) out += "; ";
        out += c.label();
    }
    return out;
}

SolvedDiet infeasible_diet(std::vector<Constraint> conflicts, std::string diagnostic) {
    SolvedDiet s;
    s.status = lp::Status::infeasible;
    s.conflicts = std::move(conflicts);
    s.diagnostic = std::move(diagnostic);
    return s;
}

}  // namespace

std::string Constraint::label() const {
    const char* op = kind == BoundKind::lower ? ">=" : kind == BoundKind::upper ? "<=" : "=";
    return std::string(id_of(nutrient)) + " " + op + " " + compact_number(value) + " " +
           std::string(to_string(info(nutrient).unit));
}

std::vector<ConstraintReport> SolvedDiet::binding() const {
    std::vector<ConstraintReport> out;
    for (const auto& c : constraints)
        if (c.binding) out.push_back(c);
    return out;
}

DietLp build_lp(std::span<const FoodItem> foods, const RequirementSet& reqs) {
    if (foods.empty()) throw InputError("food list is empty");
    {
        std::set<std::string> ids;
        for (const auto& f : foods)
            if (!ids.insert(f.id()).second) throw InputError("duplicate food id '" + f.id() + "'");
    }

    std::vector<Constraint> rows;
    if (const auto& e = reqs.energy_kcal())
        rows.push_back({Nutrient::energy, BoundKind::equality, *e, Provenance::eer});
    for (const auto& [n, b] : reqs.bounds())
        if (b.equality) rows.push_back({n, BoundKind::equality, b.equality->value, b.equality->provenance});
    for (const auto& [n, b] : reqs.bounds())
        if (b.lower) rows.push_back({n, BoundKind::lower, b.lower->value, b.lower->provenance});
    for (const auto& [n, b] : reqs.bounds())
        if (b.upper) rows.push_back({n, BoundKind::upper, b.upper->value, b.upper->provenance});

    std::vector<Nutrient> missing;
    for (const auto& row : rows) {
        if (row.kind == BoundKind::upper || row.value <= 0.0) continue;
        const bool supplied = std::any_of(foods.begin(), foods.end(),
                                          [&](const FoodItem& f) { return f.amount(row.nutrient) > 0.0; });
        if (!supplied && std::find(missing.begin(), missing.end(), row.nutrient) == missing.end())
            missing.push_back(row.nutrient);
    }
    if (!missing.empty()) {
        std::string names;
        for (auto n : missing) names += (names.empty() ? "" : ", ") + std::string(id_of(n));
        throw StructuralInfeasibility("no food supplies " + names + ", which has a positive lower bound",
                                      std::move(missing));
    }

    DietLp out;
    out.problem.objective.reserve(foods.size());
    for (const auto& f : foods) {
        out.food_ids.push_back(f.id());
        out.problem.objective.push_back(f.price_per_serving());
    }
    for (const auto& row : rows) {
        lp::Row r;
        r.relation = relation_of(row.kind);
        r.rhs = row.value;
        r.coefficients.reserve(foods.size());
        for (const auto& f : foods) r.coefficients.push_back(f.amount(row.nutrient));
        out.problem.rows.push_back(std::move(r));
    }
    out.rows = std::move(rows);
    return out;
}

SolvedDiet solve_diet(std::span<const FoodItem> foods, const RequirementSet& reqs, const lp::Options& opts) {
    DietLp model;
    try {
        model = build_lp(foods, reqs);
    } catch (const StructuralInfeasibility& e) {
        std::vector<Constraint> conflicts;
        for (auto n : e.missing()) {
            const auto* b = reqs.find(n);
            if (n == Nutrient::energy && reqs.energy_kcal())
                conflicts.push_back({n, BoundKind::equality, *reqs.energy_kcal(), Provenance::eer});
            else if (b && b->lower)
                conflicts.push_back({n, BoundKind::lower, b->lower->value, b->lower->provenance});
            else if (b && b->equality)
                conflicts.push_back({n, BoundKind::equality, b->equality->value, b->equality->provenance});
        }
        return infeasible_diet(std::move(conflicts), e.what());
    }

    const auto sol = lp::solve(model.problem, opts);
    SolvedDiet out;
    out.status = sol.status;
    out.iterations = sol.iterations;
    out.basis = sol.basis;
    out.food_ids = model.food_ids;

    if (sol.status == lp::Status::infeasible) {
        for (auto i : sol.infeasible_rows) out.conflicts.push_back(model.rows[i]);
        out.diagnostic = "no combination of foods satisfies these bounds together: " + join_labels(out.conflicts);
        return out;
    }
    if (sol.status == lp::Status::unbounded) {
        out.diagnostic = "cost is unbounded below";
        return out;
    }

    for (std::size_t j = 0; j < model.food_ids.size(); ++j)
        if (sol.primal[j] > kSupportThreshold) out.plan.set(model.food_ids[j], sol.primal[j]);
    out.cost = plan_cost(out.plan, foods);
    out.delivered = plan_nutrients(out.plan, foods);

    const std::set<std::size_t> binding(sol.binding_rows.begin(), sol.binding_rows.end());
    for (std::size_t i = 0; i < model.rows.size(); ++i) {
        ConstraintReport r;
        r.constraint = model.rows[i];
        r.delivered = lp::activity(model.problem.rows[i], sol.primal);
        r.shadow_price = sol.duals[i];
        r.binding = binding.count(i) > 0;
        out.constraints.push_back(r);
    }
    return out;
}

std::vector<FoodItem> apply_price_overrides(std::span<const FoodItem> foods,
                                            const std::map<std::string, double>& overrides) {
    for (const auto& [id, price] : overrides) {
        require_food(foods, id);
        if (!std::isfinite(price) || price <= 0.0)
            throw InputError("override price for '" + id + "' must be > 0");
    }
    std::vector<FoodItem> out;
    out.reserve(foods.size());
    for (const auto& f : foods) {
        const auto it = overrides.find(f.id());
        out.push_back(it == overrides.end() ? f : f.with_price(it->second));
    }
    return out;
}

WhatIf whatif_price(std::span<const FoodItem> foods, const RequirementSet& reqs,
                    const std::map<std::string, double>& overrides, const lp::Options& opts) {
    const auto changed = apply_price_overrides(foods, overrides);
    WhatIf w;
    w.before = solve_diet(foods, reqs, opts);
    w.after = solve_diet(changed, reqs, opts);

    if (w.before.optimal() && w.after.optimal()) w.delta.cost_change = w.after.cost - w.before.cost;
    for (const auto& f : foods) {
        const bool was = w.before.plan.servings(f.id()) > kSupportThreshold;
        const bool is = w.after.plan.servings(f.id()) > kSupportThreshold;
        if (is && !was) w.delta.entering.push_back(f.id());
        if (was && !is) w.delta.leaving.push_back(f.id());
    }
    std::vector<Constraint> before_binding, after_binding;
    for (const auto& r : w.before.binding()) before_binding.push_back(r.constraint);
    for (const auto& r : w.after.binding()) after_binding.push_back(r.constraint);
    for (const auto& c : after_binding)
        if (!contains(before_binding, c)) w.delta.became_binding.push_back(c);
    for (const auto& c : before_binding)
        if (!contains(after_binding, c)) w.delta.stopped_binding.push_back(c);
    return w;
}

std::map<std::string, double> cost_per_energy(std::span<const FoodItem> foods) {
    std::map<std::string, double> out;
    for (const auto& f : foods) {
        const double kcal = f.amount(Nutrient::energy);
        if (kcal <= 0.0) throw InputError("food '" + f.id() + "' provides no energy");
        out[f.id()] = 100.0 * f.price_per_serving() / kcal;
    }
    return out;
}

ObservedComparison compare_to_observed(const SolvedDiet& solved, const std::map<std::string, double>& observed_g,
                                       std::span<const FoodItem> foods, const RequirementSet& reqs) {
    for (const auto& [id, g] : observed_g) {
        require_food(foods, id);
        if (!std::isfinite(g) || g < 0.0) throw InputError("observed grams of '" + id + "' must be >= 0");
    }
    const auto observed_plan = plan_from_grams(observed_g, foods);
    const auto modeled_g = plan_to_grams(solved.plan, foods);

    ObservedComparison out;
    for (const auto& f : foods) {
        const auto m = modeled_g.find(f.id());
        const auto o = observed_g.find(f.id());
        if (m == modeled_g.end() && o == observed_g.end()) continue;
        FoodComparison row;
        row.id = f.id();
        row.modeled_g = m == modeled_g.end() ? 0.0 : m->second;
        row.observed_g = o == observed_g.end() ? 0.0 : o->second;
        row.difference_g = row.observed_g - row.modeled_g;
        out.foods.push_back(row);
    }
    out.observed_nutrients = plan_nutrients(observed_plan, foods);

    const auto report = evaluate(observed_plan, foods, reqs);
    out.energy_percent_of_target = report.energy.percent_of_target;
    for (const auto& row : report.nutrients) {
        const auto* b = reqs.find(row.nutrient);
        if (!row.meets_lower()) {
            const auto& bound = b->equality ? *b->equality : *b->lower;
            out.violations.push_back({{row.nutrient, bound.kind, bound.value, bound.provenance}, row.delivered});
        }
        if (!row.meets_upper()) {
            const auto& bound = b->equality ? *b->equality : *b->upper;
            out.violations.push_back({{row.nutrient, bound.kind, bound.value, bound.provenance}, row.delivered});
        }
    }
    return out;
}

}  // namespace nutrilp
