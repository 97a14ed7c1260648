#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nutrilp/lp.hpp"
#include "nutrilp/nutrition.hpp"

namespace nutrilp {

/// A food is "in the diet" above this many servings/day.
inline constexpr double kSupportThreshold = 1e-6;

/// One LP row in nutrition terms.
struct Constraint {
    Nutrient nutrient;
    BoundKind kind;
    double value;
    Provenance provenance;

    /// e.g. "iron >= 18 mg", "energy = 2330 kcal".
    std::string label() const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct DietLp {
    lp::Problem problem;
    std::vector<std::string> food_ids;  // variable j <-> food_ids[j]
    std::vector<Constraint> rows;       // row i <-> rows[i]
};

/// Raised by build_lp when a lower-bounded nutrient is supplied by no food.
class StructuralInfeasibility : public InputError {
public:
    StructuralInfeasibility(std::string message, std::vector<Nutrient> missing)
        : InputError(std::move(message)), missing_(std::move(missing)) {}
    const std::vector<Nutrient>& missing() const { return missing_; }

private:
    std::vector<Nutrient> missing_;
};

/// Row order: energy equality, other equalities, lower bounds, upper bounds;
/// within each block, canonical nutrient order.
DietLp build_lp(std::span<const FoodItem> foods, const RequirementSet& reqs);

struct ConstraintReport {
    Constraint constraint;
    double delivered = 0.0;
    double shadow_price = 0.0;  // currency per nutrient unit, d(cost)/d(bound)
    bool binding = false;
};

struct SolvedDiet {
    lp::Status status = lp::Status::infeasible;
    DietPlan plan;  // strictly positive quantities only
    double cost = 0.0;
    NutrientTotals delivered;
    std::vector<ConstraintReport> constraints;  // all rows, LP order
    /// Bounds named in the infeasibility certificate.
    std::vector<Constraint> conflicts;
    std::string diagnostic;
    std::size_t iterations = 0;
    std::vector<lp::BasisEntry> basis;
    std::vector<std::string> food_ids;

    bool optimal() const { return status == lp::Status::optimal; }
    std::vector<ConstraintReport> binding() const;
};

SolvedDiet solve_diet(std::span<const FoodItem> foods, const RequirementSet& reqs,
                      const lp::Options& opts = {});

std::vector<FoodItem> apply_price_overrides(std::span<const FoodItem> foods,
                                            const std::map<std::string, double>& overrides);

struct WhatIfDelta {
    double cost_change = 0.0;
    std::vector<std::string> entering;
    std::vector<std::string> leaving;
    std::vector<Constraint> became_binding;
    std::vector<Constraint> stopped_binding;
};

struct WhatIf {
    SolvedDiet before;
    SolvedDiet after;
    WhatIfDelta delta;
};

WhatIf whatif_price(std::span<const FoodItem> foods, const RequirementSet& reqs,
                    const std::map<std::string, double>& overrides, const lp::Options& opts = {});

/// Currency per 100 kcal for each food.
std::map<std::string, double> cost_per_energy(std::span<const FoodItem> foods);

struct BoundViolation {
    Constraint constraint;
    double delivered;
};

struct FoodComparison {
    std::string id;
    double modeled_g = 0.0;
    double observed_g = 0.0;
    double difference_g = 0.0;  // observed - modeled
};

struct ObservedComparison {
    std::vector<FoodComparison> foods;
    NutrientTotals observed_nutrients;
    std::vector<BoundViolation> violations;
    std::optional<double> energy_percent_of_target;
};

/// Compares a solved diet with an observed diet given in g/day.
ObservedComparison compare_to_observed(const SolvedDiet& solved,
                                       const std::map<std::string, double>& observed_g,
                                       std::span<const FoodItem> foods, const RequirementSet& reqs);

}  // namespace nutrilp
