#include "nutrilp/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nutrilp {

std::string_view to_string(Band b) {
    switch (b) {
        case Band::deficient_severe: return "deficient-severe";
        case Band::deficient_mild: return "deficient-mild";
        case Band::adequate_low: return "adequate-low";
        case Band::adequate_mid: return "adequate-mid";
        case Band::adequate_high: return "adequate-high";
        case Band::at_bound: return "at-bound";
        case Band::excess_mild: return "excess-mild";
        case Band::excess_severe: return "excess-severe";
    }
    return "?";
}

std::string_view colour_of(Band b) {
    switch (b) {
        case Band::deficient_severe:
        case Band::deficient_mild:
        case Band::excess_mild:
        case Band::excess_severe:
            return "red";
        case Band::at_bound:
            return "white";
        default:
            return "blue";
    }
}

namespace {

constexpr double kLow = 100.0 - kAtBoundTolerancePct;
constexpr double kHigh = 100.0 + kAtBoundTolerancePct;

// Position of the delivered amount inside [LB, UB] as a fraction, recovered
// from the two percentages alone: LB/UB = pu/pl.
std::optional<double> interval_position(std::optional<double> pl, std::optional<double> pu) {
    if (!pl || !pu || *pl <= 0.0) return std::nullopt;
    const double ratio = *pu / *pl;  // LB / UB
    if (ratio >= 1.0) return std::nullopt;
    return ratio * (*pl / 100.0 - 1.0) / (1.0 - ratio);
}

}  // namespace

Band classify_band(std::optional<double> pl, std::optional<double> pu) {
    if (pl && *pl < kLow) return *pl >= 75.0 ? Band::deficient_mild : Band::deficient_severe;
    if (pu && *pu > kHigh) return *pu <= 125.0 ? Band::excess_mild : Band::excess_severe;
    if ((pl && *pl <= kHigh) || (pu && *pu >= kLow)) return Band::at_bound;
    const auto t = interval_position(pl, pu);
    if (!t) return Band::adequate_mid;
    if (*t < 1.0 / 3.0) return Band::adequate_low;
    if (*t < 2.0 / 3.0) return Band::adequate_mid;
    return Band::adequate_high;
}

double band_intensity(std::optional<double> pl, std::optional<double> pu) {
    switch (classify_band(pl, pu)) {
        case Band::deficient_severe:
        case Band::deficient_mild:
            return std::clamp((100.0 - *pl) / 100.0, 0.0, 1.0);
        case Band::excess_mild:
        case Band::excess_severe:
            return std::clamp((*pu - 100.0) / 100.0, 0.0, 1.0);
        case Band::at_bound:
            return 0.0;
        default: {
            const auto t = interval_position(pl, pu);
            if (!t) return 0.5;
            return std::clamp(1.0 - std::abs(2.0 * *t - 1.0), 0.0, 1.0);
        }
    }
}

bool NutrientAdequacy::meets_lower() const { return !percent_of_lower || *percent_of_lower >= kLow; }
bool NutrientAdequacy::meets_upper() const { return !percent_of_upper || *percent_of_upper <= kHigh; }

bool EnergyBalance::balanced() const {
    return !percent_of_target || std::abs(*percent_of_target - 100.0) <= kAtBoundTolerancePct;
}

AdequacyReport evaluate(const DietPlan& plan, std::span<const FoodItem> foods, const RequirementSet& reqs) {
    AdequacyReport report;
    report.total_cost = plan_cost(plan, foods);
    const auto totals = plan_nutrients(plan, foods);
    const auto delivered = [&totals](Nutrient n) {
        const auto it = totals.find(n);
        return it == totals.end() ? 0.0 : it->second;
    };
    const auto percent = [](double amount, double bound) -> double {
        if (bound > 0.0) return amount / bound * 100.0;
        // Zero upper bound: met only by zero intake.
        return amount > 0.0 ? std::numeric_limits<double>::infinity() : 100.0;
    };

    report.energy.delivered = delivered(Nutrient::energy);
    if (const auto& target = reqs.energy_kcal()) {
        report.energy.target = *target;
        report.energy.percent_of_target = report.energy.delivered / *target * 100.0;
    }

    bool adequate = report.energy.balanced();
    for (const auto& [nutrient, bounds] : reqs.bounds()) {
        NutrientAdequacy row;
        row.nutrient = nutrient;
        row.delivered = delivered(nutrient);
        const auto& lower = bounds.equality ? bounds.equality : bounds.lower;
        const auto& upper = bounds.equality ? bounds.equality : bounds.upper;
        if (lower) {
            row.lower = lower->value;
            // A zero lower bound is always met; no percentage is shown for it.
            if (lower->value > 0.0) row.percent_of_lower = percent(row.delivered, lower->value);
        }
        if (upper) {
            row.upper = upper->value;
            row.percent_of_upper = percent(row.delivered, upper->value);
        }
        row.band = classify_band(row.percent_of_lower, row.percent_of_upper);
        row.intensity = band_intensity(row.percent_of_lower, row.percent_of_upper);
        adequate = adequate && row.meets_lower() && row.meets_upper();
        report.nutrients.push_back(row);
    }
    report.fully_adequate = adequate;
    return report;
}

}  // namespace nutrilp
