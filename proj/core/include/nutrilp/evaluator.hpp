#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nutrilp/nutrition.hpp"

namespace nutrilp {

/// Within this many percentage points of 100% a value counts as "at" a bound.
inline constexpr double kAtBoundTolerancePct = 0.5;

enum class Band {
    deficient_severe,
    deficient_mild,
    adequate_low,
    adequate_mid,
    adequate_high,
    at_bound,
    excess_mild,
    excess_severe,
};

std::string_view to_string(Band b);

/// Colour family the workbook uses for a band: red outside, blue inside,
/// white at a bound.
std::string_view colour_of(Band b);

Band classify_band(std::optional<double> percent_of_lower, std::optional<double> percent_of_upper);

/// Shade strength in [0, 1]: grows with distance outside a bound, and with
/// closeness to the interval midpoint inside it. Zero at a bound.
double band_intensity(std::optional<double> percent_of_lower, std::optional<double> percent_of_upper);

struct NutrientAdequacy {
    Nutrient nutrient;
    double delivered = 0.0;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> percent_of_lower;
    std::optional<double> percent_of_upper;
    Band band = Band::adequate_mid;
    double intensity = 0.0;

    bool meets_lower() const;
    bool meets_upper() const;
};

struct EnergyBalance {
    double delivered = 0.0;
    std::optional<double> target;
    std::optional<double> percent_of_target;

    bool balanced() const;
};

struct AdequacyReport {
    std::vector<NutrientAdequacy> nutrients;  // canonical order, bounded nutrients only
    EnergyBalance energy;
    bool fully_adequate = false;
    double total_cost = 0.0;
};

AdequacyReport evaluate(const DietPlan& plan, std::span<const FoodItem> foods, const RequirementSet& reqs);

}  // namespace nutrilp
