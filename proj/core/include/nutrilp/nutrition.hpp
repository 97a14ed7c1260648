#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nutrilp/nutrient.hpp"

namespace nutrilp {

enum class FoodGroup {
    starchy_staples,
    fruits_vegetables,
    nuts_beans_seeds_oils,
    animal_source,
    milk_beverages,
};

std::string_view to_string(FoodGroup g);
std::optional<FoodGroup> parse_food_group(std::string_view token);

using Composition = std::map<Nutrient, double>;

/// A purchasable item. Quantities elsewhere are always in servings of this
/// item; `serving_mass_g` is the only link to grams.
class FoodItem {
public:
    struct Fields {
        std::string id;
        std::string name;
        FoodGroup group = FoodGroup::starchy_staples;
        double price_per_serving = 0.0;
        double serving_mass_g = 0.0;
        Composition composition;
        std::optional<std::string> source_id;
        bool calorie_free = false;

        friend bool operator==(const Fields&, const Fields&) = default;
    };

    /// Throws InputError when any invariant fails (non-positive price or
    /// mass, negative amount, energy missing or zero without calorie_free).
    explicit FoodItem(Fields fields);

    const std::string& id() const { return f_.id; }
    const std::string& name() const { return f_.name; }
    FoodGroup group() const { return f_.group; }
    double price_per_serving() const { return f_.price_per_serving; }
    double serving_mass_g() const { return f_.serving_mass_g; }
    const Composition& composition() const { return f_.composition; }
    const std::optional<std::string>& source_id() const { return f_.source_id; }
    bool calorie_free() const { return f_.calorie_free; }

    /// Amount per serving; 0 when the composition has no entry.
    double amount(Nutrient n) const;

    FoodItem with_price(double price) const;

    friend bool operator==(const FoodItem&, const FoodItem&) = default;

private:
    Fields f_;
};

enum class BoundKind { lower, upper, equality };

enum class Provenance { rda, ai, ul, cdrr, amdr_low, amdr_high, eer, custom };

std::string_view to_string(BoundKind k);
std::optional<BoundKind> parse_bound_kind(std::string_view token);
std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view token);

struct Bound {
    BoundKind kind;
    double value;  // amount per day, nutrient's canonical unit
    Provenance provenance;

    friend bool operator==(const Bound&, const Bound&) = default;
};

struct NutrientBounds {
    std::optional<Bound> lower;
    std::optional<Bound> upper;
    std::optional<Bound> equality;

    friend bool operator==(const NutrientBounds&, const NutrientBounds&) = default;
};

/// How a DRI table value is expressed before conversion to amount/day.
enum class DriBasis {
    absolute,        // nutrient unit per day
    per_1000_kcal,   // density, e.g. fiber AI in g per 1000 kcal
    percent_energy,  // AMDR, percent of energy target
};

struct DriEntry {
    Nutrient nutrient;
    BoundKind kind;
    double value;
    Provenance provenance;
    DriBasis basis = DriBasis::absolute;
};

/// One person's constraint schedule. Energy, when present, is an equality.
class RequirementSet {
public:
    const std::string& person() const { return person_; }
    const std::optional<double>& energy_kcal() const { return energy_kcal_; }
    const std::map<Nutrient, NutrientBounds>& bounds() const { return bounds_; }

    const NutrientBounds* find(Nutrient n) const;
    std::size_t bound_count() const;

    friend bool operator==(const RequirementSet&, const RequirementSet&) = default;

private:
    friend RequirementSet build_requirement_set(std::string person,
                                                std::optional<double> energy_kcal,
                                                std::span<const DriEntry> dri_table);
    std::string person_;
    std::optional<double> energy_kcal_;
    std::map<Nutrient, NutrientBounds> bounds_;
};

/// kcal per gram used to linearize AMDR percent-of-energy ranges.
std::optional<double> atwater_kcal_per_g(Nutrient n);

/// Builds and validates a requirement set. Density entries become
/// `round(density * energy / 1000)` g/day; percent-of-energy entries become
/// `pct / 100 * energy / kcal_per_g`. `energy_kcal` may be omitted only for
/// micronutrient-only schedules, in which case converted entries are errors.
RequirementSet build_requirement_set(std::string person, std::optional<double> energy_kcal,
                                     std::span<const DriEntry> dri_table);

/// Servings per day by food id.
class DietPlan {
public:
    DietPlan() = default;
    DietPlan(std::initializer_list<std::pair<const std::string, double>> items);
    explicit DietPlan(std::map<std::string, double> items);

    void set(const std::string& id, double servings);
    double servings(const std::string& id) const;
    const std::map<std::string, double>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    friend bool operator==(const DietPlan&, const DietPlan&) = default;

private:
    std::map<std::string, double> items_;
};

using NutrientTotals = std::map<Nutrient, double>;

const FoodItem* find_food(std::span<const FoodItem> foods, std::string_view id);
const FoodItem& require_food(std::span<const FoodItem> foods, std::string_view id);

double plan_cost(const DietPlan& plan, std::span<const FoodItem> foods);

/// Totals for every nutrient present in any food of `foods`.
NutrientTotals plan_nutrients(const DietPlan& plan, std::span<const FoodItem> foods);

std::map<std::string, double> plan_to_grams(const DietPlan& plan, std::span<const FoodItem> foods);

/// Inverse of plan_to_grams.
DietPlan plan_from_grams(const std::map<std::string, double>& grams, std::span<const FoodItem> foods);

}  // namespace nutrilp
