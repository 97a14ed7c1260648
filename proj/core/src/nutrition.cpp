#include "nutrilp/nutrition.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "nutrilp/error.hpp"

namespace nutrilp {

namespace {

constexpr std::array<std::pair<FoodGroup, std::string_view>, 5> kGroups{{
    {FoodGroup::starchy_staples, "starchy_staples"},
    {FoodGroup::fruits_vegetables, "fruits_vegetables"},
    {FoodGroup::nuts_beans_seeds_oils, "nuts_beans_seeds_oils"},
    {FoodGroup::animal_source, "animal_source"},
    {FoodGroup::milk_beverages, "milk_beverages"},
}};

constexpr std::array<std::pair<BoundKind, std::string_view>, 3> kKinds{{
    {BoundKind::lower, "lower"},
    {BoundKind::upper, "upper"},
    {BoundKind::equality, "equality"},
}};

constexpr std::array<std::pair<Provenance, std::string_view>, 8> kProvenances{{
    {Provenance::rda, "RDA"},
    {Provenance::ai, "AI"},
    {Provenance::ul, "UL"},
    {Provenance::cdrr, "CDRR"},
    {Provenance::amdr_low, "AMDR_low"},
    {Provenance::amdr_high, "AMDR_high"},
    {Provenance::eer, "EER"},
    {Provenance::custom, "custom"},
}};

template <typename E, std::size_t N>
std::string_view lookup_name(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
    for (const auto& [value, name] : table)
        if (value == e) return name;
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup_value(const std::array<std::pair<E, std::string_view>, N>& table,
                              std::string_view token) {
    for (const auto& [value, name] : table)
        if (name == token) return value;
    return std::nullopt;
}

std::string describe(Nutrient n, BoundKind k) {
    return std::string(id_of(n)) + " " + std::string(to_string(k)) + " bound";
}

}  // namespace

std::string_view to_string(FoodGroup g) { return lookup_name(kGroups, g); }
std::optional<FoodGroup> parse_food_group(std::string_view token) { return lookup_value(kGroups, token); }
std::string_view to_string(BoundKind k) { return lookup_name(kKinds, k); }
std::optional<BoundKind> parse_bound_kind(std::string_view token) { return lookup_value(kKinds, token); }
std::string_view to_string(Provenance p) { return lookup_name(kProvenances, p); }
std::optional<Provenance> parse_provenance(std::string_view token) {
    return lookup_value(kProvenances, token);
}

FoodItem::FoodItem(Fields fields) : f_(std::move(fields)) {
    const auto where = [this] { return "food '" + f_.id + "': "; };
    if (f_.id.empty()) throw InputError("food id must not be empty");
    if (!std::isfinite(f_.price_per_serving) || f_.price_per_serving <= 0.0)
        throw InputError(where() + "price_per_serving must be > 0");
    if (!std::isfinite(f_.serving_mass_g) || f_.serving_mass_g <= 0.0)
        throw InputError(where() + "serving mass must be > 0");
    for (const auto& [nutrient, amount] : f_.composition) {
        if (!std::isfinite(amount) || amount < 0.0)
            throw InputError(where() + std::string(id_of(nutrient)) + " amount must be >= 0");
    }
    const auto energy = f_.composition.find(Nutrient::energy);
    if (energy == f_.composition.end())
        throw InputError(where() + "energy entry is required");
    if (energy->second == 0.0 && !f_.calorie_free)
        throw InputError(where() + "zero energy requires the calorie_free flag");
}

double FoodItem::amount(Nutrient n) const {
    const auto it = f_.composition.find(n);
    return it == f_.composition.end() ? 0.0 : it->second;
}

FoodItem FoodItem::with_price(double price) const {
    Fields copy = f_;
    copy.price_per_serving = price;
    return FoodItem(std::move(copy));
}

const NutrientBounds* RequirementSet::find(Nutrient n) const {
    const auto it = bounds_.find(n);
    return it == bounds_.end() ? nullptr : &it->second;
}

std::size_t RequirementSet::bound_count() const {
    std::size_t count = 0;
    for (const auto& [n, b] : bounds_)
        count += (b.lower ? 1 : 0) + (b.upper ? 1 : 0) + (b.equality ? 1 : 0);
    return count;
}

std::optional<double> atwater_kcal_per_g(Nutrient n) {
    switch (n) {
        case Nutrient::protein:
        case Nutrient::carbohydrate:
            return 4.0;
        case Nutrient::fat:
            return 9.0;
        default:
            return std::nullopt;
    }
}

RequirementSet build_requirement_set(std::string person, std::optional<double> energy_kcal,
                                     std::span<const DriEntry> dri_table) {
    if (energy_kcal && (!std::isfinite(*energy_kcal) || *energy_kcal <= 0.0))
        throw InputError("energy target must be > 0 kcal/day");

    RequirementSet set;
    set.person_ = std::move(person);
    set.energy_kcal_ = energy_kcal;

    for (const auto& entry : dri_table) {
        if (entry.nutrient == Nutrient::energy)
            throw InputError("energy is set through the energy target, not as a nutrient bound");
        if (!std::isfinite(entry.value) || entry.value < 0.0)
            throw InputError(describe(entry.nutrient, entry.kind) + ": value must be >= 0");
        if (entry.kind == BoundKind::equality && entry.provenance != Provenance::eer &&
            entry.provenance != Provenance::custom)
            throw InputError(describe(entry.nutrient, entry.kind) +
                             ": equality bounds carry EER or custom provenance");

        double value = entry.value;
        switch (entry.basis) {
            case DriBasis::absolute:
                break;
            case DriBasis::per_1000_kcal:
                if (!energy_kcal)
                    throw InputError(describe(entry.nutrient, entry.kind) +
                                     ": density value needs an energy target");
                value = std::round(entry.value * *energy_kcal / 1000.0);
                break;
            case DriBasis::percent_energy: {
                const auto density = atwater_kcal_per_g(entry.nutrient);
                if (!density)
                    throw InputError(describe(entry.nutrient, entry.kind) +
                                     ": percent-of-energy applies to protein, carbohydrate, fat");
                if (!energy_kcal)
                    throw InputError(describe(entry.nutrient, entry.kind) +
                                     ": percent-of-energy value needs an energy target");
                value = entry.value / 100.0 * *energy_kcal / *density;
                break;
            }
        }

        auto& slot = set.bounds_[entry.nutrient];
        std::optional<Bound>* target = nullptr;
        switch (entry.kind) {
            case BoundKind::lower: target = &slot.lower; break;
            case BoundKind::upper: target = &slot.upper; break;
            case BoundKind::equality: target = &slot.equality; break;
        }
        if (target->has_value())
            throw InputError("duplicate " + describe(entry.nutrient, entry.kind));
        *target = Bound{entry.kind, value, entry.provenance};
    }

    for (const auto& [nutrient, b] : set.bounds_) {
        if (b.equality && (b.lower || b.upper))
            throw InputError(std::string(id_of(nutrient)) +
                             ": an equality bound cannot be combined with lower/upper bounds");
        if (b.lower && b.upper && !(b.lower->value < b.upper->value))
            throw InputError(std::string(id_of(nutrient)) + ": lower bound " +
                             std::to_string(b.lower->value) + " is not below upper bound " +
                             std::to_string(b.upper->value));
    }
    return set;
}

DietPlan::DietPlan(std::initializer_list<std::pair<const std::string, double>> items) {
    for (const auto& [id, q] : items) set(id, q);
}

DietPlan::DietPlan(std::map<std::string, double> items) {
    for (const auto& [id, q] : items) set(id, q);
}

void DietPlan::set(const std::string& id, double servings) {
    if (!std::isfinite(servings) || servings < 0.0)
        throw InputError("servings of '" + id + "' must be a non-negative number");
    items_[id] = servings;
}

double DietPlan::servings(const std::string& id) const {
    const auto it = items_.find(id);
    return it == items_.end() ? 0.0 : it->second;
}

const FoodItem* find_food(std::span<const FoodItem> foods, std::string_view id) {
    for (const auto& f : foods)
        if (f.id() == id) return &f;
    return nullptr;
}

const FoodItem& require_food(std::span<const FoodItem> foods, std::string_view id) {
    const auto* f = find_food(foods, id);
    if (f == nullptr) throw InputError("unknown food id '" + std::string(id) + "'");
    return *f;
}

double plan_cost(const DietPlan& plan, std::span<const FoodItem> foods) {
    double total = 0.0;
    for (const auto& [id, q] : plan.items()) total += require_food(foods, id).price_per_serving() * q;
    return total;
}

NutrientTotals plan_nutrients(const DietPlan& plan, std::span<const FoodItem> foods) {
    NutrientTotals totals;
    for (const auto& f : foods)
        for (const auto& [n, amount] : f.composition()) totals.emplace(n, 0.0);
    for (const auto& [id, q] : plan.items()) {
        const auto& f = require_food(foods, id);
        for (const auto& [n, amount] : f.composition()) totals[n] += amount * q;
    }
    return totals;
}

std::map<std::string, double> plan_to_grams(const DietPlan& plan, std::span<const FoodItem> foods) {
    std::map<std::string, double> grams;
    for (const auto& [id, q] : plan.items()) grams[id] = q * require_food(foods, id).serving_mass_g();
    return grams;
}

DietPlan plan_from_grams(const std::map<std::string, double>& grams, std::span<const FoodItem> foods) {
    DietPlan plan;
    for (const auto& [id, g] : grams) plan.set(id, g / require_food(foods, id).serving_mass_g());
    return plan;
}

}  // namespace nutrilp
