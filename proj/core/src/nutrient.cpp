#include "nutrilp/nutrient.hpp"

#include "nutrilp/error.hpp"

namespace nutrilp {

namespace {

constexpr std::array<NutrientInfo, kNutrientCount> kTable{{
    {Nutrient::energy, "energy", "Energy", Unit::kcal},
    {Nutrient::protein, "protein", "Protein", Unit::g},
    {Nutrient::carbohydrate, "carbohydrate", "Carbohydrate", Unit::g},
    {Nutrient::fat, "fat", "Total fat", Unit::g},
    {Nutrient::fiber, "fiber", "Fiber", Unit::g},
    {Nutrient::calcium, "calcium", "Calcium", Unit::mg},
    {Nutrient::iron, "iron", "Iron", Unit::mg},
    {Nutrient::magnesium, "magnesium", "Magnesium", Unit::mg},
    {Nutrient::phosphorus, "phosphorus", "Phosphorus", Unit::mg},
    {Nutrient::potassium, "potassium", "Potassium", Unit::mg},
    {Nutrient::sodium, "sodium", "Sodium", Unit::mg},
    {Nutrient::zinc, "zinc", "Zinc", Unit::mg},
    {Nutrient::copper, "copper", "Copper", Unit::mg},
    {Nutrient::selenium, "selenium", "Selenium", Unit::mcg},
    {Nutrient::vitamin_a, "vitamin_a", "Vitamin A", Unit::mcg_rae},
    {Nutrient::vitamin_c, "vitamin_c", "Vitamin C", Unit::mg},
    {Nutrient::vitamin_e, "vitamin_e", "Vitamin E", Unit::mg},
    {Nutrient::thiamin, "thiamin", "Thiamin", Unit::mg},
    {Nutrient::riboflavin, "riboflavin", "Riboflavin", Unit::mg},
    {Nutrient::niacin, "niacin", "Niacin", Unit::mg},
    {Nutrient::vitamin_b6, "vitamin_b6", "Vitamin B6", Unit::mg},
    {Nutrient::folate, "folate", "Folate", Unit::mcg_dfe},
    {Nutrient::vitamin_b12, "vitamin_b12", "Vitamin B12", Unit::mcg},
}};

constexpr std::array<std::pair<Unit, std::string_view>, 6> kUnits{{
    {Unit::kcal, "kcal"},
    {Unit::g, "g"},
    {Unit::mg, "mg"},
    {Unit::mcg, "mcg"},
    {Unit::mcg_rae, "mcg_rae"},
    {Unit::mcg_dfe, "mcg_dfe"},
}};

static_assert([] {
    for (std::size_t i = 0; i < kTable.size(); ++i)
        if (index_of(kTable[i].nutrient) != i) return false;
    return true;
}());

}  // namespace

const std::array<NutrientInfo, kNutrientCount>& nutrient_table() { return kTable; }

const NutrientInfo& info(Nutrient n) { return kTable.at(index_of(n)); }

std::string_view to_string(Unit u) {
    for (const auto& [unit, token] : kUnits)
        if (unit == u) return token;
    return "?";
}

std::optional<Unit> parse_unit(std::string_view token) {
    for (const auto& [unit, name] : kUnits)
        if (name == token) return unit;
    return std::nullopt;
}

std::string_view id_of(Nutrient n) { return info(n).id; }

std::optional<Nutrient> parse_nutrient(std::string_view id) {
    for (const auto& entry : kTable)
        if (entry.id == id) return entry.nutrient;
    return std::nullopt;
}

std::string column_name(Nutrient n) {
    const auto& i = info(n);
    return std::string(i.id) + "_" + std::string(to_string(i.unit));
}

std::optional<Nutrient> parse_column_name(std::string_view column) {
    // Longest id first so that e.g. `vitamin_b12_mcg` never matches a shorter id.
    const NutrientInfo* match = nullptr;
    for (const auto& entry : kTable) {
        if (column.size() > entry.id.size() && column.substr(0, entry.id.size()) == entry.id &&
            column[entry.id.size()] == '_') {
            if (match == nullptr || entry.id.size() > match->id.size()) match = &entry;
        }
    }
    if (match == nullptr) return std::nullopt;
    const auto unit_token = column.substr(match->id.size() + 1);
    if (unit_token != to_string(match->unit)) {
        throw InputError("column '" + std::string(column) + "': " + std::string(match->id) +
                         " is measured in " + std::string(to_string(match->unit)) + ", not '" +
                         std::string(unit_token) + "'");
    }
    return match->nutrient;
}

}  // namespace nutrilp
