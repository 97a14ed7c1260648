#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nutrilp {

enum class Unit { kcal, g, mg, mcg, mcg_rae, mcg_dfe };

/// Nutrients known to the engine, in canonical order. Canonical order drives
/// LP row order and report layout, so new entries go at the end.
enum class Nutrient : std::size_t {
    energy,
    protein,
    carbohydrate,
    fat,
    fiber,
    calcium,
    iron,
    magnesium,
    phosphorus,
    potassium,
    sodium,
    zinc,
    copper,
    selenium,
    vitamin_a,
    vitamin_c,
    vitamin_e,
    thiamin,
    riboflavin,
    niacin,
    vitamin_b6,
    folate,
    vitamin_b12,
};

inline constexpr std::size_t kNutrientCount = 23;

struct NutrientInfo {
    Nutrient nutrient;
    std::string_view id;
    std::string_view display_name;
    Unit unit;
};

const std::array<NutrientInfo, kNutrientCount>& nutrient_table();
const NutrientInfo& info(Nutrient n);

std::string_view to_string(Unit u);
std::optional<Unit> parse_unit(std::string_view token);

std::string_view id_of(Nutrient n);
std::optional<Nutrient> parse_nutrient(std::string_view id);

/// `<id>_<unit>` column header, e.g. `iron_mg`, `vitamin_a_mcg_rae`.
std::string column_name(Nutrient n);

/// Parses a `<id>_<unit>` column header. Throws InputError when the nutrient
/// is known but the unit differs from its canonical unit; returns nullopt
/// when no nutrient id matches.
std::optional<Nutrient> parse_column_name(std::string_view column);

inline constexpr std::size_t index_of(Nutrient n) { return static_cast<std::size_t>(n); }

}  // namespace nutrilp
