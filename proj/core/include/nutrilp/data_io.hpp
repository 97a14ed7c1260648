#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nutrilp/nutrition.hpp"

namespace nutrilp::io {

inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr int kSessionVersion = 1;

struct Source {
    std::string description;
    std::string date;
    std::string currency = "USD";

    friend bool operator==(const Source&, const Source&) = default;
};

struct Dataset {
    std::string id;
    std::vector<FoodItem> foods;
    Source source;
    int schema_version = kDatasetSchemaVersion;
    /// Nutrient columns present in the source file, canonical order.
    std::vector<Nutrient> nutrient_columns;
    std::vector<std::string> warnings;

    friend bool operator==(const Dataset& l, const Dataset& r) {
        return l.id == r.id && l.foods == r.foods && l.source == r.source &&
               l.schema_version == r.schema_version && l.nutrient_columns == r.nutrient_columns;
    }
};

/// RFC 4180 records. Lines starting with '#' before the header are metadata
/// and are returned separately as key/value pairs (`# key: value`).
struct CsvDocument {
    std::map<std::string, std::string> metadata;
    std::vector<std::vector<std::string>> records;  // records[0] is the header
};

CsvDocument parse_csv(std::istream& in);
std::string csv_escape(const std::string& field);

/// Foods table: id, name, group, price_per_serving, serving_g, then one
/// `<nutrient>_<unit>` column per nutrient. Optional columns: source_id,
/// calorie_free. Blank nutrient cells read as 0 and are counted in warnings.
Dataset load_foods(std::istream& in, std::string id);
Dataset load_foods(const std::filesystem::path& path);

/// Writes a table that load_foods reads back to an equal Dataset.
void save_foods(const Dataset& dataset, std::ostream& out);

/// Requirements table: nutrient, unit, bound_kind, value, provenance. The
/// energy row (`energy,kcal,equality,<kcal>,EER`) sets the energy target.
/// `unit` is the nutrient's unit, `g_per_1000kcal`, or `pct_energy`.
RequirementSet load_requirements(std::istream& in, std::string default_person);
RequirementSet load_requirements(const std::filesystem::path& path);

/// Servings table: id, servings.
DietPlan load_plan_csv(std::istream& in);

/// Observed intake table: id, g_per_day.
std::map<std::string, double> load_observed_csv(std::istream& in);

struct Session {
    std::string dataset;
    std::string requirements;
    DietPlan plan;
    std::string label;

    friend bool operator==(const Session&, const Session&) = default;
};

/// JSON with sorted keys and `"v": 1`.
std::string save_session(const Session& session);
Session load_session(const std::string& json_text);

/// Session JSON (`.json`) or servings CSV (anything else).
DietPlan load_plan_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace nutrilp::io
