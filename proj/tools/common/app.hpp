#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nutrilp/data_io.hpp"
#include "nutrilp/json_io.hpp"
#include "nutrilp/region.hpp"

/// Operations shared by the command line and the HTTP service, so that both
/// emit the same documents for the same inputs.
namespace nutrilp::app {

using json::Json;

/// Datasets under <dir>/foods/*.csv and requirement sets under
/// <dir>/requirements/*.csv, keyed by file stem.
struct Registry {
    std::map<std::string, io::Dataset> datasets;
    std::map<std::string, RequirementSet> requirements;

    static Registry load(const std::filesystem::path& data_dir);

    const io::Dataset& dataset(const std::string& id) const;
    const RequirementSet& requirement_set(const std::string& id) const;
};

/// Thrown when an id names nothing in the registry (HTTP 404).
class NotFound : public InputError {
public:
    using InputError::InputError;
};

/// $NUTRILP_DATA_DIR, else the data directory of the source tree.
std::filesystem::path default_data_dir();

/// A path to a CSV, or an id looked up under <data_dir>/foods.
io::Dataset resolve_foods(const std::string& arg, const std::filesystem::path& data_dir);
RequirementSet resolve_requirements(const std::string& arg, const std::filesystem::path& data_dir);

/// "id=value" -> (id, value).
std::pair<std::string, double> parse_assignment(const std::string& text);
std::map<std::string, double> parse_assignments(const std::vector<std::string>& items);

/// "id", "id=auto" or "id=<servings>".
region::FillerSpec parse_filler(const std::string& text);

Json datasets_doc(const Registry& registry);
Json evaluate_doc(const io::Dataset& ds, const RequirementSet& reqs, const DietPlan& plan);

struct SolveResult {
    SolvedDiet solved;
    Json doc;
};
SolveResult solve(const io::Dataset& ds, const RequirementSet& reqs,
                  const std::map<std::string, double>& price_overrides = {});

struct WhatIfResult {
    WhatIf whatif;
    Json doc;
};
WhatIfResult whatif(const io::Dataset& ds, const RequirementSet& reqs,
                    const std::map<std::string, double>& price_overrides);

struct RegionResult {
    region::RegionView view;
    Json doc;
};
RegionResult region(const io::Dataset& ds, const RequirementSet& reqs, const std::string& x_id,
                    const std::string& y_id, const std::optional<region::FillerSpec>& filler);

Json compare_doc(const io::Dataset& ds, const RequirementSet& reqs, const std::map<std::string, double>& observed_g);

Json energy_cost_doc(const io::Dataset& ds);

}  // namespace nutrilp::app
