#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "nutrilp/data_io.hpp"
#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"
#include "nutrilp/region.hpp"

/// JSON shapes shared by the CLI (--json) and the HTTP service.
namespace nutrilp::json {

using Json = nlohmann::ordered_json;

Json to_json(const FoodItem& food);
Json to_json(const RequirementSet& reqs);
Json to_json(const DietPlan& plan);
Json to_json(const AdequacyReport& report);
Json to_json(const SolvedDiet& solved);
Json to_json(const WhatIf& whatif);
Json to_json(const ObservedComparison& comparison);

/// {vertices, edges, optimum, costlines, halfplanes, reference_lines, ...}
Json geometry(const region::RegionView& view);

Json foods_listing(const io::Dataset& dataset);

/// Two-space indented document with trailing newline.
std::string body(const Json& doc);

/// Parses `{"id": servings, ...}`; throws InputError on anything else.
DietPlan plan_from_json(const nlohmann::json& j);
std::map<std::string, double> prices_from_json(const nlohmann::json& j);

}  // namespace nutrilp::json
