#include "app.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"

#ifndef NUTRILP_SOURCE_DATA_DIR
#define NUTRILP_SOURCE_DATA_DIR "data"
#endif

namespace nutrilp::app {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> csv_files(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

fs::path lookup(const std::string& arg, const fs::path& data_dir, const char* sub) {
    if (fs::is_regular_file(arg)) return arg;
    const auto candidate = data_dir / sub / (arg + ".csv");
    if (arg.find('/') == std::string::npos && fs::is_regular_file(candidate)) return candidate;
    throw InputError("cannot find '" + arg + "' (not a file, and not an id under " + (data_dir / sub).string() + ")");
}

double parse_value(const std::string& text, const std::string& context) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last)
        throw InputError("'" + context + "': '" + text + "' is not a number");
    return v;
}

}  // namespace

Registry Registry::load(const fs::path& data_dir) {
    Registry r;
    for (const auto& p : csv_files(data_dir / "foods")) r.datasets.emplace(p.stem().string(), io::load_foods(p));
    for (const auto& p : csv_files(data_dir / "requirements"))
        r.requirements.emplace(p.stem().string(), io::load_requirements(p));
    return r;
}

const io::Dataset& Registry::dataset(const std::string& id) const {
    const auto it = datasets.find(id);
    if (it == datasets.end()) throw NotFound("unknown dataset '" + id + "'");
    return it->second;
}

const RequirementSet& Registry::requirement_set(const std::string& id) const {
    const auto it = requirements.find(id);
    if (it == requirements.end()) throw NotFound("unknown requirement set '" + id + "'");
    return it->second;
}

fs::path default_data_dir() {
    if (const char* env = std::getenv("NUTRILP_DATA_DIR"); env && *env) return env;
    return NUTRILP_SOURCE_DATA_DIR;
}

io::Dataset resolve_foods(const std::string& arg, const fs::path& data_dir) {
    auto ds = io::load_foods(lookup(arg, data_dir, "foods"));
    return ds;
}

RequirementSet resolve_requirements(const std::string& arg, const fs::path& data_dir) {
    return io::load_requirements(lookup(arg, data_dir, "requirements"));
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected id=value, got '" + text + "'");
    return {text.substr(0, eq), parse_value(text.substr(eq + 1), text)};
}

std::map<std::string, double> parse_assignments(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        auto [id, v] = parse_assignment(item);
        if (!out.emplace(id, v).second) throw InputError("'" + id + "' given more than once");
    }
    return out;
}

region::FillerSpec parse_filler(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) return {text, std::nullopt};
    if (eq == 0) throw InputError("filler needs a food id");
    const auto value = text.substr(eq + 1);
    if (value == "auto") return {text.substr(0, eq), std::nullopt};
    return {text.substr(0, eq), parse_value(value, text)};
}

Json datasets_doc(const Registry& registry) {
    Json j;
    Json datasets = Json::array();
    for (const auto& [id, ds] : registry.datasets) {
        Json d;
        d["id"] = id;
        d["label"] = ds.source.description.empty() ? id : ds.source.description;
        d["food_count"] = ds.foods.size();
        d["currency"] = ds.source.currency;
        datasets.push_back(std::move(d));
    }
    Json reqs = Json::array();
    for (const auto& [id, r] : registry.requirements) {
        Json d;
        d["id"] = id;
        d["label"] = r.person();
        d["energy_kcal"] = r.energy_kcal() ? Json(*r.energy_kcal()) : Json(nullptr);
        d["bound_count"] = r.bound_count();
        reqs.push_back(std::move(d));
    }
    j["datasets"] = std::move(datasets);
    j["requirements"] = std::move(reqs);
    return j;
}

Json evaluate_doc(const io::Dataset& ds, const RequirementSet& reqs, const DietPlan& plan) {
    return json::to_json(evaluate(plan, ds.foods, reqs));
}

SolveResult solve(const io::Dataset& ds, const RequirementSet& reqs, const std::map<std::string, double>& overrides) {
    SolveResult r;
    if (overrides.empty()) {
        r.solved = solve_diet(ds.foods, reqs);
    } else {
        const auto foods = apply_price_overrides(ds.foods, overrides);
        r.solved = solve_diet(foods, reqs);
    }
    r.doc = json::to_json(r.solved);
    return r;
}

WhatIfResult whatif(const io::Dataset& ds, const RequirementSet& reqs, const std::map<std::string, double>& overrides) {
    if (overrides.empty()) throw InputError("what-if needs at least one price override");
    WhatIfResult r;
    r.whatif = whatif_price(ds.foods, reqs, overrides);
    r.doc = json::to_json(r.whatif);
    return r;
}

RegionResult region(const io::Dataset& ds, const RequirementSet& reqs, const std::string& x_id,
                    const std::string& y_id, const std::optional<region::FillerSpec>& filler) {
    RegionResult r;
    r.view = region::diet_region_view(ds.foods, reqs, x_id, y_id, filler);
    r.doc = json::geometry(r.view);
    return r;
}

Json compare_doc(const io::Dataset& ds, const RequirementSet& reqs, const std::map<std::string, double>& observed_g) {
    const auto solved = solve_diet(ds.foods, reqs);
    if (!solved.optimal()) throw InputError("cannot compare: " + solved.diagnostic);
    Json j;
    j["solved"] = json::to_json(solved);
    j["comparison"] = json::to_json(compare_to_observed(solved, observed_g, ds.foods, reqs));
    return j;
}

Json energy_cost_doc(const io::Dataset& ds) {
    Json j = Json::object();
    for (const auto& [id, v] : cost_per_energy(ds.foods)) j[id] = v;
    return j;
}

}  // namespace nutrilp::app
