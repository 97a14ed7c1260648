#include "nutrilp/json_io.hpp"

#include <algorithm>
#include <cmath>

#include "nutrilp/error.hpp"

namespace nutrilp::json {

namespace {

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v == 0.0 ? 0.0 : v;  // no "-0.0"
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

Json point(region::Point p) { return Json::array({number(p.x), number(p.y)}); }

Json constraint(const Constraint& c) {
    Json j;
    j["nutrient"] = id_of(c.nutrient);
    j["kind"] = to_string(c.kind);
    j["value"] = number(c.value);
    j["unit"] = to_string(info(c.nutrient).unit);
    j["provenance"] = to_string(c.provenance);
    j["label"] = c.label();
    return j;
}

Json totals(const NutrientTotals& t) {
    Json j = Json::object();
    for (const auto& [n, v] : t) j[std::string(id_of(n))] = number(v);
    return j;
}

const char* relation_symbol(lp::Relation r) {
    switch (r) {
        case lp::Relation::equal: return "=";
        case lp::Relation::greater_equal: return ">=";
        case lp::Relation::less_equal: return "<=";
    }
    return "=";
}

Json line(const region::Halfplane& h, const region::Window& w) {
    Json j;
    j["label"] = h.label;
    j["a"] = number(h.a);
    j["b"] = number(h.b);
    j["relation"] = relation_symbol(h.relation);
    j["rhs"] = number(h.rhs);
    j["nutrient"] = h.nutrient ? Json(id_of(*h.nutrient)) : Json(nullptr);
    if (const auto s = region::clip_line(h.a, h.b, h.rhs, w))
        j["segment"] = Json::array({point(s->from), point(s->to)});
    else
        j["segment"] = nullptr;
    return j;
}

std::vector<std::size_t> shared(const region::Vertex& u, const region::Vertex& v) {
    std::vector<std::size_t> a = u.generators, b = v.generators, out;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Json to_json(const FoodItem& f) {
    Json j;
    j["id"] = f.id();
    j["name"] = f.name();
    j["group"] = to_string(f.group());
    j["price_per_serving"] = number(f.price_per_serving());
    j["serving_g"] = number(f.serving_mass_g());
    j["source_id"] = f.source_id() ? Json(*f.source_id()) : Json(nullptr);
    j["calorie_free"] = f.calorie_free();
    j["composition"] = totals(f.composition());
    return j;
}

Json to_json(const RequirementSet& reqs) {
    Json j;
    j["person"] = reqs.person();
    j["energy_kcal"] = optional_number(reqs.energy_kcal());
    Json bounds = Json::array();
    for (const auto& [n, b] : reqs.bounds()) {
        for (const auto* bound : {&b.lower, &b.upper, &b.equality}) {
            if (!*bound) continue;
            bounds.push_back(constraint({n, (*bound)->kind, (*bound)->value, (*bound)->provenance}));
        }
    }
    j["bounds"] = std::move(bounds);
    return j;
}

Json to_json(const DietPlan& plan) {
    Json j = Json::object();
    for (const auto& [id, q] : plan.items()) j[id] = number(q);
    return j;
}

Json to_json(const AdequacyReport& r) {
    Json j;
    j["fully_adequate"] = r.fully_adequate;
    j["total_cost"] = number(r.total_cost);
    Json e;
    e["delivered"] = number(r.energy.delivered);
    e["target"] = optional_number(r.energy.target);
    e["percent_of_target"] = optional_number(r.energy.percent_of_target);
    e["balanced"] = r.energy.balanced();
    j["energy"] = std::move(e);
    Json rows = Json::array();
    for (const auto& n : r.nutrients) {
        Json row;
        row["nutrient"] = id_of(n.nutrient);
        row["unit"] = to_string(info(n.nutrient).unit);
        row["delivered"] = number(n.delivered);
        row["lower"] = optional_number(n.lower);
        row["upper"] = optional_number(n.upper);
        row["percent_of_lower"] = optional_number(n.percent_of_lower);
        row["percent_of_upper"] = optional_number(n.percent_of_upper);
        row["band"] = to_string(n.band);
        row["colour"] = colour_of(n.band);
        row["intensity"] = number(n.intensity);
        rows.push_back(std::move(row));
    }
    j["nutrients"] = std::move(rows);
    return j;
}

Json to_json(const SolvedDiet& s) {
    Json j;
    j["status"] = lp::to_string(s.status);
    if (!s.optimal()) {
        Json conflicts = Json::array();
        for (const auto& c : s.conflicts) conflicts.push_back(constraint(c));
        j["conflicts"] = std::move(conflicts);
        j["diagnostic"] = s.diagnostic;
        return j;
    }
    j["cost"] = number(s.cost);
    j["plan"] = to_json(s.plan);
    j["delivered"] = totals(s.delivered);
    Json rows = Json::array();
    for (const auto& c : s.constraints) {
        Json row = constraint(c.constraint);
        row["delivered"] = number(c.delivered);
        row["binding"] = c.binding;
        row["shadow_price"] = number(c.shadow_price);
        rows.push_back(std::move(row));
    }
    j["constraints"] = std::move(rows);
    Json binding = Json::array();
    for (const auto& c : s.binding()) binding.push_back(c.constraint.label());
    j["binding"] = std::move(binding);
    j["iterations"] = s.iterations;
    return j;
}

Json to_json(const WhatIf& w) {
    Json j;
    j["before"] = to_json(w.before);
    j["after"] = to_json(w.after);
    Json d;
    d["cost_change"] = number(w.delta.cost_change);
    d["entering"] = w.delta.entering;
    d["leaving"] = w.delta.leaving;
    Json became = Json::array(), stopped = Json::array();
    for (const auto& c : w.delta.became_binding) became.push_back(c.label());
    for (const auto& c : w.delta.stopped_binding) stopped.push_back(c.label());
    d["became_binding"] = std::move(became);
    d["stopped_binding"] = std::move(stopped);
    j["delta"] = std::move(d);
    return j;
}

Json to_json(const ObservedComparison& c) {
    Json j;
    Json foods = Json::array();
    for (const auto& f : c.foods) {
        Json row;
        row["id"] = f.id;
        row["modeled_g"] = number(f.modeled_g);
        row["observed_g"] = number(f.observed_g);
        row["difference_g"] = number(f.difference_g);
        foods.push_back(std::move(row));
    }
    j["foods"] = std::move(foods);
    j["observed_nutrients"] = totals(c.observed_nutrients);
    j["energy_percent_of_target"] = optional_number(c.energy_percent_of_target);
    Json violations = Json::array();
    for (const auto& v : c.violations) {
        Json row = constraint(v.constraint);
        row["delivered"] = number(v.delivered);
        violations.push_back(std::move(row));
    }
    j["violations"] = std::move(violations);
    return j;
}

Json geometry(const region::RegionView& view) {
    const auto& reg = view.region;
    Json j;
    j["axes"] = {{"x", view.x_id}, {"y", view.y_id}};
    j["prices"] = {{"x", number(view.price_x)}, {"y", number(view.price_y)}};
    j["window"] = {{"x_max", number(view.window.x_max)}, {"y_max", number(view.window.y_max)}};
    j["empty"] = reg.empty;
    j["bounded"] = reg.bounded;

    Json vertices = Json::array();
    for (const auto& v : reg.vertices) vertices.push_back(point(v.point));
    j["vertices"] = std::move(vertices);

    Json edges = Json::array();
    const std::size_t n = reg.vertices.size();
    if (n >= 2) {
        const std::size_t count = reg.bounded && n > 2 ? n : n - 1;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t k = (i + 1) % n;
            const auto common = shared(reg.vertices[i], reg.vertices[k]);
            if (common.empty()) continue;
            Json labels = Json::array();
            for (auto h : common) labels.push_back(reg.halfplanes[h].label);
            edges.push_back({{"from", i}, {"to", k}, {"labels", std::move(labels)}});
        }
    }
    j["edges"] = std::move(edges);

    if (view.optimum) {
        j["optimum"] = point(view.optimum->vertex);
        j["cost"] = number(view.optimum->cost);
        Json cl;
        cl["a"] = number(view.price_x);
        cl["b"] = number(view.price_y);
        cl["rhs"] = number(view.optimum->cost);
        const auto s = region::clip_line(view.price_x, view.price_y, view.optimum->cost, view.window);
        cl["segment"] = s ? Json::array({point(s->from), point(s->to)}) : Json(nullptr);
        j["costlines"] = Json::array({std::move(cl)});
    } else {
        j["optimum"] = nullptr;
        j["cost"] = nullptr;
        j["costlines"] = Json::array();
    }

    Json halfplanes = Json::array();
    for (const auto& h : reg.halfplanes) halfplanes.push_back(line(h, view.window));
    j["halfplanes"] = std::move(halfplanes);
    Json refs = Json::array();
    for (const auto& h : view.reference_lines) refs.push_back(line(h, view.window));
    j["reference_lines"] = std::move(refs);
    j["filler"] = view.filler_id ? Json({{"id", *view.filler_id}, {"servings", number(view.filler_servings)}})
                                 : Json(nullptr);
    j["unsatisfiable"] = view.unsatisfiable;
    return j;
}

Json foods_listing(const io::Dataset& ds) {
    Json j;
    j["id"] = ds.id;
    j["source"] = {{"description", ds.source.description}, {"date", ds.source.date}, {"currency", ds.source.currency}};
    j["schema_version"] = ds.schema_version;
    Json foods = Json::array();
    for (const auto& f : ds.foods) foods.push_back(to_json(f));
    j["foods"] = std::move(foods);
    return j;
}

std::string body(const Json& doc) { return doc.dump(2) + "\n"; }

DietPlan plan_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("plan must be an object of food id -> servings");
    DietPlan plan;
    for (const auto& [id, q] : j.items()) {
        if (!q.is_number()) throw InputError("servings of '" + id + "' must be a number");
        plan.set(id, q.get<double>());
    }
    return plan;
}

std::map<std::string, double> prices_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("price overrides must be an object of food id -> price");
    std::map<std::string, double> out;
    for (const auto& [id, p] : j.items()) {
        if (!p.is_number()) throw InputError("price of '" + id + "' must be a number");
        out[id] = p.get<double>();
    }
    return out;
}

}  // namespace nutrilp::json
