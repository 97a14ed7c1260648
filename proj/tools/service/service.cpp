#include "service.hpp"

#include <httplib.h>

#include "nutrilp/diet_solver.hpp"

namespace nutrilp::service {

namespace {

using Raw = nlohmann::json;

Response error(int status, const std::string& message) {
    app::Json j;
    j["error"] = message;
    return {status, json::body(j)};
}

Raw parse_body(const std::string& body) {
    try {
        auto j = Raw::parse(body);
        if (!j.is_object()) throw InputError("request body must be a JSON object");
        return j;
    } catch (const Raw::parse_error& e) {
        throw InputError(std::string("request body is not valid JSON: ") + e.what());
    }
}

std::string text_field(const Raw& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    if (!j[key].is_string()) throw InputError(std::string("field '") + key + "' must be a string");
    return j[key].get<std::string>();
}

struct Inputs {
    const io::Dataset* dataset;
    const RequirementSet* reqs;
};

Inputs inputs(const app::Registry& registry, const Raw& j) {
    return {&registry.dataset(text_field(j, "dataset")), &registry.requirement_set(text_field(j, "reqs"))};
}

std::map<std::string, double> overrides(const Raw& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return {};
    return json::prices_from_json(j[key]);
}

Response route(const app::Registry& registry, const std::string& method, const std::string& path,
               const std::string& body) {
    const std::string prefix = "/api/datasets";
    if (path == prefix) {
        if (method != "GET") return error(405, "use GET");
        return {200, json::body(app::datasets_doc(registry))};
    }
    if (path.rfind(prefix + "/", 0) == 0) {
        const auto rest = path.substr(prefix.size() + 1);
        const auto slash = rest.find('/');
        if (slash == std::string::npos || rest.substr(slash) != "/foods") return error(404, "no such endpoint");
        if (method != "GET") return error(405, "use GET");
        return {200, json::body(json::foods_listing(registry.dataset(rest.substr(0, slash))))};
    }

    static const std::set<std::string> posts{"/api/evaluate", "/api/solve", "/api/region", "/api/whatif",
                                             "/api/compare"};
    if (!posts.count(path)) return error(404, "no such endpoint");
    if (method != "POST") return error(405, "use POST");

    const auto j = parse_body(body);
    const auto in = inputs(registry, j);

    if (path == "/api/evaluate") {
        const DietPlan plan = j.contains("plan") ? json::plan_from_json(j["plan"]) : DietPlan{};
        return {200, json::body(app::evaluate_doc(*in.dataset, *in.reqs, plan))};
    }
    if (path == "/api/solve") {
        const auto r = app::solve(*in.dataset, *in.reqs, overrides(j, "price_overrides"));
        return {r.solved.optimal() ? 200 : 422, json::body(r.doc)};
    }
    if (path == "/api/whatif") {
        const auto r = app::whatif(*in.dataset, *in.reqs, overrides(j, "price_overrides"));
        const bool ok = r.whatif.before.optimal() && r.whatif.after.optimal();
        return {ok ? 200 : 422, json::body(r.doc)};
    }
    if (path == "/api/region") {
        if (!j.contains("axes") || !j["axes"].is_array() || j["axes"].size() != 2 || !j["axes"][0].is_string() ||
            !j["axes"][1].is_string())
            throw InputError("field 'axes' must be [x_id, y_id]");
        std::optional<region::FillerSpec> filler;
        if (j.contains("filler") && !j["filler"].is_null()) {
            const auto& f = j["filler"];
            if (f.is_string()) {
                filler = app::parse_filler(f.get<std::string>());
            } else if (f.is_object()) {
                region::FillerSpec spec{text_field(f, "id"), std::nullopt};
                if (f.contains("servings") && !f["servings"].is_null()) {
                    if (!f["servings"].is_number()) throw InputError("filler servings must be a number");
                    spec.servings = f["servings"].get<double>();
                }
                filler = spec;
            } else {
                throw InputError("field 'filler' must be \"id[=servings]\" or {id, servings}");
            }
        }
        const auto r = app::region(*in.dataset, *in.reqs, j["axes"][0].get<std::string>(),
                                   j["axes"][1].get<std::string>(), filler);
        return {200, json::body(r.doc)};
    }
    // /api/compare
    if (!j.contains("observed") || !j["observed"].is_object())
        throw InputError("field 'observed' must be an object of food id -> g/day");
    std::map<std::string, double> observed;
    for (const auto& [id, g] : j["observed"].items()) {
        if (!g.is_number()) throw InputError("grams of '" + id + "' must be a number");
        observed[id] = g.get<double>();
    }
    return {200, json::body(app::compare_doc(*in.dataset, *in.reqs, observed))};
}

}  // namespace

Response handle(const app::Registry& registry, const std::string& method, const std::string& path,
                const std::string& body) {
    try {
        return route(registry, method, path, body);
    } catch (const app::NotFound& e) {
        return error(404, e.what());
    } catch (const Error& e) {
        return error(400, e.what());
    }
}

void mount(httplib::Server& server, const app::Registry& registry, std::string allowed_origin) {
    const auto reply = [&registry](const httplib::Request& req, httplib::Response& res) {
        const auto r = handle(registry, req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Get("/api/.*", reply);
    server.Post("/api/.*", reply);
    server.Options("/api/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.set_post_routing_handler([origin = std::move(allowed_origin)](const httplib::Request&,
                                                                         httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
}

}  // namespace nutrilp::service
