#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "../common/app.hpp"
#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"

namespace nutrilp::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v == 0.0 ? 0.0 : v);
    return buf;
}

std::string general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string opt_fixed(const std::optional<double>& v, int digits = 1) {
    if (!v) return "-";
    if (std::isinf(*v)) return "inf";
    return fixed(*v, digits);
}

std::string glyph(Band b) {
    switch (b) {
        case Band::deficient_severe: return "<<";
        case Band::deficient_mild: return "<";
        case Band::adequate_low: return "ok-";
        case Band::adequate_mid: return "ok";
        case Band::adequate_high: return "ok+";
        case Band::at_bound: return "==";
        case Band::excess_mild: return ">";
        case Band::excess_severe: return ">>";
    }
    return "?";
}

/// Left-aligned first column, right-aligned rest.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void print(std::ostream& out) const {
        std::vector<std::size_t> w;
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (w.size() <= i) w.push_back(0);
                w[i] = std::max(w[i], r[i].size());
            }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) line += "  ";
                const auto pad = std::string(w[i] - r[i].size(), ' ');
                line += i == 0 ? r[i] + pad : pad + r[i];
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << "\n";
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

void print_solved(const SolvedDiet& s, std::span<const FoodItem> foods, std::ostream& out) {
    out << "status: " << lp::to_string(s.status) << "\n";
    if (!s.optimal()) {
        out << s.diagnostic << "\n";
        return;
    }
    Table plan({"food", "servings", "g/day", "cost/day"});
    for (const auto& [id, q] : s.plan.items()) {
        const auto& f = require_food(foods, id);
        plan.add({id, fixed(q), fixed(q * f.serving_mass_g(), 1), fixed(q * f.price_per_serving())});
    }
    plan.print(out);
    out << "total cost/day: " << fixed(s.cost) << "\n\n";
    Table rows({"constraint", "delivered", "binding", "shadow price"});
    for (const auto& c : s.constraints)
        rows.add({c.constraint.label(), fixed(c.delivered), c.binding ? "yes" : "no", general(c.shadow_price)});
    rows.print(out);
}

void print_report(const AdequacyReport& r, std::ostream& out) {
    out << "total cost/day: " << fixed(r.total_cost) << "\n";
    out << "energy: " << fixed(r.energy.delivered, 1) << " kcal";
    if (r.energy.target) out << " of " << fixed(*r.energy.target, 1) << " (" << opt_fixed(r.energy.percent_of_target) << "%)";
    out << "\n";
    Table t({"nutrient", "delivered", "lower", "upper", "% lower", "% upper", "band", ""});
    for (const auto& n : r.nutrients)
        t.add({std::string(id_of(n.nutrient)), fixed(n.delivered), opt_fixed(n.lower, 2), opt_fixed(n.upper, 2),
               opt_fixed(n.percent_of_lower), opt_fixed(n.percent_of_upper), std::string(to_string(n.band)),
               glyph(n.band)});
    t.print(out);
    out << "fully adequate: " << (r.fully_adequate ? "yes" : "no") << "\n";
}

void write_csv(const fs::path& path, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << io::csv_escape(r[i]);
        f << "\n";
    }
}

std::string csv_number(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return "";
    return io::format_double(*v);
}

struct Common {
    std::string foods;
    std::string reqs;
    std::string data_dir;
    bool json = false;
    bool table = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_reqs = true) {
    cmd->add_option("--foods", c.foods, "Foods CSV, or dataset id under the data directory")->required();
    auto* r = cmd->add_option("--reqs", c.reqs, "Requirements CSV, or requirement set id");
    if (needs_reqs) r->required();
    cmd->add_option("--data-dir", c.data_dir, "Data directory (default $NUTRILP_DATA_DIR)");
    auto* j = cmd->add_flag("--json", c.json, "Print JSON");
    auto* t = cmd->add_flag("--table", c.table, "Print a table (default)");
    j->excludes(t);
}

fs::path data_dir_of(const Common& c) { return c.data_dir.empty() ? app::default_data_dir() : fs::path(c.data_dir); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Least-cost nutrient-adequate diets"};
    cli.name("nutrilp");
    cli.require_subcommand(1);

    Common solve_opts, eval_opts, whatif_opts, region_opts, report_opts, compare_opts, energy_opts;
    std::vector<std::string> prices, whatif_prices, sets, plans;
    std::string plan_file, axes, filler, svg_out, report_dir, observed_file, list_dir;

    auto* solve = cli.add_subcommand("solve", "Solve the least-cost diet");
    add_common(solve, solve_opts);
    solve->add_option("--price", prices, "Price override id=value (repeatable)");

    auto* evaluate = cli.add_subcommand("evaluate", "Score a diet plan");
    add_common(evaluate, eval_opts);
    auto* plan_opt = evaluate->add_option("--plan", plan_file, "Plan CSV (id,servings) or session JSON");
    auto* set_opt = evaluate->add_option("--set", sets, "Servings id=qty (repeatable)");
    plan_opt->excludes(set_opt);

    auto* whatif = cli.add_subcommand("whatif", "Re-solve with changed prices");
    add_common(whatif, whatif_opts);
    whatif->add_option("--price", whatif_prices, "Price override id=value (repeatable)")->required();

    auto* region = cli.add_subcommand("region", "Two-food feasible region");
    add_common(region, region_opts);
    region->add_option("--axes", axes, "x_id,y_id")->required();
    region->add_option("--filler", filler, "Third food fixed at id=servings (id or id=auto: least-cost level)");
    region->add_option("--out", svg_out, "Write an SVG drawing");

    auto* report = cli.add_subcommand("report", "Write report tables as CSV");
    add_common(report, report_opts);
    report->add_option("--plans", plans, "Guess plans (CSV or session JSON)")->required();
    report->add_option("--out", report_dir, "Output directory")->required();

    auto* compare = cli.add_subcommand("compare", "Compare the least-cost diet with observed intake");
    add_common(compare, compare_opts);
    compare->add_option("--observed", observed_file, "Observed intake CSV (id,g_per_day)")->required();

    auto* energy = cli.add_subcommand("energy-cost", "Price per 100 kcal of each food");
    add_common(energy, energy_opts, false);

    auto* datasets = cli.add_subcommand("datasets", "List bundled datasets and requirement sets");
    datasets->add_option("--data-dir", list_dir, "Data directory (default $NUTRILP_DATA_DIR)");
    bool list_json = false;
    datasets->add_flag("--json", list_json, "Print JSON");

    std::vector<const char*> argv{"nutrilp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        cli.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*datasets) {
            const auto reg = app::Registry::load(list_dir.empty() ? app::default_data_dir() : fs::path(list_dir));
            if (list_json) {
                out << json::body(app::datasets_doc(reg));
                return kOk;
            }
            Table foods({"dataset", "foods", "currency", "source"});
            for (const auto& [id, ds] : reg.datasets)
                foods.add({id, std::to_string(ds.foods.size()), ds.source.currency, ds.source.description});
            foods.print(out);
            out << "\n";
            Table reqs({"requirements", "person", "energy kcal"});
            for (const auto& [id, r] : reg.requirements)
                reqs.add({id, r.person(), r.energy_kcal() ? fixed(*r.energy_kcal(), 0) : "-"});
            reqs.print(out);
            return kOk;
        }
        if (*solve) {
            const auto dir = data_dir_of(solve_opts);
            const auto ds = app::resolve_foods(solve_opts.foods, dir);
            const auto reqs = app::resolve_requirements(solve_opts.reqs, dir);
            const auto overrides = app::parse_assignments(prices);
            const auto r = app::solve(ds, reqs, overrides);
            if (solve_opts.json) out << json::body(r.doc);
            else print_solved(r.solved, apply_price_overrides(ds.foods, overrides), out);
            if (!r.solved.optimal()) {
                err << "nutrilp: " << r.solved.diagnostic << "\n";
                return kInfeasible;
            }
            return kOk;
        }
        if (*evaluate) {
            const auto dir = data_dir_of(eval_opts);
            const auto ds = app::resolve_foods(eval_opts.foods, dir);
            const auto reqs = app::resolve_requirements(eval_opts.reqs, dir);
            const DietPlan plan =
                plan_file.empty() ? DietPlan(app::parse_assignments(sets)) : io::load_plan_file(plan_file);
            const auto report = nutrilp::evaluate(plan, ds.foods, reqs);
            if (eval_opts.json) out << json::body(json::to_json(report));
            else print_report(report, out);
            return kOk;
        }
        if (*whatif) {
            const auto dir = data_dir_of(whatif_opts);
            const auto ds = app::resolve_foods(whatif_opts.foods, dir);
            const auto reqs = app::resolve_requirements(whatif_opts.reqs, dir);
            const auto overrides = app::parse_assignments(whatif_prices);
            const auto r = app::whatif(ds, reqs, overrides);
            const auto& w = r.whatif;
            if (whatif_opts.json) {
                out << json::body(r.doc);
            } else {
                out << "before\n";
                print_solved(w.before, ds.foods, out);
                out << "\nafter\n";
                print_solved(w.after, apply_price_overrides(ds.foods, overrides), out);
                out << "\ncost change/day: " << fixed(w.delta.cost_change) << "\n";
                const auto list = [&out](const char* title, const std::vector<std::string>& items) {
                    out << title << ":";
                    for (const auto& i : items) out << " " << i;
                    out << (items.empty() ? " none\n" : "\n");
                };
                list("entering", w.delta.entering);
                list("leaving", w.delta.leaving);
                std::vector<std::string> became, stopped;
                for (const auto& c : w.delta.became_binding) became.push_back("[" + c.label() + "]");
                for (const auto& c : w.delta.stopped_binding) stopped.push_back("[" + c.label() + "]");
                list("became binding", became);
                list("stopped binding", stopped);
            }
            if (!w.before.optimal() || !w.after.optimal()) {
                err << "nutrilp: " << (w.before.optimal() ? w.after.diagnostic : w.before.diagnostic) << "\n";
                return kInfeasible;
            }
            return kOk;
        }
        if (*region) {
            const auto dir = data_dir_of(region_opts);
            const auto ds = app::resolve_foods(region_opts.foods, dir);
            const auto reqs = app::resolve_requirements(region_opts.reqs, dir);
            const auto comma = axes.find(',');
            if (comma == std::string::npos) throw InputError("--axes expects x_id,y_id");
            std::optional<region::FillerSpec> spec;
            if (!filler.empty()) spec = app::parse_filler(filler);
            const auto r = app::region(ds, reqs, axes.substr(0, comma), axes.substr(comma + 1), spec);
            if (!svg_out.empty()) {
                std::ofstream f(svg_out, std::ios::binary);
                if (!f) throw InputError("cannot write '" + svg_out + "'");
                f << region::render_svg(r.view);
            }
            if (region_opts.json) {
                out << json::body(r.doc);
            } else {
                const auto& v = r.view;
                out << "x: " << v.x_id << "  y: " << v.y_id;
                if (v.filler_id) out << "  filler: " << *v.filler_id << " = " << fixed(v.filler_servings);
                out << "\n";
                if (v.region.empty) out << "region: empty\n";
                else out << "region: " << v.region.vertices.size() << " vertices, "
                         << (v.region.bounded ? "bounded" : "unbounded") << "\n";
                Table t({"vertex", "x", "y"});
                for (std::size_t i = 0; i < v.region.vertices.size(); ++i)
                    t.add({std::to_string(i), fixed(v.region.vertices[i].point.x), fixed(v.region.vertices[i].point.y)});
                t.print(out);
                if (v.optimum)
                    out << "least-cost vertex: (" << fixed(v.optimum->vertex.x) << ", " << fixed(v.optimum->vertex.y)
                        << ") cost/day " << fixed(v.optimum->cost) << "\n";
                for (const auto& u : v.unsatisfiable) out << "unsatisfiable: " << u << "\n";
            }
            return kOk;
        }
        if (*report) {
            const auto dir = data_dir_of(report_opts);
            const auto ds = app::resolve_foods(report_opts.foods, dir);
            const auto reqs = app::resolve_requirements(report_opts.reqs, dir);
            std::vector<std::pair<std::string, DietPlan>> guesses;
            for (const auto& p : plans) guesses.emplace_back(fs::path(p).stem().string(), io::load_plan_file(p));
            const auto solved = solve_diet(ds.foods, reqs);

            fs::create_directories(report_dir);
            std::vector<std::vector<std::string>> quantities;
            std::vector<std::string> header{"id", "name"};
            for (const auto& [label, _] : guesses) header.push_back(label);
            header.push_back("solved");
            quantities.push_back(header);
            for (const auto& f : ds.foods) {
                std::vector<std::string> row{f.id(), f.name()};
                for (const auto& [_, plan] : guesses) row.push_back(io::format_double(plan.servings(f.id())));
                row.push_back(io::format_double(solved.optimal() ? solved.plan.servings(f.id()) : 0.0));
                quantities.push_back(std::move(row));
            }
            std::vector<std::string> cost_row{"cost_per_day", ""};
            for (const auto& [_, plan] : guesses) cost_row.push_back(io::format_double(plan_cost(plan, ds.foods)));
            cost_row.push_back(solved.optimal() ? io::format_double(solved.cost) : "");
            quantities.push_back(std::move(cost_row));
            write_csv(fs::path(report_dir) / "quantities.csv", quantities);

            std::vector<std::vector<std::string>> adequacy{
                {"plan", "nutrient", "unit", "delivered", "lower", "upper", "percent_of_lower", "percent_of_upper",
                 "band"}};
            auto all = guesses;
            if (solved.optimal()) all.emplace_back("solved", solved.plan);
            for (const auto& [label, plan] : all) {
                const auto r = nutrilp::evaluate(plan, ds.foods, reqs);
                if (r.energy.target)
                    adequacy.push_back({label, "energy", "kcal", io::format_double(r.energy.delivered),
                                        csv_number(r.energy.target), csv_number(r.energy.target),
                                        csv_number(r.energy.percent_of_target), csv_number(r.energy.percent_of_target),
                                        r.energy.balanced() ? "at-bound" : "unbalanced"});
                for (const auto& n : r.nutrients)
                    adequacy.push_back({label, std::string(id_of(n.nutrient)),
                                        std::string(to_string(info(n.nutrient).unit)), io::format_double(n.delivered),
                                        csv_number(n.lower), csv_number(n.upper), csv_number(n.percent_of_lower),
                                        csv_number(n.percent_of_upper), std::string(to_string(n.band))});
            }
            write_csv(fs::path(report_dir) / "adequacy.csv", adequacy);

            std::vector<std::vector<std::string>> composition{
                {"id", "name", "group", "servings", "g_per_day", "cost_per_day"}};
            if (solved.optimal()) {
                for (const auto& [id, q] : solved.plan.items()) {
                    const auto& f = require_food(ds.foods, id);
                    composition.push_back({id, f.name(), std::string(to_string(f.group())), io::format_double(q),
                                           io::format_double(q * f.serving_mass_g()),
                                           io::format_double(q * f.price_per_serving())});
                }
            }
            write_csv(fs::path(report_dir) / "solved.csv", composition);
            out << "wrote quantities.csv, adequacy.csv, solved.csv to " << report_dir << "\n";
            if (!solved.optimal()) {
                err << "nutrilp: " << solved.diagnostic << "\n";
                return kInfeasible;
            }
            return kOk;
        }
        if (*compare) {
            const auto dir = data_dir_of(compare_opts);
            const auto ds = app::resolve_foods(compare_opts.foods, dir);
            const auto reqs = app::resolve_requirements(compare_opts.reqs, dir);
            std::ifstream in(observed_file, std::ios::binary);
            if (!in) throw InputError("cannot open '" + observed_file + "'");
            const auto observed = io::load_observed_csv(in);
            const auto solved = solve_diet(ds.foods, reqs);
            if (!solved.optimal()) {
                err << "nutrilp: " << solved.diagnostic << "\n";
                return kInfeasible;
            }
            if (compare_opts.json) {
                out << json::body(app::compare_doc(ds, reqs, observed));
                return kOk;
            }
            const auto c = compare_to_observed(solved, observed, ds.foods, reqs);
            Table t({"food", "modeled g/day", "observed g/day", "difference"});
            for (const auto& f : c.foods) t.add({f.id, fixed(f.modeled_g, 1), fixed(f.observed_g, 1), fixed(f.difference_g, 1)});
            t.print(out);
            if (c.energy_percent_of_target)
                out << "observed energy: " << fixed(*c.energy_percent_of_target, 1) << "% of target\n";
            if (c.violations.empty()) out << "observed diet meets every bound\n";
            for (const auto& v : c.violations)
                out << "violates " << v.constraint.label() << " (delivers " << fixed(v.delivered) << ")\n";
            return kOk;
        }
        if (*energy) {
            const auto ds = app::resolve_foods(energy_opts.foods, data_dir_of(energy_opts));
            if (energy_opts.json) {
                out << json::body(app::energy_cost_doc(ds));
                return kOk;
            }
            Table t({"food", "cost per 100 kcal"});
            for (const auto& [id, v] : cost_per_energy(ds.foods)) t.add({id, fixed(v, 3)});
            t.print(out);
            return kOk;
        }
    } catch (const Error& e) {
        err << "nutrilp: " << e.what() << "\n";
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        err << "nutrilp: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}

}  // namespace nutrilp::cli
