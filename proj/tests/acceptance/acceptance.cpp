// Prints one line per acceptance criterion: PASS, FAIL or SKIP, then a
// summary. Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "certificates.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "nutrilp/data_io.hpp"
#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"
#include "nutrilp/region.hpp"
#include "oracle.hpp"
#include "parity.hpp"

using namespace nutrilp;
namespace t = nutrilp::testing;
using Clock = std::chrono::steady_clock;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict = Verdict::pass;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            verdict = Verdict::fail;
            notes.push_back(what);
        }
    }
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

bool near(double v, double target, double tol) { return std::abs(v - target) <= tol; }
bool within_pct(double v, double target, double pct) { return std::abs(v - target) <= std::abs(target) * pct / 100; }

void near_check(Outcome& o, const std::string& name, double v, double target, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.6g, want %.6g +/- %g", name.c_str(), v, target, tol);
    o.check(near(v, target, tol), buf);
}

void pct_check(Outcome& o, const std::string& name, double v, double target, double pct = 0.5) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.6g, want %.6g +/- %g%%", name.c_str(), v, target, pct);
    o.check(within_pct(v, target, pct), buf);
}

/// Median wall time of `f` in milliseconds.
double median_ms(const std::function<void()>& f, int reps = 201) {
    std::vector<double> ms;
    ms.reserve(reps);
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        f();
        ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - start).count());
    }
    std::nth_element(ms.begin(), ms.begin() + reps / 2, ms.end());
    return ms[reps / 2];
}

double servings(const SolvedDiet& s, const std::string& id) { return s.plan.servings(id); }

// Two-food least-cost diet: 6.30 +/- 0.01 beans, 0.94 +/- 0.01 squash, $2.75 +/- 0.005, < 1 ms.
Outcome two_food() {
    Outcome o;
    const auto foods = t::beans_and_squash();
    const auto reqs = t::female_30(false);
    const auto s = solve_diet(foods, reqs);
    o.check(s.optimal(), "status " + std::string(lp::to_string(s.status)));
    near_check(o, "beans", servings(s, "beans"), 6.30, 0.01);
    near_check(o, "squash", servings(s, "squash"), 0.94, 0.01);
    near_check(o, "cost", s.cost, 2.75, 0.005);
    const double ms = median_ms([&] { solve_diet(foods, reqs); });
    o.check(ms < 1.0, fmt("median solve %.4f ms, want < 1 ms", ms));
    o.notes.push_back(fmt("median solve %.4f ms", ms));
    return o;
}

// Three-food diet: corn 4.82, beans 1.14, squash 0.94 (+/- 0.01), $2.48 +/- 0.01,
// binding = {energy, iron LB, vitamin A LB}, < 1 ms.
Outcome three_food() {
    Outcome o;
    const auto foods = t::three_sisters();
    const auto reqs = t::female_30();
    const auto s = solve_diet(foods, reqs);
    o.check(s.optimal(), "status " + std::string(lp::to_string(s.status)));
    near_check(o, "corn", servings(s, "corn"), 4.82, 0.01);
    near_check(o, "beans", servings(s, "beans"), 1.14, 0.01);
    near_check(o, "squash", servings(s, "squash"), 0.94, 0.01);
    near_check(o, "cost", s.cost, 2.48, 0.01);
    std::vector<std::string> binding;
    for (const auto& r : s.binding()) binding.push_back(r.constraint.label());
    std::sort(binding.begin(), binding.end());
    const std::vector<std::string> want{"energy = 2330 kcal", "iron >= 18 mg", "vitamin_a >= 700 mcg_rae"};
    std::string got;
    for (const auto& b : binding) got += (got.empty() ? "" : ", ") + b;
    o.check(binding == want, "binding set {" + got + "}");
    const double ms = median_ms([&] { solve_diet(foods, reqs); });
    o.check(ms < 1.0, fmt("median solve %.4f ms, want < 1 ms", ms));
    o.notes.push_back(fmt("median solve %.4f ms", ms));
    return o;
}

// Gram equivalence: 589/163/132 g/day +/- 1 g.
Outcome grams() {
    Outcome o;
    const auto foods = t::three_sisters();
    const auto s = solve_diet(foods, t::female_30());
    const auto g = plan_to_grams(s.plan, foods);
    near_check(o, "corn g", g.count("corn") ? g.at("corn") : 0.0, 589, 1.0);
    near_check(o, "beans g", g.count("beans") ? g.at("beans") : 0.0, 163, 1.0);
    near_check(o, "squash g", g.count("squash") ? g.at("squash") : 0.0, 132, 1.0);
    return o;
}

// Derived scalars, each within 0.5%.
Outcome derived_scalars() {
    Outcome o;
    const auto beans = t::beans(), squash = t::squash(), corn = t::corn();
    const auto reqs = t::female_30();
    const auto hs = region::diet_halfplanes(beans, squash, reqs);
    const region::Halfplane* energy = nullptr;
    for (const auto& h : hs)
        if (h.nutrient == Nutrient::energy) energy = &h;
    o.check(energy != nullptr, "no energy row in the beans/squash plane");
    if (energy) {
        pct_check(o, "energy-line slope", std::abs(*energy->slope()), 2.06);
        pct_check(o, "energy-line x-intercept", *energy->x_intercept(), 17.92);
    }

    const auto& va = *reqs.find(Nutrient::vitamin_a);
    const double sq_lo = va.lower->value / squash.amount(Nutrient::vitamin_a);
    const double sq_hi = va.upper->value / squash.amount(Nutrient::vitamin_a);

    // corn alone covers the iron lower bound; squash covers vitamin A
    const double corn_servings = reqs.find(Nutrient::iron)->lower->value / corn.amount(Nutrient::iron);
    pct_check(o, "corn-only iron servings", corn_servings, 6.21);
    const std::vector<FoodItem> corn_squash{corn, squash};
    const auto corn_diet = plan_nutrients(DietPlan{{"corn", corn_servings}, {"squash", sq_lo}}, corn_squash);
    pct_check(o, "corn-only diet kcal", corn_diet.at(Nutrient::energy), 2790);

    pct_check(o, "squash min servings", sq_lo, 0.94);
    pct_check(o, "squash max servings", sq_hi, 4.03);
    pct_check(o, "squash min kcal", sq_lo * squash.amount(Nutrient::energy), 59);
    pct_check(o, "squash max kcal", sq_hi * squash.amount(Nutrient::energy), 254);

    const auto per100 = cost_per_energy(t::three_sisters());
    // the reported figures are rounded to cents
    pct_check(o, "squash $/100 kcal", per100.at("squash"), 0.81);
    pct_check(o, "beans $/100 kcal", std::round(per100.at("beans") * 100) / 100, 0.28);
    pct_check(o, "corn $/100 kcal", std::round(per100.at("corn") * 100) / 100, 0.08);
    o.notes.push_back(fmt("unrounded beans %.4f corn %.4f", per100.at("beans"), per100.at("corn")));

    const auto shifted = region::project_filler(hs, corn, 1.0);
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hs[i].nutrient == Nutrient::energy)
            pct_check(o, "energy shift per corn serving", *hs[i].x_intercept() - *shifted[i].x_intercept(), 3.38);
        if (hs[i].nutrient == Nutrient::iron && hs[i].relation == lp::Relation::greater_equal)
            pct_check(o, "iron shift per corn serving", *hs[i].x_intercept() - *shifted[i].x_intercept(), 1.07);
    }

    const auto partial = solve_diet(t::beans_and_squash(), t::female_30(false));
    const double partial_kcal = partial.delivered.at(Nutrient::energy);
    pct_check(o, "partial-diet kcal", partial_kcal, 878.22);
    pct_check(o, "residual kcal", *reqs.energy_kcal() - partial_kcal, 1451.78);
    return o;
}

struct Corpus {
    std::vector<lp::Problem> problems;
};

/// Every LP the acceptance run solves: random LPs, 2-variable LPs, the
/// fixture diets and randomized feasible diets.
Corpus corpus() {
    Corpus c;
    t::Rng rng(20261014);
    for (int i = 0; i < 1200; ++i) c.problems.push_back(t::random_lp(rng));
    for (int i = 0; i < 500; ++i) c.problems.push_back(t::random_lp_2d(rng));
    c.problems.push_back(build_lp(t::beans_and_squash(), t::female_30(false)).problem);
    c.problems.push_back(build_lp(t::three_sisters(), t::female_30()).problem);
    c.problems.push_back(build_lp(t::three_sisters(), t::female_30(false)).problem);
    for (int i = 0; i < 100; ++i) {
        const auto inst = t::random_feasible_diet(rng);
        c.problems.push_back(build_lp(inst.foods, inst.reqs).problem);
    }
    return c;
}

// Oracle equivalence on >= 1000 random LPs within 1e-9 relative, statuses equal, < 30 s.
Outcome oracle_equivalence() {
    Outcome o;
    t::Rng rng(7);
    const int n = 1000;
    int counts[3] = {0, 0, 0};
    const auto start = Clock::now();
    for (int i = 0; i < n; ++i) {
        const auto p = t::random_lp(rng);
        const auto s = lp::solve(p);
        const auto b = t::brute_force(p);
        ++counts[static_cast<int>(s.status)];
        if (s.status != b.status) {
            o.check(false, "problem " + std::to_string(i) + ": simplex " + lp::to_string(s.status) + ", oracle " +
                               lp::to_string(b.status));
            continue;
        }
        if (s.status == lp::Status::optimal) {
            const double rel = std::abs(s.objective - b.objective) / std::max(1.0, std::abs(b.objective));
            if (rel > 1e-9)
                o.check(false, "problem " + std::to_string(i) + fmt(": objective %.12g vs %.12g", s.objective,
                                                                      b.objective));
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.check(secs < 30.0, fmt("took %.2f s, want < 30 s", secs));
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d LPs: %d optimal, %d infeasible, %d unbounded in %.2f s", n,
                  counts[static_cast<int>(lp::Status::optimal)], counts[static_cast<int>(lp::Status::infeasible)],
                  counts[static_cast<int>(lp::Status::unbounded)], secs);
    o.notes.push_back(buf);
    if (o.notes.size() > 6) o.notes.resize(6);
    return o;
}

// Duality gap <= 1e-8 (1 + |obj|) and slackness residuals <= 1e-8 on every optimal corpus solve.
Outcome duality(const Corpus& c) {
    Outcome o;
    int optimal = 0;
    double worst_gap = 0, worst_cs = 0;
    for (std::size_t i = 0; i < c.problems.size(); ++i) {
        const auto s = lp::solve(c.problems[i]);
        if (s.status != lp::Status::optimal) continue;
        ++optimal;
        const auto cert = t::certify(c.problems[i], s);
        const double gap = cert.duality_gap / (1 + std::abs(s.objective));
        const double cs = std::max(cert.row_slackness, cert.column_slackness);
        worst_gap = std::max(worst_gap, gap);
        worst_cs = std::max(worst_cs, cs);
        if (gap > 1e-8) o.check(false, "problem " + std::to_string(i) + fmt(": scaled gap %.3g", gap));
        if (cs > 1e-8) o.check(false, "problem " + std::to_string(i) + fmt(": slackness %.3g", cs));
    }
    o.notes.push_back(std::to_string(optimal) + " optimal solves" +
                      fmt(", worst scaled gap %.3g, worst slackness %.3g", worst_gap, worst_cs));
    return o;
}

// Positive-food count <= binding-constraint count on every optimal solve.
Outcome support_bound(const Corpus& c) {
    Outcome o;
    int optimal = 0;
    for (std::size_t i = 0; i < c.problems.size(); ++i) {
        const auto s = lp::solve(c.problems[i]);
        if (s.status != lp::Status::optimal) continue;
        ++optimal;
        const auto cert = t::certify(c.problems[i], s, kSupportThreshold);
        if (cert.positive_variables > cert.binding_rows)
            o.check(false, "problem " + std::to_string(i) + ": " + std::to_string(cert.positive_variables) +
                               " positive, " + std::to_string(cert.binding_rows) + " binding");
    }
    const std::vector<std::pair<std::vector<FoodItem>, RequirementSet>> diets{
        {t::beans_and_squash(), t::female_30(false)}, {t::three_sisters(), t::female_30()},
        {t::three_sisters(), t::female_30(false)}};
    for (const auto& [foods, reqs] : diets) {
        const auto s = solve_diet(foods, reqs);
        o.check(s.plan.items().size() <= s.binding().size(),
                std::to_string(s.plan.items().size()) + " foods but " + std::to_string(s.binding().size()) +
                    " binding constraints");
    }
    o.notes.push_back(std::to_string(optimal) + " optimal LP solves checked");
    return o;
}

// evaluate(solve_diet(...)) is fully adequate on 100 randomized feasible instances.
Outcome solver_evaluator() {
    Outcome o;
    t::Rng rng(99);
    int adequate = 0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = t::random_feasible_diet(rng);
        const auto s = solve_diet(inst.foods, inst.reqs);
        if (!s.optimal()) {
            o.check(false, "instance " + std::to_string(i) + ": " + lp::to_string(s.status));
            continue;
        }
        const auto rep = evaluate(s.plan, inst.foods, inst.reqs);
        if (rep.fully_adequate)
            ++adequate;
        else
            o.check(false, "instance " + std::to_string(i) + " not fully adequate");
    }
    o.notes.push_back(std::to_string(adequate) + "/100 fully adequate");
    return o;
}

// min_cost_vertex equals lp-core on every 2-variable corpus problem within 1e-9;
// Panel A is a 4-vertex polygon with optimum (6.30, 0.94); Panel B lower-left vertex (1.14, 0.94).
Outcome geometry(const Corpus& c) {
    Outcome o;
    int compared = 0;
    for (std::size_t i = 0; i < c.problems.size(); ++i) {
        const auto& p = c.problems[i];
        if (p.objective.size() != 2) continue;
        std::vector<region::Halfplane> hs;
        bool degenerate_row = false;
        for (const auto& row : p.rows) {
            if (row.coefficients[0] == 0 && row.coefficients[1] == 0) {
                degenerate_row = true;
                break;
            }
            hs.push_back(region::make_halfplane(row.coefficients[0], row.coefficients[1], row.relation, row.rhs, "r"));
        }
        if (degenerate_row) continue;
        hs.push_back(region::make_halfplane(1, 0, lp::Relation::greater_equal, 0, "x >= 0"));
        hs.push_back(region::make_halfplane(0, 1, lp::Relation::greater_equal, 0, "y >= 0"));
        const auto reg = region::build_region(hs);
        const auto s = lp::solve(p);
        ++compared;
        if (s.status == lp::Status::infeasible) {
            if (!reg.empty) o.check(false, "problem " + std::to_string(i) + ": LP infeasible, region not empty");
            continue;
        }
        if (reg.empty) {
            o.check(false, "problem " + std::to_string(i) + ": region empty, LP feasible");
            continue;
        }
        if (s.status == lp::Status::unbounded) {
            bool threw = false;
            try {
                region::min_cost_vertex(reg, p.objective[0], p.objective[1]);
            } catch (const InputError&) {
                threw = true;
            }
            if (!threw) o.check(false, "problem " + std::to_string(i) + ": LP unbounded, vertex found");
            continue;
        }
        const auto v = region::min_cost_vertex(reg, p.objective[0], p.objective[1]);
        const double rel = std::abs(v.cost - s.objective) / std::max(1.0, std::abs(s.objective));
        if (rel > 1e-9) o.check(false, "problem " + std::to_string(i) + fmt(": %.12g vs %.12g", v.cost, s.objective));
    }
    o.notes.push_back(std::to_string(compared) + " two-variable problems compared");

    const auto a = region::diet_region_view(t::beans_and_squash(), t::female_30(false), "beans", "squash");
    o.check(a.region.bounded && a.region.vertices.size() == 4,
            "Panel A has " + std::to_string(a.region.vertices.size()) + " vertices");
    o.check(a.optimum.has_value(), "Panel A has no optimum");
    if (a.optimum) {
        near_check(o, "Panel A optimum x", a.optimum->vertex.x, 6.30, 0.01);
        near_check(o, "Panel A optimum y", a.optimum->vertex.y, 0.94, 0.01);
    }

    const auto b = region::diet_region_view(t::three_sisters(), t::female_30(), "beans", "squash",
                                            region::FillerSpec{"corn", std::nullopt});
    o.check(b.region.vertices.size() == 4, "Panel B has " + std::to_string(b.region.vertices.size()) + " vertices");
    if (!b.region.vertices.empty()) {
        auto ll = b.region.vertices.front().point;
        for (const auto& v : b.region.vertices)
            if (v.point.x + v.point.y < ll.x + ll.y) ll = v.point;
        near_check(o, "Panel B lower-left x", ll.x, 1.14, 0.01);
        near_check(o, "Panel B lower-left y", ll.y, 0.94, 0.01);
    }
    return o;
}

const char* env(const char* name) {
    const char* v = std::getenv(name);
    return v && *v ? v : nullptr;
}

// With a workbook-exported 60-food CSV: female $2.88 and male $3.17 (+/- 0.005),
// 11 and 8 foods, doubled fat-free milk gives $2.89 / $3.21 with whole milk in place.
Outcome workbook(std::string& skip_reason) {
    Outcome o;
    const char* foods_path = env("NUTRILP_WORKBOOK_FOODS");
    const char* female_path = env("NUTRILP_WORKBOOK_FEMALE_REQS");
    const char* male_path = env("NUTRILP_WORKBOOK_MALE_REQS");
    if (!foods_path || !female_path || !male_path) {
        skip_reason =
            "60-food workbook CSV not supplied; set NUTRILP_WORKBOOK_FOODS, NUTRILP_WORKBOOK_FEMALE_REQS and "
            "NUTRILP_WORKBOOK_MALE_REQS to run";
        o.verdict = Verdict::skip;
        return o;
    }
    const std::string skim = env("NUTRILP_WORKBOOK_SKIM_ID") ? env("NUTRILP_WORKBOOK_SKIM_ID") : "fat_free_milk";
    const std::string whole = env("NUTRILP_WORKBOOK_WHOLE_ID") ? env("NUTRILP_WORKBOOK_WHOLE_ID") : "whole_milk";
    try {
        const auto ds = io::load_foods(std::filesystem::path(foods_path));
        const auto female = io::load_requirements(std::filesystem::path(female_path));
        const auto male = io::load_requirements(std::filesystem::path(male_path));
        o.check(ds.foods.size() == 60, std::to_string(ds.foods.size()) + " foods in the dataset");
        const double skim_price = require_food(ds.foods, skim).price_per_serving();
        require_food(ds.foods, whole);

        const struct {
            const char* who;
            const RequirementSet* reqs;
            double cost, cost_after;
            std::size_t count;
        } people[] = {{"female", &female, 2.88, 2.89, 11}, {"male", &male, 3.17, 3.21, 8}};
        for (const auto& p : people) {
            const std::string who = p.who;
            const auto s = solve_diet(ds.foods, *p.reqs);
            if (!s.optimal()) {
                o.check(false, who + ": " + s.diagnostic);
                continue;
            }
            near_check(o, who + " cost", s.cost, p.cost, 0.005);
            o.check(s.plan.items().size() == p.count,
                    who + ": " + std::to_string(s.plan.items().size()) + " foods, want " + std::to_string(p.count));
            const auto w = whatif_price(ds.foods, *p.reqs, {{skim, 2 * skim_price}});
            if (!w.after.optimal()) {
                o.check(false, who + " after doubling: " + w.after.diagnostic);
                continue;
            }
            near_check(o, who + " cost after doubling", w.after.cost, p.cost_after, 0.005);
            o.check(w.before.plan.servings(skim) > kSupportThreshold, who + ": " + skim + " not in the base diet");
            o.check(w.after.plan.servings(skim) <= kSupportThreshold, who + ": " + skim + " still in the diet");
            o.check(w.after.plan.servings(whole) > kSupportThreshold, who + ": " + whole + " did not enter");
        }
    } catch (const std::exception& e) {
        o.check(false, e.what());
    }
    return o;
}

// CLI --json and API bodies byte-identical for 20 fixture requests.
Outcome parity() {
    Outcome o;
    const auto outcomes = t::run_parity(t::data_dir());
    o.check(outcomes.size() == 20, std::to_string(outcomes.size()) + " requests, want 20");
    int same = 0;
    for (const auto& r : outcomes) {
        if (r.identical() && !r.cli_stdout.empty())
            ++same;
        else
            o.check(false, r.name + ": bodies differ");
        o.check((r.cli_exit == 0) == (r.http_status == 200),
                r.name + ": exit " + std::to_string(r.cli_exit) + " vs HTTP " + std::to_string(r.http_status));
    }
    o.notes.push_back(std::to_string(same) + "/" + std::to_string(outcomes.size()) + " identical");
    return o;
}

}  // namespace

int main() {
    int failed = 0, passed = 0, skipped = 0;
    const auto report = [&](const char* name, const Outcome& o, const std::string& skip_reason = "") {
        const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
        std::string detail = skip_reason;
        for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
        std::printf("%s  %s%s%s\n", tag, name, detail.empty() ? "" : ": ", detail.c_str());
        (o.verdict == Verdict::pass ? passed : o.verdict == Verdict::fail ? failed : skipped)++;
    };

    const auto c = corpus();
    report("two-food least-cost diet", two_food());
    report("three-food diet with energy equality", three_food());
    report("gram equivalence", grams());
    report("derived scalars", derived_scalars());
    report("oracle equivalence", oracle_equivalence());
    report("duality suite", duality(c));
    report("support bound", support_bound(c));
    report("solver-evaluator consistency", solver_evaluator());
    report("geometry cross-check", geometry(c));
    std::string skip;
    const auto wb = workbook(skip);
    report("workbook 60-food diets", wb, skip);
    report("CLI/service parity", parity());

    std::printf("%d passed, %d failed, %d skipped\n", passed, failed, skipped);
    return failed == 0 ? 0 : 1;
}
