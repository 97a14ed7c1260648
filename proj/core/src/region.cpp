#include "nutrilp/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nutrilp/diet_solver.hpp"

namespace nutrilp::region {

namespace {

constexpr double kVertexTol = 1e-9;
constexpr double kDirectionTol = 1e-12;

struct Normalized {
    double a, b, rhs;
    lp::Relation rel;
};

Normalized normalize(const Halfplane& h) {
    const double n = std::hypot(h.a, h.b);
    return {h.a / n, h.b / n, h.rhs / n, h.relation};
}

bool satisfies(const Normalized& h, Point p, double tol) {
    const double r = h.a * p.x + h.b * p.y - h.rhs;
    switch (h.rel) {
        case lp::Relation::less_equal: return r <= tol;
        case lp::Relation::greater_equal: return r >= -tol;
        case lp::Relation::equal: return std::abs(r) <= tol;
    }
    return false;
}

bool is_recession_direction(const std::vector<Normalized>& hs, Point d) {
    for (const auto& h : hs) {
        const double r = h.a * d.x + h.b * d.y;
        switch (h.rel) {
            case lp::Relation::less_equal:
                if (r > kDirectionTol) return false;
                break;
            case lp::Relation::greater_equal:
                if (r < -kDirectionTol) return false;
                break;
            case lp::Relation::equal:
                if (std::abs(r) > kDirectionTol) return false;
                break;
        }
    }
    return true;
}

// Extreme rays of a 2-D recession cone lie along a boundary direction or a
// normal of some halfplane.
std::vector<Point> recession_directions(const std::vector<Normalized>& hs) {
    std::vector<Point> out;
    for (const auto& h : hs) {
        for (Point d : {Point{-h.b, h.a}, Point{h.b, -h.a}, Point{h.a, h.b}, Point{-h.a, -h.b}})
            if (is_recession_direction(hs, d)) out.push_back(d);
    }
    return out;
}

std::vector<Vertex> enumerate_vertices(const std::vector<Normalized>& hs) {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const auto& p = hs[i];
            const auto& q = hs[j];
            const double det = p.a * q.b - q.a * p.b;
            if (std::abs(det) < 1e-12) continue;
            const Point v{(p.rhs * q.b - q.rhs * p.b) / det, (p.a * q.rhs - q.a * p.rhs) / det};
            if (!std::all_of(hs.begin(), hs.end(), [&](const Normalized& h) { return satisfies(h, v, kVertexTol); }))
                continue;
            const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Vertex& w) {
                return std::abs(w.point.x - v.x) <= kVertexTol && std::abs(w.point.y - v.y) <= kVertexTol;
            });
            if (!duplicate) out.push_back({v, {}});
        }
    }
    for (auto& v : out) {
        for (std::size_t k = 0; k < hs.size(); ++k) {
            const double r = hs[k].a * v.point.x + hs[k].b * v.point.y - hs[k].rhs;
            if (std::abs(r) <= kVertexTol) v.generators.push_back(k);
        }
    }
    if (out.size() > 1) {
        Point c;
        for (const auto& v : out) {
            c.x += v.point.x;
            c.y += v.point.y;
        }
        c.x /= static_cast<double>(out.size());
        c.y /= static_cast<double>(out.size());
        std::sort(out.begin(), out.end(), [c](const Vertex& l, const Vertex& r) {
            return std::atan2(l.point.y - c.y, l.point.x - c.x) < std::atan2(r.point.y - c.y, r.point.x - c.x);
        });
    }
    return out;
}

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

double nice_ceiling(double v) {
    if (v <= 1.0) return 1.0;
    return std::ceil(v);
}

double tick_step(double extent) {
    const double raw = extent / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) return m * mag;
    return 10.0 * mag;
}

}  // namespace

std::optional<double> Halfplane::slope() const {
    if (b == 0.0) return std::nullopt;
    return -a / b;
}

std::optional<double> Halfplane::x_intercept() const {
    if (a == 0.0) return std::nullopt;
    return rhs / a;
}

std::optional<double> Halfplane::y_intercept() const {
    if (b == 0.0) return std::nullopt;
    return rhs / b;
}

Halfplane make_halfplane(double a, double b, lp::Relation rel, double rhs, std::string label,
                         std::optional<Nutrient> nutrient) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(rhs))
        throw InputError("halfplane '" + label + "' has non-finite coefficients");
    if (a == 0.0 && b == 0.0) throw InputError("halfplane '" + label + "' has zero normal");
    return Halfplane{a, b, rel, rhs, std::move(label), nutrient};
}

FeasibleRegion2D build_region(std::span<const Halfplane> halfplanes) {
    FeasibleRegion2D region;
    region.halfplanes.assign(halfplanes.begin(), halfplanes.end());
    std::vector<Normalized> hs;
    hs.reserve(halfplanes.size());
    for (const auto& h : halfplanes) {
        if (h.a == 0.0 && h.b == 0.0) throw InputError("halfplane '" + h.label + "' has zero normal");
        hs.push_back(normalize(h));
    }

    region.vertices = enumerate_vertices(hs);
    if (!region.vertices.empty()) {
        region.empty = false;
    } else {
        // No vertex: either empty or containing a whole line. A large box
        // tells the two apart.
        auto boxed = hs;
        constexpr double L = 1e7;
        boxed.push_back({1, 0, L, lp::Relation::less_equal});
        boxed.push_back({1, 0, -L, lp::Relation::greater_equal});
        boxed.push_back({0, 1, L, lp::Relation::less_equal});
        boxed.push_back({0, 1, -L, lp::Relation::greater_equal});
        region.empty = enumerate_vertices(boxed).empty();
    }
    region.bounded = region.empty || recession_directions(hs).empty();
    return region;
}

CostVertex min_cost_vertex(const FeasibleRegion2D& region, double price_x, double price_y) {
    if (region.empty) throw InputError("feasible region is empty");
    std::vector<Normalized> hs;
    for (const auto& h : region.halfplanes) hs.push_back(normalize(h));
    for (const auto& d : recession_directions(hs))
        if (price_x * d.x + price_y * d.y < -kDirectionTol) throw InputError("cost decreases without bound");
    if (region.vertices.empty()) throw InputError("feasible region has no vertex");

    const Vertex* best = nullptr;
    double best_cost = 0.0;
    for (const auto& v : region.vertices) {
        const double c = price_x * v.point.x + price_y * v.point.y;
        if (best == nullptr) {
            best = &v;
            best_cost = c;
            continue;
        }
        const double tol = 1e-12 * (1.0 + std::abs(best_cost));
        const bool cheaper = c < best_cost - tol;
        const bool tie = std::abs(c - best_cost) <= tol;
        const bool lower_xy = v.point.x < best->point.x - kVertexTol ||
                              (std::abs(v.point.x - best->point.x) <= kVertexTol && v.point.y < best->point.y);
        if (cheaper || (tie && lower_xy)) {
            best = &v;
            best_cost = std::min(best_cost, c);
        }
    }
    return {best->point, price_x * best->point.x + price_y * best->point.y};
}

std::vector<Halfplane> project_filler(std::span<const Halfplane> halfplanes, const FoodItem& filler, double servings) {
    if (!std::isfinite(servings) || servings < 0.0)
        throw InputError("filler servings must be a non-negative number");
    std::vector<Halfplane> out(halfplanes.begin(), halfplanes.end());
    if (servings == 0.0) return out;
    for (auto& h : out) {
        if (!h.nutrient) continue;
        h.rhs -= servings * filler.amount(*h.nutrient);
        h.label += " @ " + filler.id() + "=" + compact(servings);
    }
    return out;
}

std::vector<Halfplane> diet_halfplanes(const FoodItem& x_food, const FoodItem& y_food, const RequirementSet& reqs) {
    std::vector<Halfplane> out;
    const auto add = [&](Nutrient n, BoundKind kind, double value, lp::Relation rel) {
        const double a = x_food.amount(n);
        const double b = y_food.amount(n);
        if (a == 0.0 && b == 0.0) return;
        const Constraint c{n, kind, value, Provenance::custom};
        out.push_back(make_halfplane(a, b, rel, value, c.label(), n));
    };
    if (const auto& e = reqs.energy_kcal()) add(Nutrient::energy, BoundKind::equality, *e, lp::Relation::equal);
    for (const auto& [n, bounds] : reqs.bounds()) {
        if (bounds.equality) add(n, BoundKind::equality, bounds.equality->value, lp::Relation::equal);
        if (bounds.lower) add(n, BoundKind::lower, bounds.lower->value, lp::Relation::greater_equal);
        if (bounds.upper) add(n, BoundKind::upper, bounds.upper->value, lp::Relation::less_equal);
    }
    out.push_back(make_halfplane(1, 0, lp::Relation::greater_equal, 0, x_food.id() + " >= 0"));
    out.push_back(make_halfplane(0, 1, lp::Relation::greater_equal, 0, y_food.id() + " >= 0"));
    return out;
}

std::optional<Segment> clip_line(double a, double b, double rhs, const Window& w) {
    std::vector<Point> hits;
    const auto push = [&hits](Point p) {
        for (const auto& h : hits)
            if (std::abs(h.x - p.x) < 1e-12 && std::abs(h.y - p.y) < 1e-12) return;
        hits.push_back(p);
    };
    const double eps = 1e-12;
    if (b != 0.0) {
        for (double x : {0.0, w.x_max}) {
            const double y = (rhs - a * x) / b;
            if (y >= -eps && y <= w.y_max + eps) push({x, std::clamp(y, 0.0, w.y_max)});
        }
    }
    if (a != 0.0) {
        for (double y : {0.0, w.y_max}) {
            const double x = (rhs - b * y) / a;
            if (x >= -eps && x <= w.x_max + eps) push({std::clamp(x, 0.0, w.x_max), y});
        }
    }
    if (hits.size() < 2) return std::nullopt;
    std::sort(hits.begin(), hits.end(), [](Point l, Point r) { return l.x < r.x || (l.x == r.x && l.y < r.y); });
    return Segment{hits.front(), hits.back()};
}

RegionView diet_region_view(std::span<const FoodItem> foods, const RequirementSet& reqs, const std::string& x_id,
                            const std::string& y_id, const std::optional<FillerSpec>& filler) {
    if (x_id == y_id) throw InputError("axis foods must differ");
    const auto& x_food = require_food(foods, x_id);
    const auto& y_food = require_food(foods, y_id);

    RegionView view;
    view.x_id = x_id;
    view.y_id = y_id;
    view.price_x = x_food.price_per_serving();
    view.price_y = y_food.price_per_serving();

    auto halfplanes = diet_halfplanes(x_food, y_food, reqs);
    if (filler) {
        if (filler->id == x_id || filler->id == y_id) throw InputError("filler must differ from the axis foods");
        const auto& f = require_food(foods, filler->id);
        double z = 0.0;
        if (filler->servings) {
            z = *filler->servings;
        } else {
            const std::vector<FoodItem> trio{x_food, y_food, f};
            const auto solved = solve_diet(trio, reqs);
            if (!solved.optimal())
                throw InputError("no least-cost level for filler '" + f.id() + "': " + solved.diagnostic);
            z = solved.plan.servings(f.id());
        }
        halfplanes = project_filler(halfplanes, f, z);
        view.filler_id = f.id();
        view.filler_servings = z;

        // Rows untouched by both axis foods: the filler alone must satisfy them.
        const auto check = [&](Nutrient n, BoundKind kind, double value) {
            if (x_food.amount(n) != 0.0 || y_food.amount(n) != 0.0) return;
            const double got = z * f.amount(n);
            const bool ok = kind == BoundKind::lower   ? got >= value - 1e-9
                            : kind == BoundKind::upper ? got <= value + 1e-9
                                                       : std::abs(got - value) <= 1e-9;
            if (!ok) view.unsatisfiable.push_back(Constraint{n, kind, value, Provenance::custom}.label());
        };
        if (const auto& e = reqs.energy_kcal()) check(Nutrient::energy, BoundKind::equality, *e);
        for (const auto& [n, b] : reqs.bounds()) {
            if (b.equality) check(n, BoundKind::equality, b.equality->value);
            if (b.lower) check(n, BoundKind::lower, b.lower->value);
            if (b.upper) check(n, BoundKind::upper, b.upper->value);
        }
    } else {
        for (const auto& [n, b] : reqs.bounds()) {
            if (x_food.amount(n) != 0.0 || y_food.amount(n) != 0.0) continue;
            if (b.lower && b.lower->value > 0.0)
                view.unsatisfiable.push_back(Constraint{n, BoundKind::lower, b.lower->value, Provenance::custom}.label());
            if (b.equality && b.equality->value > 0.0)
                view.unsatisfiable.push_back(
                    Constraint{n, BoundKind::equality, b.equality->value, Provenance::custom}.label());
        }
    }

    std::vector<Halfplane> region_rows;
    for (auto& h : halfplanes) {
        if (h.relation == lp::Relation::equal) view.reference_lines.push_back(h);
        else region_rows.push_back(h);
    }
    view.region = build_region(region_rows);
    if (!view.unsatisfiable.empty()) {
        view.region.vertices.clear();
        view.region.empty = true;
    }
    finish_view(view);
    return view;
}

void finish_view(RegionView& view) {
    view.optimum.reset();
    if (!view.region.empty) {
        try {
            view.optimum = min_cost_vertex(view.region, view.price_x, view.price_y);
        } catch (const InputError&) {
        }
    }
    double xm = 0.0, ym = 0.0;
    for (const auto& v : view.region.vertices) {
        xm = std::max(xm, v.point.x);
        ym = std::max(ym, v.point.y);
    }
    if (view.region.vertices.empty()) xm = ym = 10.0;
    const double grow = view.region.bounded ? 1.15 : 1.5;
    view.window = {nice_ceiling(xm * grow), nice_ceiling(ym * grow)};
}

RegionView make_view(FeasibleRegion2D region, double price_x, double price_y, std::string x_label,
                     std::string y_label) {
    RegionView view;
    view.x_id = std::move(x_label);
    view.y_id = std::move(y_label);
    view.price_x = price_x;
    view.price_y = price_y;
    view.region = std::move(region);
    finish_view(view);
    return view;
}

Point to_pixels(const RegionView& view, Point p, const SvgLayout& layout) {
    const double left = layout.width * layout.margin_fraction;
    const double right = layout.width * (1.0 - layout.margin_fraction);
    const double top = layout.height * layout.margin_fraction;
    const double bottom = layout.height * (1.0 - layout.margin_fraction);
    return {left + p.x / view.window.x_max * (right - left), bottom - p.y / view.window.y_max * (bottom - top)};
}

Point from_pixels(const RegionView& view, Point px, const SvgLayout& layout) {
    const double left = layout.width * layout.margin_fraction;
    const double right = layout.width * (1.0 - layout.margin_fraction);
    const double top = layout.height * layout.margin_fraction;
    const double bottom = layout.height * (1.0 - layout.margin_fraction);
    return {(px.x - left) / (right - left) * view.window.x_max, (bottom - px.y) / (bottom - top) * view.window.y_max};
}

std::string render_svg(const RegionView& view, const SvgLayout& layout) {
    const auto px = [&](Point p) { return to_pixels(view, p, layout); };
    const Point origin = px({0, 0});
    const Point corner = px({view.window.x_max, view.window.y_max});

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed2(layout.width)
      << "\" height=\"" << fixed2(layout.height) << "\" viewBox=\"0 0 " << fixed2(layout.width) << " "
      << fixed2(layout.height) << "\" data-x-range=\"0.00 " << fixed2(view.window.x_max) << "\" data-y-range=\"0.00 "
      << fixed2(view.window.y_max) << "\" data-plot-box=\"" << fixed2(origin.x) << " " << fixed2(corner.y) << " "
      << fixed2(corner.x) << " " << fixed2(origin.y) << "\">\n";
    s << "<title>" << escape_xml(view.x_id) << " vs " << escape_xml(view.y_id) << "</title>\n";
    s << "<rect class=\"background\" x=\"0.00\" y=\"0.00\" width=\"" << fixed2(layout.width) << "\" height=\""
      << fixed2(layout.height) << "\" fill=\"#ffffff\"/>\n";

    // Feasible polygon; unbounded regions are clipped to the window.
    if (!view.region.empty) {
        std::vector<Point> poly;
        if (view.region.bounded) {
            for (const auto& v : view.region.vertices) poly.push_back(v.point);
        } else {
            auto rows = view.region.halfplanes;
            rows.push_back(make_halfplane(1, 0, lp::Relation::less_equal, view.window.x_max, "window"));
            rows.push_back(make_halfplane(0, 1, lp::Relation::less_equal, view.window.y_max, "window"));
            rows.push_back(make_halfplane(1, 0, lp::Relation::greater_equal, 0, "window"));
            rows.push_back(make_halfplane(0, 1, lp::Relation::greater_equal, 0, "window"));
            for (const auto& v : build_region(rows).vertices) poly.push_back(v.point);
        }
        s << "<polygon class=\"feasible\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point p = px(poly[i]);
            s << (i ? " " : "") << fixed2(p.x) << "," << fixed2(p.y);
        }
        s << "\" fill=\"#c6dbef\" stroke=\"#2171b5\" stroke-width=\"1.00\"/>\n";
    }

    s << "<line class=\"axis\" x1=\"" << fixed2(origin.x) << "\" y1=\"" << fixed2(origin.y) << "\" x2=\""
      << fixed2(corner.x) << "\" y2=\"" << fixed2(origin.y) << "\" stroke=\"#000000\"/>\n";
    s << "<line class=\"axis\" x1=\"" << fixed2(origin.x) << "\" y1=\"" << fixed2(origin.y) << "\" x2=\""
      << fixed2(origin.x) << "\" y2=\"" << fixed2(corner.y) << "\" stroke=\"#000000\"/>\n";
    const double xs = tick_step(view.window.x_max);
    for (int k = 0; k * xs <= view.window.x_max + 1e-9; ++k) {
        const Point p = px({k * xs, 0});
        s << "<text class=\"tick\" x=\"" << fixed2(p.x) << "\" y=\"" << fixed2(p.y + 14) << "\" font-size=\"10\""
          << " text-anchor=\"middle\">" << compact(k * xs) << "</text>\n";
    }
    const double ys = tick_step(view.window.y_max);
    for (int k = 0; k * ys <= view.window.y_max + 1e-9; ++k) {
        const Point p = px({0, k * ys});
        s << "<text class=\"tick\" x=\"" << fixed2(p.x - 6) << "\" y=\"" << fixed2(p.y + 3) << "\" font-size=\"10\""
          << " text-anchor=\"end\">" << compact(k * ys) << "</text>\n";
    }
    s << "<text class=\"axis-label\" x=\"" << fixed2((origin.x + corner.x) / 2) << "\" y=\"" << fixed2(layout.height - 4)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << escape_xml(view.x_id) << " (servings/day)</text>\n";
    s << "<text class=\"axis-label\" x=\"12.00\" y=\"" << fixed2((origin.y + corner.y) / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12.00 "
      << fixed2((origin.y + corner.y) / 2) << ")\">" << escape_xml(view.y_id) << " (servings/day)</text>\n";

    const auto draw_line = [&](const Halfplane& h, const char* cls, const char* colour, double width) {
        const auto seg = clip_line(h.a, h.b, h.rhs, view.window);
        if (!seg) return;
        const Point a = px(seg->from);
        const Point b = px(seg->to);
        s << "<line class=\"" << cls << "\" data-label=\"" << escape_xml(h.label) << "\" x1=\"" << fixed2(a.x)
          << "\" y1=\"" << fixed2(a.y) << "\" x2=\"" << fixed2(b.x) << "\" y2=\"" << fixed2(b.y) << "\" stroke=\""
          << colour << "\" stroke-width=\"" << fixed2(width) << "\"/>\n";
        s << "<text class=\"line-label\" x=\"" << fixed2(b.x) << "\" y=\"" << fixed2(b.y - 4)
          << "\" font-size=\"9\" text-anchor=\"end\">" << escape_xml(h.label) << "</text>\n";
    };
    if (!view.region.empty) {
        for (const auto& h : view.region.halfplanes)
            if (h.nutrient || !view.filler_id) draw_line(h, "boundary", "#525252", 1.0);
        for (const auto& h : view.reference_lines) draw_line(h, "reference", "#cb181d", 3.0);
    }

    if (view.optimum) {
        const auto iso = make_halfplane(view.price_x, view.price_y, lp::Relation::equal, view.optimum->cost, "isocost");
        if (const auto seg = clip_line(iso.a, iso.b, iso.rhs, view.window)) {
            const Point a = px(seg->from);
            const Point b = px(seg->to);
            s << "<line class=\"isocost\" data-cost=\"" << fixed2(view.optimum->cost) << "\" x1=\"" << fixed2(a.x)
              << "\" y1=\"" << fixed2(a.y) << "\" x2=\"" << fixed2(b.x) << "\" y2=\"" << fixed2(b.y)
              << "\" stroke=\"#238b45\" stroke-dasharray=\"6 4\"/>\n";
        }
        const Point o = px(view.optimum->vertex);
        s << "<circle class=\"optimum\" cx=\"" << fixed2(o.x) << "\" cy=\"" << fixed2(o.y)
          << "\" r=\"5.00\" fill=\"#000000\"/>\n";
        s << "<text class=\"optimum-label\" x=\"" << fixed2(o.x + 8) << "\" y=\"" << fixed2(o.y + 14)
          << "\" font-size=\"11\">(" << fixed2(view.optimum->vertex.x) << ", " << fixed2(view.optimum->vertex.y)
          << ") cost " << fixed2(view.optimum->cost) << "</text>\n";
    }
    if (view.region.empty) {
        s << "<text class=\"infeasible\" x=\"" << fixed2(layout.width / 2) << "\" y=\"" << fixed2(layout.height / 2)
          << "\" font-size=\"20\" text-anchor=\"middle\" fill=\"#cb181d\">infeasible</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace nutrilp::region
