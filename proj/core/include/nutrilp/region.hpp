#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nutrilp/lp.hpp"
#include "nutrilp/nutrition.hpp"

/// Two-food feasible regions: x and y are servings/day of two chosen foods.
namespace nutrilp::region {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// a·x + b·y {<=, >=, =} rhs
struct Halfplane {
    double a = 0.0;
    double b = 0.0;
    lp::Relation relation = lp::Relation::greater_equal;
    double rhs = 0.0;
    std::string label;
    /// Nutrient behind the row; empty for non-negativity rows.
    std::optional<Nutrient> nutrient;

    double value_at(Point p) const { return a * p.x + b * p.y; }
    /// dy/dx along the boundary line; nullopt for vertical lines.
    std::optional<double> slope() const;
    std::optional<double> x_intercept() const;
    std::optional<double> y_intercept() const;
};

/// Throws InputError when (a, b) == (0, 0).
Halfplane make_halfplane(double a, double b, lp::Relation rel, double rhs, std::string label,
                         std::optional<Nutrient> nutrient = std::nullopt);

struct Vertex {
    Point point;
    std::vector<std::size_t> generators;  // indices of halfplanes through the vertex
};

struct FeasibleRegion2D {
    std::vector<Halfplane> halfplanes;
    std::vector<Vertex> vertices;  // counter-clockwise
    bool empty = true;
    bool bounded = true;
};

/// Equalities count as a >=/<= pair.
FeasibleRegion2D build_region(std::span<const Halfplane> halfplanes);

struct CostVertex {
    Point vertex;
    double cost = 0.0;
};

/// Throws InputError on an empty region or when cost decreases without bound.
CostVertex min_cost_vertex(const FeasibleRegion2D& region, double price_x, double price_y);

/// Fixes a third food at `servings` and moves its contribution to the
/// right-hand side of every nutrient row.
std::vector<Halfplane> project_filler(std::span<const Halfplane> halfplanes, const FoodItem& filler,
                                      double servings);

/// Rows of `reqs` restricted to the two foods, plus x >= 0 and y >= 0.
std::vector<Halfplane> diet_halfplanes(const FoodItem& x_food, const FoodItem& y_food, const RequirementSet& reqs);

struct Segment {
    Point from;
    Point to;
};

/// Axis-aligned data window [0, x_max] x [0, y_max].
struct Window {
    double x_max = 10.0;
    double y_max = 10.0;
};

/// Clips the line a·x + b·y = rhs to the window; nullopt if it misses.
std::optional<Segment> clip_line(double a, double b, double rhs, const Window& w);

/// Everything needed to draw one panel.
struct RegionView {
    std::string x_id;
    std::string y_id;
    double price_x = 0.0;
    double price_y = 0.0;
    /// Equality rows drawn as reference lines and left out of the region.
    std::vector<Halfplane> reference_lines;
    FeasibleRegion2D region;
    std::optional<CostVertex> optimum;
    std::optional<std::string> filler_id;
    double filler_servings = 0.0;
    /// Rows that neither axis food affects and that the fixed intake violates.
    std::vector<std::string> unsatisfiable;
    Window window;
};

struct FillerSpec {
    std::string id;
    /// Servings/day; when omitted, the filler's quantity in the least-cost
    /// three-food diet.
    std::optional<double> servings;
};

/// Builds the panel for foods `x` and `y`, optionally projecting a filler
/// food at a fixed level. Equality rows (energy) become reference lines and
/// are not intersected with the region.
RegionView diet_region_view(std::span<const FoodItem> foods, const RequirementSet& reqs, const std::string& x_id,
                            const std::string& y_id, const std::optional<FillerSpec>& filler = std::nullopt);

/// Wraps an arbitrary region for drawing; computes optimum and window.
RegionView make_view(FeasibleRegion2D region, double price_x, double price_y, std::string x_label = "x",
                     std::string y_label = "y");

/// Recomputes optimum and window after the region changed.
void finish_view(RegionView& view);

struct SvgLayout {
    double width = 800.0;
    double height = 600.0;
    double margin_fraction = 0.05;
};

/// Deterministic SVG 1.1 drawing; all coordinates printed with 2 decimals.
std::string render_svg(const RegionView& view, const SvgLayout& layout = {});

/// Maps data coordinates to SVG pixels for `view` under `layout`.
Point to_pixels(const RegionView& view, Point p, const SvgLayout& layout = {});
Point from_pixels(const RegionView& view, Point px, const SvgLayout& layout = {});

}  // namespace nutrilp::region
