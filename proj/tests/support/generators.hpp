#pragma once

#include <random>
#include <vector>

#include "nutrilp/lp.hpp"
#include "nutrilp/nutrition.hpp"

namespace nutrilp::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

/// n <= 6 variables, <= 6 rows of mixed relations, coefficients in [0, 10].
/// Some objectives take negative entries so that unbounded problems occur;
/// some coefficients are small integers so that degenerate vertices occur.
lp::Problem random_lp(Rng& rng, std::size_t max_vars = 6, std::size_t max_rows = 6);

/// Two-variable version of random_lp.
lp::Problem random_lp_2d(Rng& rng);

struct DietInstance {
    std::vector<FoodItem> foods;
    RequirementSet reqs;
    DietPlan witness;  // a plan known to satisfy reqs
};

/// Random foods and a requirement set built around a random witness plan,
/// so the instance is feasible by construction.
DietInstance random_feasible_diet(Rng& rng);

/// A random plan over `foods` with servings in [0, max_servings].
DietPlan random_plan(Rng& rng, const std::vector<FoodItem>& foods, double max_servings = 10.0);

}  // namespace nutrilp::testing
