#include <benchmark/benchmark.h>

#include <random>

#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"

using namespace nutrilp;

namespace {

FoodItem food(std::string id, FoodGroup group, double price, Composition composition) {
    FoodItem::Fields f;
    f.id = id;
    f.name = id;
    f.group = group;
    f.price_per_serving = price;
    f.serving_mass_g = 100.0;
    f.composition = std::move(composition);
    return FoodItem(std::move(f));
}

std::vector<FoodItem> three_sisters() {
    return {
        food("beans", FoodGroup::nuts_beans_seeds_oils, 0.36, {{Nutrient::energy, 130}, {Nutrient::iron, 2.71}}),
        food("squash", FoodGroup::fruits_vegetables, 0.51,
             {{Nutrient::energy, 63}, {Nutrient::iron, 0.98}, {Nutrient::vitamin_a, 745}}),
        food("corn", FoodGroup::starchy_staples, 0.33, {{Nutrient::energy, 440}, {Nutrient::iron, 2.90}}),
    };
}

RequirementSet female_30() {
    return build_requirement_set("female-30", 2330.0,
                                 std::vector<DriEntry>{{Nutrient::iron, BoundKind::lower, 18, Provenance::rda},
                                                       {Nutrient::iron, BoundKind::upper, 45, Provenance::ul},
                                                       {Nutrient::vitamin_a, BoundKind::lower, 700, Provenance::rda},
                                                       {Nutrient::vitamin_a, BoundKind::upper, 3000, Provenance::ul}});
}

std::vector<FoodItem> random_foods(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FoodItem> foods;
    for (std::size_t i = 0; i < n; ++i)
        foods.push_back(food("f" + std::to_string(i), FoodGroup::fruits_vegetables, 0.1 + u(rng),
                             {{Nutrient::energy, 50 + 400 * u(rng)},
                              {Nutrient::iron, 5 * u(rng)},
                              {Nutrient::vitamin_a, 800 * u(rng)},
                              {Nutrient::protein, 20 * u(rng)},
                              {Nutrient::calcium, 300 * u(rng)}}));
    return foods;
}

}  // namespace

static void BM_SolveThreeSisters(benchmark::State& state) {
    const auto foods = three_sisters();
    const auto reqs = female_30();
    for (auto _ : state) benchmark::DoNotOptimize(solve_diet(foods, reqs));
}
BENCHMARK(BM_SolveThreeSisters);

static void BM_SolveRandomDiet(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto foods = random_foods(static_cast<std::size_t>(state.range(0)), rng);
    const auto reqs = build_requirement_set(
        "bench", 2330.0,
        std::vector<DriEntry>{{Nutrient::iron, BoundKind::lower, 18, Provenance::rda},
                              {Nutrient::vitamin_a, BoundKind::lower, 700, Provenance::rda},
                              {Nutrient::protein, BoundKind::lower, 46, Provenance::rda},
                              {Nutrient::calcium, BoundKind::lower, 1000, Provenance::rda},
                              {Nutrient::calcium, BoundKind::upper, 2500, Provenance::ul}});
    for (auto _ : state) benchmark::DoNotOptimize(solve_diet(foods, reqs));
}
BENCHMARK(BM_SolveRandomDiet)->Arg(10)->Arg(60)->Arg(200);

static void BM_Evaluate100Foods(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto foods = random_foods(100, rng);
    DietPlan plan;
    for (const auto& f : foods) plan.set(f.id(), 0.05);
    const auto reqs = female_30();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(plan, foods, reqs));
}
BENCHMARK(BM_Evaluate100Foods);
BENCHMARK_MAIN();
