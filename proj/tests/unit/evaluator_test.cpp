#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nutrilp/diet_solver.hpp"
#include "nutrilp/evaluator.hpp"

using namespace nutrilp;
namespace t = nutrilp::testing;

namespace {

const NutrientAdequacy& row(const AdequacyReport& r, Nutrient n) {
    for (const auto& a : r.nutrients)
        if (a.nutrient == n) return a;
    throw std::runtime_error("nutrient missing from report");
}

int rank(Band b) { return static_cast<int>(b); }

}  // namespace

TEST(ClassifyBand, Examples) {
    EXPECT_EQ(classify_band(100.0, 40.0), Band::at_bound);
    EXPECT_EQ(classify_band(50.0, std::nullopt), Band::deficient_severe);
    const auto inside = classify_band(150.0, 60.0);
    EXPECT_TRUE(inside == Band::adequate_low || inside == Band::adequate_mid || inside == Band::adequate_high);
}

TEST(ClassifyBand, Thresholds) {
    EXPECT_EQ(classify_band(74.9, std::nullopt), Band::deficient_severe);
    EXPECT_EQ(classify_band(75.0, std::nullopt), Band::deficient_mild);
    EXPECT_EQ(classify_band(99.4, std::nullopt), Band::deficient_mild);
    EXPECT_EQ(classify_band(99.5, std::nullopt), Band::at_bound);
    EXPECT_EQ(classify_band(100.5, std::nullopt), Band::at_bound);
    EXPECT_EQ(classify_band(100.6, std::nullopt), Band::adequate_mid);
    EXPECT_EQ(classify_band(std::nullopt, 99.4), Band::adequate_mid);
    EXPECT_EQ(classify_band(std::nullopt, 99.6), Band::at_bound);
    EXPECT_EQ(classify_band(std::nullopt, 100.6), Band::excess_mild);
    EXPECT_EQ(classify_band(std::nullopt, 125.0), Band::excess_mild);
    EXPECT_EQ(classify_band(std::nullopt, 125.1), Band::excess_severe);
    EXPECT_EQ(classify_band(std::nullopt, std::nullopt), Band::adequate_mid);
}

TEST(ClassifyBand, ThirdsOfTheInterval) {
    // LB 10, UB 40: thirds at 20 and 30.
    const auto band_at = [](double v) { return classify_band(v / 10 * 100, v / 40 * 100); };
    EXPECT_EQ(band_at(15), Band::adequate_low);
    EXPECT_EQ(band_at(25), Band::adequate_mid);
    EXPECT_EQ(band_at(35), Band::adequate_high);
    EXPECT_EQ(band_at(5), Band::deficient_severe);
    EXPECT_EQ(band_at(45), Band::excess_mild);
}

TEST(ClassifyBand, ColoursAndIntensity) {
    EXPECT_EQ(colour_of(Band::at_bound), "white");
    EXPECT_EQ(colour_of(Band::deficient_mild), "red");
    EXPECT_EQ(colour_of(Band::excess_severe), "red");
    EXPECT_EQ(colour_of(Band::adequate_mid), "blue");
    EXPECT_EQ(band_intensity(100.0, 50.0), 0.0);
    EXPECT_LT(band_intensity(90.0, std::nullopt), band_intensity(40.0, std::nullopt));
    for (double p = 0; p <= 400; p += 0.7) {
        const double i = band_intensity(p, p / 4);
        EXPECT_GE(i, 0.0);
        EXPECT_LE(i, 1.0);
    }
}

// Adjacent inputs < 0.01% apart move at most one band, except across the
// at-bound spike (which may sit between any two bands).
TEST(ClassifyBand, ContinuousInBands) {
    const auto check = [](double lb, double ub) {
        const double step = 0.005;
        std::optional<Band> prev;
        for (double v = 0.0; v <= 3 * ub; v += step * lb / 100) {
            const auto band = classify_band(v / lb * 100, v / ub * 100);
            if (prev && *prev != band && *prev != Band::at_bound && band != Band::at_bound)
                EXPECT_LE(std::abs(rank(band) - rank(*prev)), 1) << "lb " << lb << " ub " << ub << " v " << v;
            prev = band;
        }
    };
    check(18, 45);
    check(700, 3000);
    check(10, 10.5);
}

TEST(Evaluate, SolvedPlanIsFullyAdequate) {
    const auto foods = t::three_sisters();
    const auto reqs = t::female_30();
    const auto r = evaluate(solve_diet(foods, reqs).plan, foods, reqs);
    EXPECT_TRUE(r.fully_adequate);
    EXPECT_NEAR(*row(r, Nutrient::iron).percent_of_lower, 100, 1e-9);
    EXPECT_EQ(row(r, Nutrient::iron).band, Band::at_bound);
    EXPECT_NEAR(*row(r, Nutrient::vitamin_a).percent_of_lower, 100, 1e-9);
    EXPECT_EQ(row(r, Nutrient::vitamin_a).band, Band::at_bound);
    EXPECT_NEAR(*r.energy.percent_of_target, 100, 1e-9);
    EXPECT_NEAR(r.total_cost, 2.48, 0.01);
}

TEST(Evaluate, TwoFoodGuessFallsShortOnEnergy) {
    const auto r = evaluate({{"beans", 6.30}, {"squash", 0.94}}, t::three_sisters(), t::female_30());
    EXPECT_NEAR(*r.energy.percent_of_target, 878.22 / 2330 * 100, 0.05);
    EXPECT_NEAR(*r.energy.percent_of_target, 37.7, 0.05);
    EXPECT_FALSE(r.fully_adequate);
}

TEST(Evaluate, EmptyPlanIsSeverelyDeficient) {
    const auto r = evaluate({}, t::three_sisters(), t::female_30());
    for (const auto& n : r.nutrients) {
        ASSERT_TRUE(n.percent_of_lower);
        EXPECT_EQ(*n.percent_of_lower, 0.0);
        EXPECT_EQ(n.band, Band::deficient_severe);
    }
    EXPECT_FALSE(r.fully_adequate);
    EXPECT_EQ(r.total_cost, 0.0);
}

TEST(Evaluate, UnknownFoodIsAnError) {
    EXPECT_THROW(evaluate({{"rice", 1}}, t::three_sisters(), t::female_30()), InputError);
}

TEST(Evaluate, FullyAdequateMatchesDefinition) {
    t::Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = t::random_feasible_diet(rng);
        const auto plan = t::random_plan(rng, inst.foods, 4.0);
        const auto r = evaluate(plan, inst.foods, inst.reqs);
        bool ok = true;
        for (const auto& n : r.nutrients) {
            if (n.percent_of_lower && *n.percent_of_lower < 100 - kAtBoundTolerancePct) ok = false;
            if (n.percent_of_upper && *n.percent_of_upper > 100 + kAtBoundTolerancePct) ok = false;
            EXPECT_EQ(n.band, classify_band(n.percent_of_lower, n.percent_of_upper));
        }
        if (r.energy.target && std::abs(*r.energy.percent_of_target - 100) > kAtBoundTolerancePct) ok = false;
        EXPECT_EQ(r.fully_adequate, ok) << trial;
    }
}

TEST(Evaluate, MoreFoodNeverLowersPercentOfLower) {
    t::Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = t::random_feasible_diet(rng);
        auto plan = t::random_plan(rng, inst.foods, 3.0);
        const auto before = evaluate(plan, inst.foods, inst.reqs);
        const auto& f = inst.foods[t::pick(rng, 0, inst.foods.size() - 1)];
        plan.set(f.id(), plan.servings(f.id()) + t::uniform(rng, 0.01, 2.0));
        const auto after = evaluate(plan, inst.foods, inst.reqs);
        ASSERT_EQ(before.nutrients.size(), after.nutrients.size());
        for (std::size_t i = 0; i < before.nutrients.size(); ++i) {
            EXPECT_GE(after.nutrients[i].delivered, before.nutrients[i].delivered);
            if (before.nutrients[i].percent_of_lower)
                EXPECT_GE(*after.nutrients[i].percent_of_lower, *before.nutrients[i].percent_of_lower);
        }
    }
}

TEST(Evaluate, SolverOutputIsAlwaysAdequate) {
    t::Rng rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = t::random_feasible_diet(rng);
        const auto s = solve_diet(inst.foods, inst.reqs);
        ASSERT_TRUE(s.optimal());
        EXPECT_TRUE(evaluate(s.plan, inst.foods, inst.reqs).fully_adequate) << trial;
    }
}
