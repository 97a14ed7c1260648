#include "fixtures.hpp"

namespace nutrilp::testing {

namespace {

FoodItem food(const char* id, const char* name, FoodGroup group, double price, double grams, double kcal, double iron,
              double vit_a, const char* fdc) {
    FoodItem::Fields f;
    f.id = id;
    f.name = name;
    f.group = group;
    f.price_per_serving = price;
    f.serving_mass_g = grams;
    f.composition = {{Nutrient::energy, kcal}, {Nutrient::iron, iron}, {Nutrient::vitamin_a, vit_a}};
    f.source_id = fdc;
    return FoodItem(std::move(f));
}

}  // namespace

FoodItem beans() {
    return food("beans", "Black beans, canned", FoodGroup::nuts_beans_seeds_oils, 0.36, 143, 130, 2.71, 0, "175188");
}
FoodItem squash() {
    return food("squash", "Butternut squash, diced", FoodGroup::fruits_vegetables, 0.51, 140, 63, 0.98, 745, "169295");
}
FoodItem corn() {
    return food("corn", "Corn masa flour", FoodGroup::starchy_staples, 0.33, 122, 440, 2.90, 0, "169748");
}

std::vector<FoodItem> three_sisters() { return {beans(), squash(), corn()}; }
std::vector<FoodItem> beans_and_squash() { return {beans(), squash()}; }

RequirementSet female_30(bool with_energy) {
    const std::vector<DriEntry> entries{
        {Nutrient::iron, BoundKind::lower, 18, Provenance::rda},
        {Nutrient::iron, BoundKind::upper, 45, Provenance::ul},
        {Nutrient::vitamin_a, BoundKind::lower, 700, Provenance::rda},
        {Nutrient::vitamin_a, BoundKind::upper, 3000, Provenance::ul},
    };
    return build_requirement_set("female-30", with_energy ? std::optional<double>(2330) : std::nullopt, entries);
}

}  // namespace nutrilp::testing
