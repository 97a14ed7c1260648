#pragma once

#include <filesystem>
#include <vector>

#include "nutrilp/nutrition.hpp"

#ifndef NUTRILP_TEST_DATA_DIR
#define NUTRILP_TEST_DATA_DIR "data"
#endif

namespace nutrilp::testing {

inline std::filesystem::path data_dir() { return NUTRILP_TEST_DATA_DIR; }

/// Black beans, butternut squash and corn masa flour, per serving.
FoodItem beans();
FoodItem squash();
FoodItem corn();
std::vector<FoodItem> three_sisters();
std::vector<FoodItem> beans_and_squash();

/// Iron 18..45 mg, vitamin A 700..3000 mcg RAE, with or without the
/// 2330 kcal energy target.
RequirementSet female_30(bool with_energy = true);

}  // namespace nutrilp::testing
