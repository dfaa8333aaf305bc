#pragma once

#include "coldplant/plant_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coldplant {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Built-in invariant checks: manufacturer-grid exactness of `chillers`,
/// tank and bypass conservation, plant_step bookkeeping and GA benchmarks.
std::vector<CheckResult> run_model_checks(const std::vector<ChillerSpec>& chillers, std::uint64_t seed = 1,
                                          int random_cases = 2000);

}  // namespace coldplant
