#pragma once

#include "coldplant/plant_model.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace coldplant {

// Manufacturer data for the four-unit reference plant.
namespace reference_data {

inline constexpr std::size_t kUnits = 4;
inline constexpr std::array<std::string_view, kUnits> kNames = {"RTAC 400", "RTAC 300", "RTAC 250", "RTAA 125"};

inline constexpr std::array<double, 2> kElwt = {5.0, 9.0};
inline constexpr std::array<double, 2> kCaet = {30.0, 45.0};

// Full-load data, [unit][elwt][caet]; capacity in kW.
inline constexpr double kFullLoadKw[kUnits][2][2] = {
    {{1407.1, 1145.9}, {1580.1, 1196.1}},
    {{1062.9, 865.6}, {1192.6, 903.3}},
    {{836.1, 678.6}, {939.1, 718.0}},
    {{375.15, 306.94}, {413.48, 336.83}},
};
inline constexpr double kFullLoadCop[kUnits][2][2] = {
    {{3.1, 2.0}, {3.2, 2.2}},
    {{3.1, 2.0}, {3.2, 2.2}},
    {{3.1, 2.0}, {3.2, 2.2}},
    {{3.42, 2.22}, {3.6, 2.37}},
};

// Part-load COP at the rating condition below, [unit][plr index].
inline constexpr std::array<double, 4> kPlr = {0.25, 0.5, 0.75, 1.0};
inline constexpr double kPartLoadCop[kUnits][4] = {
    {5.82, 4.42, 3.72, 2.75},
    {5.33, 4.04, 3.72, 2.78},
    {6.06, 4.68, 3.69, 2.75},
    {4.48, 4.33, 3.54, 3.07},
};
// Standard rating point assumed for the part-load table (12/7 degC water, 35 degC air).
inline constexpr double kPartLoadElwt = 7.0;
inline constexpr double kPartLoadCaet = 35.0;

// Operating envelope per unit.
inline constexpr double kFlowMin[kUnits] = {34.0, 20.0, 15.0, 9.5};
inline constexpr double kFlowMax[kUnits] = {105.0, 68.0, 47.0, 28.4};
inline constexpr double kTOutMin = 5.0;
inline constexpr double kTOutMax = 9.0;

}  // namespace reference_data

/// The four reference chillers with COP grids over
/// PLR {0.25, 0.5, 0.75, 1} x ELWT {5, 7, 9} x CAET {30, 35, 45}.
std::vector<ChillerSpec> default_chillers();

PlantConfig default_plant();

std::vector<ChillerSpec> parse_chiller_config(std::string_view text, std::string_view source = "<chillers>");
std::string format_chiller_config(const std::vector<ChillerSpec>& chillers);

}  // namespace coldplant
