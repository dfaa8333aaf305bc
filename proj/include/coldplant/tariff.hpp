#pragma once

#include <array>
#include <chrono>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace coldplant {

using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDTHH:MM[:SS]" (a space may replace 'T', a trailing 'Z' is accepted).
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

inline constexpr int kPeriods = 6;

/// Tariff period P1 (most expensive) .. P6.
struct Period {
    int index = 1;
    bool operator==(const Period&) const = default;
    auto operator<=>(const Period&) const = default;
};

std::string to_string(Period p);
Period parse_period(std::string_view text);

struct TariffSchedule {
    std::string name;
    std::array<double, kPeriods> prices{};  // EUR/kWh, P1..P6

    double price(Period p) const { return prices[static_cast<std::size_t>(p.index - 1)]; }
};

enum class DayType { Weekday, Weekend };

/// Role of an hour inside a season's three active periods.
enum class HourRole { Peak, Mid, Valley };

struct PeriodCalendar {
    std::map<unsigned, std::string> season_of_month;               // 1..12
    std::map<std::string, std::array<Period, 3>> active_periods;    // peak, mid, valley
    std::array<HourRole, 24> weekday_roles{};
    std::array<HourRole, 24> weekend_roles{};

    std::string season_at(Timestamp t) const;
    bool period_active(std::string_view season, Period p) const;
};

DayType day_type(Timestamp t);

Period period_at(const PeriodCalendar& cal, Timestamp t);
double price_at(const TariffSchedule& tariff, const PeriodCalendar& cal, Timestamp t);

struct TariffConfig {
    std::vector<TariffSchedule> tariffs;
    PeriodCalendar calendar;

    const TariffSchedule& find(std::string_view name) const;
};

TariffConfig load_tariff_config(std::string_view text, std::string_view source = "<tariffs>");
std::string_view default_tariff_config_text();
const TariffConfig& default_tariff_config();

}  // namespace coldplant
