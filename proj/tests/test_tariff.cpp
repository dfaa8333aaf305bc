#include "coldplant/error.hpp"
#include "coldplant/tariff.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>

using namespace coldplant;

namespace {

Timestamp at(const char* iso)
{
    return parse_timestamp(iso);
}

}  // namespace

TEST(Timestamps, ParseAndFormat)
{
    EXPECT_EQ(format_timestamp(at("2023-07-03T11:00:00")), "2023-07-03T11:00:00");
    EXPECT_EQ(format_timestamp(at("2023-07-03 11:00")), "2023-07-03T11:00:00");
    EXPECT_EQ(format_timestamp(at("2024-02-29T23:59:59Z")), "2024-02-29T23:59:59");
    EXPECT_THROW(at("2023-02-30T00:00"), Error);
    EXPECT_THROW(at("2023-07-03"), Error);
    EXPECT_THROW(at("03/07/2023 11:00"), Error);
}

TEST(Tariff, DefaultPeriods)
{
    const auto& cfg = default_tariff_config();
    // 2023-07-03 is a Monday, 2023-07-09 a Sunday.
    EXPECT_EQ(period_at(cfg.calendar, at("2023-07-03T11:00")), Period{1});
    EXPECT_EQ(period_at(cfg.calendar, at("2023-07-09T03:00")), Period{6});
    EXPECT_EQ(period_at(cfg.calendar, at("2023-05-03T11:00")), Period{4});
    EXPECT_EQ(period_at(cfg.calendar, at("2023-07-03T15:00")), Period{2});
    EXPECT_EQ(period_at(cfg.calendar, at("2023-07-03T19:30")), Period{1});
    EXPECT_EQ(period_at(cfg.calendar, at("2023-07-08T11:00")), Period{6});
}

TEST(Tariff, DefaultPrices)
{
    const auto& cfg = default_tariff_config();
    const auto weekday_11 = at("2023-07-03T11:00");
    EXPECT_DOUBLE_EQ(price_at(cfg.find("A"), cfg.calendar, weekday_11), 0.2998);
    EXPECT_DOUBLE_EQ(price_at(cfg.find("B"), cfg.calendar, weekday_11), 0.1802);
    EXPECT_DOUBLE_EQ(cfg.find("C").price(Period{6}), 0.0871);
    EXPECT_DOUBLE_EQ(price_at(cfg.find("C"), cfg.calendar, at("2023-07-03T02:00")), 0.0871);
    EXPECT_THROW(cfg.find("D"), Error);
}

TEST(Tariff, PricesOrderedWithinEachSchedule)
{
    for (const auto& t : default_tariff_config().tariffs) {
        for (int p = 1; p < 5; ++p) {
            EXPECT_GE(t.price(Period{p}), t.price(Period{p + 1})) << t.name << " P" << p;
        }
    }
    EXPECT_GT(default_tariff_config().find("A").price(Period{6}), default_tariff_config().find("A").price(Period{5}));
}

TEST(Tariff, WeekCoversExactlyTheSeasonTriple)
{
    const auto& cal = default_tariff_config().calendar;
    const char* mondays[] = {"2023-01-02T00:00", "2023-03-06T00:00", "2023-04-03T00:00", "2023-06-05T00:00",
                             "2023-07-03T00:00", "2023-09-04T00:00", "2023-11-06T00:00"};
    for (const char* monday : mondays) {
        const Timestamp start = at(monday);
        const std::string season = cal.season_at(start);
        std::set<int> seen;
        for (int d = 0; d < 7; ++d) {
            std::set<int> day;
            for (int h = 0; h < 24; ++h) {
                const Period p = period_at(cal, start + std::chrono::hours(24 * d + h));
                seen.insert(p.index);
                day.insert(p.index);
                // Constant within the hour.
                EXPECT_EQ(period_at(cal, start + std::chrono::hours(24 * d + h) + std::chrono::minutes(59)), p);
            }
            EXPECT_LE(day.size(), 3u);
        }
        std::set<int> expected;
        for (Period p : cal.active_periods.at(season)) {
            expected.insert(p.index);
        }
        EXPECT_EQ(seen, expected) << season;
    }
}

TEST(Tariff, SeasonsFollowMonths)
{
    const auto& cal = default_tariff_config().calendar;
    EXPECT_EQ(cal.season_at(at("2023-07-15T00:00")), "high");
    EXPECT_EQ(cal.season_at(at("2023-05-15T00:00")), "low");
    EXPECT_EQ(cal.season_at(at("2023-09-15T00:00")), "medium");
    EXPECT_TRUE(cal.period_active("high", Period{1}));
    EXPECT_FALSE(cal.period_active("low", Period{1}));
    EXPECT_FALSE(cal.period_active("medium", Period{1}));
}

TEST(TariffConfig, MissingPriceIsAnError)
{
    std::string text(default_tariff_config_text());
    const auto pos = text.find("0.2998 0.1606 0.1368 0.1188 0.0985 0.0991");
    text.replace(pos, 41, "0.2998 0.1606 0.1368 0.1188 0.0991");
    try {
        load_tariff_config(text, "t.cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("t.cfg:"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("prices"), std::string::npos);
    }
}

TEST(TariffConfig, CustomFlatTariff)
{
    std::string text(default_tariff_config_text());
    text += "\n[tariff]\nname = flat\nprices = 0.10 0.10 0.10 0.10 0.10 0.10\n";
    // Sections may appear after the calendar.
    const auto cfg = load_tariff_config(text);
    const auto& flat = cfg.find("flat");
    for (int p = 1; p <= 6; ++p) {
        EXPECT_DOUBLE_EQ(flat.price(Period{p}), 0.10);
    }
    EXPECT_EQ(cfg.tariffs.size(), 4u);
}

TEST(TariffConfig, RejectsBadCalendar)
{
    std::string text(default_tariff_config_text());
    auto pos = text.find("season.low = P4 P5 P6");
    std::string broken = text;
    broken.replace(pos, 21, "season.low = P4 P5 P9");
    EXPECT_THROW(load_tariff_config(broken), Error);

    broken = text;
    pos = broken.find("weekend = V");
    broken.replace(pos, 11, "weekend = X");
    EXPECT_THROW(load_tariff_config(broken), Error);
}
