#include "coldplant/tariff.hpp"

#include "coldplant/error.hpp"
#include "coldplant/text_config.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

namespace coldplant {

namespace {

using namespace std::chrono;

int parse_field(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole)
{
    int v = 0;
    if (pos + len > text.size()) {
        throw Error(ErrorCode::Parse, fmt::format("timestamp '{}' is truncated", whole));
    }
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc{} || ptr != first + len) {
        throw Error(ErrorCode::Parse, fmt::format("timestamp '{}' is not ISO-8601", whole));
    }
    return v;
}

void expect_char(std::string_view text, std::size_t pos, std::string_view allowed, std::string_view whole)
{
    if (pos >= text.size() || allowed.find(text[pos]) == std::string_view::npos) {
        throw Error(ErrorCode::Parse, fmt::format("timestamp '{}' is not ISO-8601", whole));
    }
}

HourRole parse_role(std::string_view token)
{
    if (token == "peak" || token == "P") {
        return HourRole::Peak;
    }
    if (token == "mid" || token == "M") {
        return HourRole::Mid;
    }
    if (token == "valley" || token == "V") {
        return HourRole::Valley;
    }
    throw Error(ErrorCode::Parse, fmt::format("unknown hour role '{}' (use peak|mid|valley or P|M|V)", token));
}

std::array<HourRole, 24> parse_roles(const ConfigDocument& doc, const ConfigEntry& e)
{
    const auto tokens = split_tokens(e.value);
    if (tokens.size() != 24) {
        entry_error(doc, e, fmt::format("expected 24 hour roles, got {}", tokens.size()));
    }
    std::array<HourRole, 24> out{};
    for (std::size_t h = 0; h < 24; ++h) {
        try {
            out[h] = parse_role(tokens[h]);
        } catch (const Error& err) {
            entry_error(doc, e, err.what());
        }
    }
    return out;
}

constexpr std::string_view kDefaultConfig = R"(# coldplant tariffs v1
# prices in EUR/kWh for periods P1..P6

[tariff]
name = A
prices = 0.2998 0.1606 0.1368 0.1188 0.0985 0.0991

[tariff]
name = B
prices = 0.1802 0.1606 0.1368 0.1188 0.0985 0.0991

[tariff]
name = C
prices = 0.1395 0.1278 0.1110 0.1014 0.0927 0.0871

[calendar]
# peak, mid and valley period of each electric season
season.high = P1 P2 P6
season.medium-high = P2 P3 P6
season.medium = P3 P4 P6
season.low = P4 P5 P6
# January .. December
months = high high medium-high low low medium high medium medium low medium-high high
# hour 0 .. 23
weekday = V V V V V V V V M P P P P P M M M M P P P P M M
weekend = V V V V V V V V V V V V V V V V V V V V V V V V
)";

}  // namespace

Timestamp parse_timestamp(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    if (!s.empty() && s.back() == 'Z') {
        s.remove_suffix(1);
    }
    const int y = parse_field(s, 0, 4, text);
    expect_char(s, 4, "-", text);
    const int mo = parse_field(s, 5, 2, text);
    expect_char(s, 7, "-", text);
    const int d = parse_field(s, 8, 2, text);
    expect_char(s, 10, "T ", text);
    const int h = parse_field(s, 11, 2, text);
    expect_char(s, 13, ":", text);
    const int mi = parse_field(s, 14, 2, text);
    int sec = 0;
    if (s.size() > 16) {
        expect_char(s, 16, ":", text);
        sec = parse_field(s, 17, 2, text);
        if (s.size() != 19) {
            throw Error(ErrorCode::Parse, fmt::format("timestamp '{}' has trailing characters", text));
        }
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) {
        throw Error(ErrorCode::Parse, fmt::format("timestamp '{}' is out of range", text));
    }
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

std::string format_timestamp(Timestamp t)
{
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const hh_mm_ss hms{t - day_start};
    return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

std::string to_string(Period p)
{
    return fmt::format("P{}", p.index);
}

Period parse_period(std::string_view text)
{
    if (text.size() == 2 && (text[0] == 'P' || text[0] == 'p') && text[1] >= '1' && text[1] <= '6') {
        return Period{text[1] - '0'};
    }
    throw Error(ErrorCode::Parse, fmt::format("'{}' is not a tariff period (P1..P6)", text));
}

DayType day_type(Timestamp t)
{
    const weekday wd{floor<days>(t)};
    return (wd == Saturday || wd == Sunday) ? DayType::Weekend : DayType::Weekday;
}

std::string PeriodCalendar::season_at(Timestamp t) const
{
    const year_month_day ymd{floor<days>(t)};
    const auto it = season_of_month.find(static_cast<unsigned>(ymd.month()));
    if (it == season_of_month.end()) {
        throw Error(ErrorCode::UnmappedTimestamp,
                    fmt::format("{}: month has no electric season", format_timestamp(t)));
    }
    return it->second;
}

bool PeriodCalendar::period_active(std::string_view season, Period p) const
{
    const auto it = active_periods.find(std::string(season));
    if (it == active_periods.end()) {
        return false;
    }
    return std::find(it->second.begin(), it->second.end(), p) != it->second.end();
}

Period period_at(const PeriodCalendar& cal, Timestamp t)
{
    const std::string season = cal.season_at(t);
    const auto it = cal.active_periods.find(season);
    if (it == cal.active_periods.end()) {
        throw Error(ErrorCode::UnmappedTimestamp,
                    fmt::format("{}: season '{}' has no active periods", format_timestamp(t), season));
    }
    const auto day_start = floor<days>(t);
    const auto hour = static_cast<std::size_t>(floor<hours>(t - day_start).count());
    const auto& roles = day_type(t) == DayType::Weekend ? cal.weekend_roles : cal.weekday_roles;
    return it->second[static_cast<std::size_t>(roles[hour])];
}

double price_at(const TariffSchedule& tariff, const PeriodCalendar& cal, Timestamp t)
{
    return tariff.price(period_at(cal, t));
}

const TariffSchedule& TariffConfig::find(std::string_view name) const
{
    for (const auto& t : tariffs) {
        if (t.name == name) {
            return t;
        }
    }
    throw Error(ErrorCode::Config, fmt::format("unknown tariff '{}'", name));
}

TariffConfig load_tariff_config(std::string_view text, std::string_view source)
{
    const ConfigDocument doc = parse_config(text, source);
    TariffConfig cfg;

    for (int b : doc.blocks_named("tariff")) {
        TariffSchedule t;
        bool have_name = false;
        bool have_prices = false;
        int line = 0;
        for (const ConfigEntry* e : doc.block(b)) {
            line = line == 0 ? e->line : line;
            if (e->key == "name") {
                t.name = e->value;
                have_name = !t.name.empty();
            } else if (e->key == "prices") {
                const auto v = entry_numbers(doc, *e);
                if (v.size() != kPeriods) {
                    entry_error(doc, *e, fmt::format("expected {} prices (P1..P6), got {}", kPeriods, v.size()));
                }
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (!(v[i] > 0.0)) {
                        entry_error(doc, *e, fmt::format("price of P{} must be positive", i + 1));
                    }
                    t.prices[i] = v[i];
                }
                have_prices = true;
            } else {
                entry_error(doc, *e, "unknown field");
            }
        }
        if (!have_name || !have_prices) {
            throw Error(ErrorCode::Parse, fmt::format("{}: tariff block near line {}: missing field '{}'", doc.source,
                                                      line, have_name ? "prices" : "name"));
        }
        for (const auto& other : cfg.tariffs) {
            if (other.name == t.name) {
                throw Error(ErrorCode::Parse, fmt::format("{}: duplicate tariff '{}'", doc.source, t.name));
            }
        }
        cfg.tariffs.push_back(std::move(t));
    }
    if (cfg.tariffs.empty()) {
        throw Error(ErrorCode::Parse, fmt::format("{}: no [tariff] blocks", doc.source));
    }

    const auto calendars = doc.blocks_named("calendar");
    if (calendars.size() != 1) {
        throw Error(ErrorCode::Parse, fmt::format("{}: expected exactly one [calendar] block", doc.source));
    }
    PeriodCalendar& cal = cfg.calendar;
    bool have_months = false;
    bool have_weekday = false;
    bool have_weekend = false;
    std::vector<std::string> months;
    const ConfigEntry* months_entry = nullptr;
    for (const ConfigEntry* e : doc.block(calendars.front())) {
        if (e->key.starts_with("season.")) {
            const std::string season = e->key.substr(7);
            const auto tokens = split_tokens(e->value);
            if (tokens.size() != 3) {
                entry_error(doc, *e, "expected three periods: peak mid valley");
            }
            std::array<Period, 3> periods{};
            for (std::size_t i = 0; i < 3; ++i) {
                try {
                    periods[i] = parse_period(tokens[i]);
                } catch (const Error& err) {
                    entry_error(doc, *e, err.what());
                }
            }
            if (!cal.active_periods.emplace(season, periods).second) {
                entry_error(doc, *e, "duplicate season");
            }
        } else if (e->key == "months") {
            months = split_tokens(e->value);
            if (months.size() != 12) {
                entry_error(doc, *e, fmt::format("expected 12 seasons, got {}", months.size()));
            }
            months_entry = e;
            have_months = true;
        } else if (e->key == "weekday") {
            cal.weekday_roles = parse_roles(doc, *e);
            have_weekday = true;
        } else if (e->key == "weekend") {
            cal.weekend_roles = parse_roles(doc, *e);
            have_weekend = true;
        } else {
            entry_error(doc, *e, "unknown field");
        }
    }
    if (!have_months || !have_weekday || !have_weekend || cal.active_periods.empty()) {
        throw Error(ErrorCode::Parse,
                    fmt::format("{}: [calendar] needs months, weekday, weekend and at least one season.* row",
                                doc.source));
    }
    for (unsigned m = 1; m <= 12; ++m) {
        const std::string& season = months[m - 1];
        if (!cal.active_periods.contains(season)) {
            entry_error(doc, *months_entry, fmt::format("season '{}' is not defined", season));
        }
        cal.season_of_month[m] = season;
    }
    return cfg;
}

std::string_view default_tariff_config_text()
{
    return kDefaultConfig;
}

const TariffConfig& default_tariff_config()
{
    static const TariffConfig cfg = load_tariff_config(kDefaultConfig, "<embedded tariffs>");
    return cfg;
}

}  // namespace coldplant
