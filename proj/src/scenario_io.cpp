#include "coldplant/scenario_io.hpp"

#include "coldplant/error.hpp"
#include "coldplant/rng.hpp"
#include "coldplant/text_config.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>

#include <fmt/format.h>

namespace coldplant {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::vector<std::pair<int, std::string_view>> lines_of(std::string_view text)
{
    std::vector<std::pair<int, std::string_view>> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        const std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++number;
        out.emplace_back(number, line);
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    return out;
}

// Column lookup for a header-declared delimited file.
class Table {
public:
    Table(std::string source, std::vector<std::string_view> header) : source_(std::move(source))
    {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (!index_.emplace(std::string(header[i]), i).second) {
                throw Error(ErrorCode::Parse, fmt::format("{}: duplicate column '{}'", source_, header[i]));
            }
        }
        width_ = header.size();
    }

    std::size_t width() const { return width_; }
    bool has(const std::string& name) const { return index_.contains(name); }

    std::size_t column(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end()) {
            throw Error(ErrorCode::Parse, fmt::format("{}: missing column '{}'", source_, name));
        }
        return it->second;
    }

    double number(const std::vector<std::string_view>& row, const std::string& name, int line) const
    {
        return parse_double(row[column(name)], fmt::format("{}: row at line {}, column '{}'", source_, line, name));
    }

    std::string_view text(const std::vector<std::string_view>& row, const std::string& name) const
    {
        return row[column(name)];
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::map<std::string, std::size_t> index_;
    std::size_t width_ = 0;
};

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string bool_text(bool b)
{
    return b ? "1" : "0";
}

}  // namespace

void Scenario::validate() const
{
    const std::size_t n = q_load_real.size();
    if (q_load_forecast.size() != n || t_env_real.size() != n || t_env_forecast.size() != n) {
        throw Error(ErrorCode::Precondition, "scenario tracks differ in length");
    }
    if (n < hours + horizon) {
        throw Error(ErrorCode::Precondition,
                    fmt::format("scenario has {} rows, {} hours with horizon {} need {}", n, hours, horizon,
                                hours + horizon));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q_load_real[i] >= 0.0) || !(q_load_forecast[i] >= 0.0) || !std::isfinite(q_load_real[i])
            || !std::isfinite(q_load_forecast[i])) {
            throw Error(ErrorCode::Precondition, fmt::format("scenario row {}: demand must be finite and >= 0", i + 1));
        }
        if (!std::isfinite(t_env_real[i]) || !std::isfinite(t_env_forecast[i])) {
            throw Error(ErrorCode::Precondition, fmt::format("scenario row {}: temperature is not finite", i + 1));
        }
    }
}

std::uint64_t Scenario::fingerprint() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, static_cast<std::uint64_t>(start.time_since_epoch().count()));
    h = fnv1a(h, hours);
    h = fnv1a(h, horizon);
    for (const auto* series : {&q_load_real, &q_load_forecast, &t_env_real, &t_env_forecast}) {
        for (double v : *series) {
            h = fnv1a(h, std::bit_cast<std::uint64_t>(v));
        }
    }
    return h;
}

Scenario load_scenario(std::string_view text, std::size_t horizon, std::string_view source)
{
    Scenario s;
    s.horizon = horizon;
    std::optional<Table> table;
    std::optional<Timestamp> previous;
    const std::string src(source);
    for (const auto& [number, raw] : lines_of(text)) {
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            if (body.starts_with("coldplant-scenario") && body != kScenarioSchema) {
                throw Error(ErrorCode::Parse,
                            fmt::format("{}:{}: unsupported schema '{}' (expected '{}')", src, number, body,
                                        kScenarioSchema));
            }
            if (body.starts_with("name:")) {
                s.name = std::string(trim(body.substr(5)));
            } else if (body.starts_with("season:")) {
                s.season = std::string(trim(body.substr(7)));
            }
            continue;
        }
        const auto cells = split_csv(line);
        if (!table) {
            table.emplace(src, cells);
            for (const char* required : {"timestamp", "q_real", "q_forecast", "t_real", "t_forecast"}) {
                table->column(required);
            }
            if (table->width() != 5) {
                throw Error(ErrorCode::Parse,
                            fmt::format("{}:{}: expected exactly the columns timestamp, q_real, q_forecast, t_real, "
                                        "t_forecast",
                                        src, number));
            }
            continue;
        }
        if (cells.size() != table->width()) {
            throw Error(ErrorCode::Parse,
                        fmt::format("{}:{}: expected {} fields, found {}", src, number, table->width(), cells.size()));
        }
        Timestamp t;
        try {
            t = parse_timestamp(table->text(cells, "timestamp"));
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, fmt::format("{}:{}: {}", src, number, e.what()));
        }
        if (previous && t != *previous + std::chrono::hours(1)) {
            throw Error(ErrorCode::Parse, fmt::format("{}:{}: timestamps must advance by exactly one hour", src, number));
        }
        if (!previous) {
            s.start = t;
        }
        previous = t;
        const double q_real = table->number(cells, "q_real", number);
        const double q_forecast = table->number(cells, "q_forecast", number);
        if (q_real < 0.0 || q_forecast < 0.0) {
            throw Error(ErrorCode::Parse, fmt::format("{}:{}: negative demand", src, number));
        }
        s.q_load_real.push_back(q_real);
        s.q_load_forecast.push_back(q_forecast);
        s.t_env_real.push_back(table->number(cells, "t_real", number));
        s.t_env_forecast.push_back(table->number(cells, "t_forecast", number));
    }
    if (!table) {
        throw Error(ErrorCode::Parse, fmt::format("{}: missing header row", src));
    }
    const std::size_t rows = s.q_load_real.size();
    if (rows <= horizon) {
        throw Error(ErrorCode::Parse,
                    fmt::format("{}: {} rows cannot cover even one hour plus a {}-period horizon", src, rows, horizon));
    }
    s.hours = rows - horizon;
    if (s.season.empty()) {
        s.season = default_tariff_config().calendar.season_at(s.start);
    }
    if (s.name.empty()) {
        s.name = src;
    }
    s.validate();
    return s;
}

std::string format_scenario(const Scenario& s)
{
    std::string out = fmt::format("# {}\n# name: {}\n# season: {}\n", kScenarioSchema, s.name, s.season);
    out += "timestamp,q_real,q_forecast,t_real,t_forecast\n";
    for (std::size_t i = 0; i < s.q_load_real.size(); ++i) {
        out += fmt::format("{},{},{},{},{}\n", format_timestamp(s.time_at(i)), s.q_load_real[i], s.q_load_forecast[i],
                           s.t_env_real[i], s.t_env_forecast[i]);
    }
    return out;
}

namespace {

struct Template {
    double scale;
    double t_mean;
    double t_amplitude;
};

Template template_for(std::string_view profile)
{
    if (profile == "high") {
        return {1.0, 29.0, 8.0};
    }
    if (profile == "medium") {
        return {0.75, 25.0, 7.0};
    }
    if (profile == "low") {
        return {0.6, 20.0, 7.0};
    }
    throw Error(ErrorCode::Config, fmt::format("unknown synthetic profile '{}' (high|medium|low)", profile));
}

// Office-type building, kW by hour of day.
constexpr std::array<double, 24> kWeekday = {350,  350,  350,  350,  350,  350,  350,  700,  1500, 2600, 2600, 2600,
                                             2600, 2600, 1800, 1800, 1800, 1800, 1800, 1100, 700,  450,  450,  450};
constexpr std::array<double, 24> kWeekend = {300, 300, 300, 300, 300, 300, 300, 300, 450, 450, 450, 450,
                                             450, 450, 450, 450, 450, 450, 450, 450, 450, 350, 350, 350};

}  // namespace

Timestamp synth_start(std::string_view profile)
{
    template_for(profile);
    // Mondays in July, September and May.
    if (profile == "high") {
        return parse_timestamp("2023-07-03T00:00:00");
    }
    if (profile == "medium") {
        return parse_timestamp("2023-09-04T00:00:00");
    }
    return parse_timestamp("2023-05-01T00:00:00");
}

Scenario synth_scenario(const SynthOptions& opt)
{
    if (opt.hours == 0) {
        throw Error(ErrorCode::Config, "synthetic scenario needs at least one hour");
    }
    if (!(opt.demand_noise >= 0.0 && opt.demand_noise < 1.0) || !(opt.temperature_noise >= 0.0)) {
        throw Error(ErrorCode::Config, "noise amplitudes must be nonnegative (demand below 1)");
    }
    const Template tpl = template_for(opt.profile);
    Scenario s;
    s.name = fmt::format("synthetic-{}-seed{}", opt.profile, opt.seed);
    s.start = synth_start(opt.profile);
    s.hours = opt.hours;
    s.horizon = opt.horizon;
    s.season = default_tariff_config().calendar.season_at(s.start);

    Rng shape(mix_seed(opt.seed, 1));
    Rng noise(mix_seed(opt.seed, 2));
    const std::size_t rows = opt.hours + opt.horizon;
    double day_factor = 1.0;
    double day_warmth = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        const Timestamp t = s.time_at(i);
        const auto hour = static_cast<std::size_t>(i % 24);
        if (hour == 0) {
            day_factor = 1.0 + 0.05 * (2.0 * shape.uniform() - 1.0);
            day_warmth = 1.5 * (2.0 * shape.uniform() - 1.0);
        }
        const auto& profile = day_type(t) == DayType::Weekend ? kWeekend : kWeekday;
        const double jitter = 1.0 + 0.02 * (2.0 * shape.uniform() - 1.0);
        const double q = profile[hour] * 1000.0 * tpl.scale * day_factor * jitter;
        const double temp = tpl.t_mean + day_warmth
            + tpl.t_amplitude * std::cos(2.0 * std::numbers::pi * (static_cast<double>(hour) - 15.0) / 24.0);
        s.q_load_real.push_back(q);
        s.t_env_real.push_back(temp);
        const double qn = opt.demand_noise * (2.0 * noise.uniform() - 1.0);
        const double tn = opt.temperature_noise * (2.0 * noise.uniform() - 1.0);
        s.q_load_forecast.push_back(opt.demand_noise == 0.0 ? q : q * (1.0 + qn));
        s.t_env_forecast.push_back(opt.temperature_noise == 0.0 ? temp : temp + tn);
    }
    s.validate();
    return s;
}

void SimulationReport::recompute_totals()
{
    const double hours_per_step = meta.dt / 3600.0;
    chillers.assign(chiller_names.size(), ChillerTotals{});
    for (std::size_t i = 0; i < chiller_names.size(); ++i) {
        chillers[i].name = chiller_names[i];
    }
    for (const HourRecord& h : hours) {
        for (std::size_t i = 0; i < chillers.size() && i < h.outcome.p_electric.size(); ++i) {
            const double kwh = h.outcome.p_electric[i] / 1000.0 * hours_per_step;
            chillers[i].energy_mwh += kwh / 1000.0;
            chillers[i].cost_keur += kwh * h.price / 1000.0;
        }
    }
    energy_mwh = 0.0;
    cost_keur = 0.0;
    for (const auto& c : chillers) {
        energy_mwh += c.energy_mwh;
        cost_keur += c.cost_keur;
    }
}

std::string format_hourly_csv(const SimulationReport& report)
{
    const std::size_t n = report.chiller_names.size();
    std::string out = "hour,timestamp,period,price_eur_kwh,q_load_w,q_forecast_w,t_env_c,q_chillers_w,q_tes_w,"
                      "q_delivered_w,unmet_w,within_tolerance,fallback,t_mix_c,t_load_supply_c,t_load_return_c,"
                      "t_chiller_return_c,t_tank_start_c,t_tank_c,m_load_kg_s,m_tes_kg_s,tes_on,tes_discharging,"
                      "bypass_kg_s,loop_iterations,generations,planned_fitness,energy_kwh,cost_eur";
    for (std::size_t i = 1; i <= n; ++i) {
        out += fmt::format(",on_{0},m_dot_{0},t_ref_{0},t_out_{0},delta_t_{0},q_{0}_w,plr_{0},cop_{0},p_{0}_w,"
                           "saturated_{0}",
                           i);
    }
    out += '\n';
    for (const HourRecord& h : report.hours) {
        const PeriodOutcome& o = h.outcome;
        const PeriodDecision& d = h.decision;
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},", h.hour, format_timestamp(h.time),
                           to_string(h.period), h.price, o.q_load, h.q_load_forecast, h.t_env, o.q_chillers, o.q_tes,
                           o.q_delivered, o.unmet, bool_text(h.within_tolerance), bool_text(h.fallback));
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", o.t_mix, o.t_load_supply,
                           o.t_load_return, o.t_chiller_return, o.t_tank_start, o.t_tank, d.m_dot_load, d.m_dot_tes,
                           bool_text(d.tes_on), bool_text(d.mode == TesMode::Discharging), o.bypass_flow,
                           o.loop_iterations, h.generations, h.planned_fitness, h.energy_kwh, h.cost_eur);
        for (std::size_t i = 0; i < n; ++i) {
            out += fmt::format(",{},{},{},{},{},{},{},{},{},{}", bool_text(d.on[i]), d.m_dot[i], d.t_out_ref[i],
                               o.t_out[i], o.delta_t[i], o.q_chiller[i], o.plr[i], o.cop[i], o.p_electric[i],
                               bool_text(o.saturated[i]));
        }
        out += '\n';
    }
    return out;
}

std::string format_plotdata_csv(const SimulationReport& report)
{
    std::string out = "hour,timestamp,q_load_kw,q_chillers_kw,q_tes_kw,t_tank_c,t_load_supply_c,t_mix_c,"
                      "price_eur_kwh,cumulative_kwh,cumulative_eur\n";
    double kwh = 0.0;
    double eur = 0.0;
    for (const HourRecord& h : report.hours) {
        kwh += h.energy_kwh;
        eur += h.cost_eur;
        const PeriodOutcome& o = h.outcome;
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", h.hour, format_timestamp(h.time), o.q_load / 1000.0,
                           o.q_chillers / 1000.0, o.q_tes / 1000.0, o.t_tank, o.t_load_supply, o.t_mix, h.price, kwh,
                           eur);
    }
    return out;
}

std::string format_metadata(const SimulationReport& report)
{
    const ReportMetadata& m = report.meta;
    std::string out = fmt::format("# {}\n\n[run]\n", m.schema);
    out += fmt::format("objective = {}\ntariff = {}\nseason = {}\nscenario = {}\nscenario_fingerprint = {}\n",
                       m.objective, m.tariff, m.season, m.scenario, m.scenario_fingerprint);
    out += fmt::format("start = {}\nseed = {}\nprofile = {}\nhorizon = {}\nhours = {}\ndt_s = {}\n", m.start, m.seed,
                       m.profile, m.horizon, m.hours, m.dt);
    out += fmt::format("tank_volume_m3 = {}\ntank_initial_c = {}\nga = {}\n", m.tank_volume, m.tank_initial, m.ga);
    for (const auto& name : report.chiller_names) {
        out += fmt::format("chiller = {}\n", name);
    }
    out += fmt::format("\n[totals]\nenergy_mwh = {}\ncost_keur = {}\n", report.energy_mwh, report.cost_keur);
    return out;
}

SimulationReport parse_report(std::string_view metadata, std::string_view hourly, std::string_view source)
{
    SimulationReport r;
    const ConfigDocument doc = parse_config(metadata, fmt::format("{}/run.txt", source));
    for (const ConfigEntry& e : doc.entries) {
        if (e.section == "totals") {
            continue;
        }
        if (e.section != "run") {
            entry_error(doc, e, "unexpected section");
        }
        ReportMetadata& m = r.meta;
        if (e.key == "objective") {
            m.objective = e.value;
        } else if (e.key == "tariff") {
            m.tariff = e.value;
        } else if (e.key == "season") {
            m.season = e.value;
        } else if (e.key == "scenario") {
            m.scenario = e.value;
        } else if (e.key == "scenario_fingerprint") {
            m.scenario_fingerprint = e.value;
        } else if (e.key == "start") {
            m.start = e.value;
        } else if (e.key == "seed") {
            m.seed = static_cast<std::uint64_t>(std::stoull(e.value));
        } else if (e.key == "profile") {
            m.profile = e.value;
        } else if (e.key == "horizon") {
            m.horizon = static_cast<std::size_t>(entry_integer(doc, e));
        } else if (e.key == "hours") {
            m.hours = static_cast<std::size_t>(entry_integer(doc, e));
        } else if (e.key == "dt_s") {
            m.dt = entry_number(doc, e);
        } else if (e.key == "tank_volume_m3") {
            m.tank_volume = entry_number(doc, e);
        } else if (e.key == "tank_initial_c") {
            m.tank_initial = entry_number(doc, e);
        } else if (e.key == "ga") {
            m.ga = e.value;
        } else if (e.key == "chiller") {
            r.chiller_names.push_back(e.value);
        } else {
            entry_error(doc, e, "unknown field");
        }
    }
    const std::size_t n = r.chiller_names.size();

    const std::string src = fmt::format("{}/hourly.csv", source);
    std::optional<Table> table;
    for (const auto& [number, raw] : lines_of(hourly)) {
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto cells = split_csv(line);
        if (!table) {
            table.emplace(src, cells);
            continue;
        }
        if (cells.size() != table->width()) {
            throw Error(ErrorCode::Parse,
                        fmt::format("{}:{}: expected {} fields, found {}", src, number, table->width(), cells.size()));
        }
        auto num = [&](const std::string& col) { return table->number(cells, col, number); };
        auto flag = [&](const std::string& col) { return table->text(cells, col) == "1"; };
        HourRecord h;
        h.hour = static_cast<std::size_t>(num("hour"));
        h.time = parse_timestamp(table->text(cells, "timestamp"));
        h.period = parse_period(table->text(cells, "period"));
        h.price = num("price_eur_kwh");
        h.q_load_forecast = num("q_forecast_w");
        h.t_env = num("t_env_c");
        h.within_tolerance = flag("within_tolerance");
        h.fallback = flag("fallback");
        h.generations = static_cast<int>(num("generations"));
        h.planned_fitness = num("planned_fitness");
        h.energy_kwh = num("energy_kwh");
        h.cost_eur = num("cost_eur");
        PeriodOutcome& o = h.outcome;
        o.q_load = num("q_load_w");
        o.q_chillers = num("q_chillers_w");
        o.q_tes = num("q_tes_w");
        o.q_delivered = num("q_delivered_w");
        o.unmet = num("unmet_w");
        o.t_mix = num("t_mix_c");
        o.t_load_supply = num("t_load_supply_c");
        o.t_load_return = num("t_load_return_c");
        o.t_chiller_return = num("t_chiller_return_c");
        o.t_tank_start = num("t_tank_start_c");
        o.t_tank = num("t_tank_c");
        o.bypass_flow = num("bypass_kg_s");
        o.loop_iterations = static_cast<int>(num("loop_iterations"));
        PeriodDecision& d = h.decision;
        d.m_dot_load = num("m_load_kg_s");
        d.m_dot_tes = num("m_tes_kg_s");
        d.tes_on = flag("tes_on");
        d.mode = flag("tes_discharging") ? TesMode::Discharging : TesMode::Charging;
        o.m_dot_load = d.m_dot_load;
        o.m_dot_tes = d.tes_on ? d.m_dot_tes : 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const bool on = flag(fmt::format("on_{}", i));
            d.on.push_back(on);
            o.on.push_back(on);
            d.m_dot.push_back(num(fmt::format("m_dot_{}", i)));
            d.t_out_ref.push_back(num(fmt::format("t_ref_{}", i)));
            o.t_out.push_back(num(fmt::format("t_out_{}", i)));
            o.delta_t.push_back(num(fmt::format("delta_t_{}", i)));
            o.q_chiller.push_back(num(fmt::format("q_{}_w", i)));
            o.plr.push_back(num(fmt::format("plr_{}", i)));
            o.cop.push_back(num(fmt::format("cop_{}", i)));
            o.p_electric.push_back(num(fmt::format("p_{}_w", i)));
            o.saturated.push_back(flag(fmt::format("saturated_{}", i)));
        }
        r.hours.push_back(std::move(h));
    }
    if (!table) {
        throw Error(ErrorCode::Parse, fmt::format("{}: missing header row", src));
    }
    r.recompute_totals();
    return r;
}

void write_report(const SimulationReport& report, const std::string& directory)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) {
        throw Error(ErrorCode::Io, fmt::format("cannot create '{}': {}", directory, ec.message()));
    }
    const std::filesystem::path dir(directory);
    write_text_file((dir / "run.txt").string(), format_metadata(report));
    write_text_file((dir / "hourly.csv").string(), format_hourly_csv(report));
    write_text_file((dir / "plotdata.csv").string(), format_plotdata_csv(report));
}

SimulationReport read_report(const std::string& directory)
{
    const std::filesystem::path dir(directory);
    return parse_report(read_text_file((dir / "run.txt").string()), read_text_file((dir / "hourly.csv").string()),
                        directory);
}

std::vector<TariffSummary> summarize(const SimulationReport& report, const std::vector<TariffSchedule>& tariffs)
{
    std::vector<TariffSummary> out;
    for (const TariffSchedule& tariff : tariffs) {
        SimulationReport priced;
        priced.meta = report.meta;
        priced.chiller_names = report.chiller_names;
        priced.hours.reserve(report.hours.size());
        for (const HourRecord& h : report.hours) {
            HourRecord copy;
            copy.outcome.p_electric = h.outcome.p_electric;
            copy.price = tariff.price(h.period);
            priced.hours.push_back(std::move(copy));
        }
        priced.recompute_totals();
        out.push_back({tariff.name, priced.chillers, priced.energy_mwh, priced.cost_keur});
    }
    return out;
}

std::string format_summary_csv(const std::vector<TariffSummary>& summary)
{
    std::string out = "tariff,chiller,energy_mwh,cost_keur\n";
    for (const auto& s : summary) {
        for (const auto& c : s.chillers) {
            out += fmt::format("{},{},{},{}\n", s.tariff, c.name, c.energy_mwh, c.cost_keur);
        }
        out += fmt::format("{},TOTAL,{},{}\n", s.tariff, s.energy_mwh, s.cost_keur);
    }
    return out;
}

ComparisonRow compare_totals(std::string_view tariff, double cost_ener, double cost_econ, double energy_ener,
                             double energy_econ)
{
    if (!(cost_ener > 0.0) || !(energy_ener > 0.0)) {
        throw Error(ErrorCode::Precondition, "energetic totals must be positive to compare");
    }
    ComparisonRow row;
    row.tariff = std::string(tariff);
    row.cost_ener_keur = cost_ener;
    row.cost_econ_keur = cost_econ;
    row.energy_ener_mwh = energy_ener;
    row.energy_econ_mwh = energy_econ;
    row.cost_saving_percent = 100.0 * (cost_ener - cost_econ) / cost_ener;
    row.energy_increment_percent = 100.0 * (energy_econ - energy_ener) / energy_ener;
    return row;
}

ComparisonRow compare_reports(const SimulationReport& econ, const SimulationReport& ener, const TariffSchedule& tariff)
{
    if (econ.meta.scenario_fingerprint != ener.meta.scenario_fingerprint || econ.meta.start != ener.meta.start
        || econ.hours.size() != ener.hours.size()) {
        throw Error(ErrorCode::ScenarioMismatch,
                    fmt::format("reports cover different scenarios ({} from {}, {} h vs {} from {}, {} h)",
                                econ.meta.scenario_fingerprint, econ.meta.start, econ.hours.size(),
                                ener.meta.scenario_fingerprint, ener.meta.start, ener.hours.size()));
    }
    for (std::size_t i = 0; i < econ.hours.size(); ++i) {
        if (econ.hours[i].period != ener.hours[i].period) {
            throw Error(ErrorCode::ScenarioMismatch, fmt::format("hour {}: reports use different tariff periods", i));
        }
    }
    const auto a = summarize(econ, {tariff}).front();
    const auto b = summarize(ener, {tariff}).front();
    return compare_totals(tariff.name, b.cost_keur, a.cost_keur, b.energy_mwh, a.energy_mwh);
}

std::string format_comparison_csv(const std::vector<ComparisonRow>& rows)
{
    std::string out = "tariff,cost_energetic_keur,cost_economic_keur,energy_energetic_mwh,energy_economic_mwh,"
                      "cost_saving_percent,energy_increment_percent\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.tariff, r.cost_ener_keur, r.cost_econ_keur, r.energy_ener_mwh,
                           r.energy_econ_mwh, r.cost_saving_percent, r.energy_increment_percent);
    }
    return out;
}

}  // namespace coldplant
