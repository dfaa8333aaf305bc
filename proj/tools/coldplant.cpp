#include "coldplant/chiller_data.hpp"
#include "coldplant/error.hpp"
#include "coldplant/mpc.hpp"
#include "coldplant/scenario_io.hpp"
#include "coldplant/tariff.hpp"
#include "coldplant/text_config.hpp"
#include "coldplant/validation.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace coldplant;

namespace {

constexpr int kMaxExitFailures = 100;

struct RunOptions {
    std::string scenario_path;
    std::string synthetic;
    std::string objective = "energetic";
    std::string tariff = "A";
    std::string season;
    std::size_t hours = 0;
    std::uint64_t seed = 1;
    std::string profile = "desk";
    bool full_scale = false;
    int workers = 0;
    std::string out;
    std::string config_path;
    std::string chillers_path;
    bool trace_ga = false;
};

struct Experiment {
    PlantConfig plant;
    ConstraintSet constraints;
    ControllerConfig controller;
    TariffConfig tariffs;
    TariffSchedule tariff;
    Scenario scenario;
};

std::string output_directory(const std::string& flag)
{
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("COLDPLANT_OUT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "coldplant-out";
}

int default_workers()
{
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

// "A", "B", "C" pick an embedded tariff; anything else is a tariff file whose first tariff is used.
std::pair<TariffConfig, TariffSchedule> resolve_tariff(const std::string& value)
{
    const TariffConfig& builtin = default_tariff_config();
    for (const auto& t : builtin.tariffs) {
        if (t.name == value) {
            return {builtin, t};
        }
    }
    if (!fs::exists(value)) {
        throw Error(ErrorCode::Config,
                    fmt::format("--tariff '{}' is neither A, B, C nor an existing tariff file", value));
    }
    TariffConfig cfg = load_tariff_config(read_text_file(value), value);
    if (cfg.tariffs.empty()) {
        throw Error(ErrorCode::Config, fmt::format("tariff file '{}' defines no tariff", value));
    }
    TariffSchedule first = cfg.tariffs.front();
    return {std::move(cfg), std::move(first)};
}

Experiment prepare(const RunOptions& o)
{
    Experiment x;
    x.plant = default_plant();
    if (!o.chillers_path.empty()) {
        x.plant.chillers = parse_chiller_config(read_text_file(o.chillers_path), o.chillers_path);
    }
    x.constraints = default_constraints(x.plant);
    x.controller.objective = parse_objective(o.objective);
    if (!o.config_path.empty()) {
        apply_controller_config(read_text_file(o.config_path), x.controller, x.constraints, o.config_path);
    }
    if (o.full_scale || o.profile == "full" || o.profile == "paper-scale") {
        x.controller.ga = GaConfig::full_scale();
        x.controller.profile = "full";
    } else if (o.profile != "desk") {
        throw Error(ErrorCode::Config, fmt::format("--profile must be desk or full, not '{}'", o.profile));
    }
    x.controller.ga.workers = o.workers > 0 ? o.workers : default_workers();

    std::tie(x.tariffs, x.tariff) = resolve_tariff(o.tariff);

    if (o.scenario_path.empty() == o.synthetic.empty()) {
        throw Error(ErrorCode::Config, "give exactly one of --scenario FILE or --synthetic high|medium|low");
    }
    if (!o.synthetic.empty()) {
        SynthOptions so;
        so.profile = o.synthetic;
        so.seed = o.seed;
        so.horizon = x.controller.horizon;
        if (o.hours > 0) {
            so.hours = o.hours;
        }
        x.scenario = synth_scenario(so);
    } else {
        x.scenario = load_scenario(read_text_file(o.scenario_path), x.controller.horizon, o.scenario_path);
        if (o.hours > 0) {
            if (o.hours > x.scenario.hours) {
                throw Error(ErrorCode::Config, fmt::format("--hours {} exceeds the {} hours in '{}'", o.hours,
                                                           x.scenario.hours, o.scenario_path));
            }
            x.scenario.hours = o.hours;
            const std::size_t rows = o.hours + x.scenario.horizon;
            x.scenario.q_load_real.resize(rows);
            x.scenario.q_load_forecast.resize(rows);
            x.scenario.t_env_real.resize(rows);
            x.scenario.t_env_forecast.resize(rows);
        }
    }

    const std::string calendar_season = x.tariffs.calendar.season_at(x.scenario.start);
    const std::string season = o.season.empty() ? calendar_season : o.season;
    if (!x.tariffs.calendar.active_periods.contains(season)) {
        throw Error(ErrorCode::Config, fmt::format("unknown season '{}'", season));
    }
    if (x.tariff.name == "A" && !x.tariffs.calendar.period_active(season, Period{1})) {
        throw Error(ErrorCode::Config, fmt::format("tariff A only differs from B on P1, which is not active in "
                                                   "season '{}'; use tariff B or C",
                                                   season));
    }
    if (season != calendar_season) {
        throw Error(ErrorCode::Config, fmt::format("--season {} does not match the scenario, which starts in "
                                                   "season {} ({})",
                                                   season, calendar_season, format_timestamp(x.scenario.start)));
    }
    x.scenario.season = season;
    return x;
}

SimulationReport run(const Experiment& x, std::uint64_t seed, std::string* ga_trace, bool progress)
{
    RunContext ctx;
    ctx.plant = &x.plant;
    ctx.constraints = &x.constraints;
    ctx.tariff = &x.tariff;
    ctx.calendar = &x.tariffs.calendar;
    ctx.controller = x.controller;
    ctx.seed = seed;
    const std::size_t total = x.scenario.hours;
    ctx.on_hour = [&](const HourRecord& h, const GaResult& ga) {
        if (ga_trace != nullptr) {
            if (ga_trace->empty()) {
                *ga_trace = "hour,generation,best,mean,worst,evaluations\n";
            }
            for (const auto& s : ga.history) {
                *ga_trace += fmt::format("{},{},{},{},{},{}\n", h.hour, s.generation, s.best, s.mean, s.worst,
                                         s.evaluations);
            }
        }
        if (progress && ((h.hour + 1) % 24 == 0 || h.hour + 1 == total)) {
            fmt::print(stderr, "  {} {}: hour {}/{}\n", to_string(x.controller.objective), x.tariff.name,
                       h.hour + 1, total);
        }
    };
    return receding_horizon_run(x.scenario, ctx);
}

void write_run(const SimulationReport& report, const Experiment& x, const std::string& dir, const std::string& trace)
{
    write_report(report, dir);
    write_text_file((fs::path(dir) / "summary.csv").string(), format_summary_csv(summarize(report, x.tariffs.tariffs)));
    write_text_file((fs::path(dir) / "controller.txt").string(),
                    format_controller_config(x.controller, x.constraints));
    if (!trace.empty()) {
        write_text_file((fs::path(dir) / "ga_trace.csv").string(), trace);
    }
}

void print_totals(const SimulationReport& r, const std::string& dir)
{
    std::size_t within = 0;
    for (const auto& h : r.hours) {
        within += h.within_tolerance ? 1 : 0;
    }
    fmt::print("{} MPC, tariff {}, {} h: {:.3f} MWh, {:.3f} kEUR, demand met in {}/{} hours -> {}\n",
               r.meta.objective, r.meta.tariff, r.hours.size(), r.energy_mwh, r.cost_keur, within, r.hours.size(),
               dir);
}

void add_run_flags(CLI::App& cmd, RunOptions& o, bool with_objective)
{
    cmd.add_option("--scenario", o.scenario_path, "Scenario CSV file");
    cmd.add_option("--synthetic", o.synthetic, "Synthetic scenario template")
        ->check(CLI::IsMember({"high", "medium", "low"}));
    if (with_objective) {
        cmd.add_option("--objective", o.objective, "Controller objective")
            ->check(CLI::IsMember({"energetic", "economic"}))
            ->capture_default_str();
        cmd.add_option("--tariff", o.tariff, "Tariff A, B, C or a tariff config file (its first tariff is used)")
            ->capture_default_str();
    }
    cmd.add_option("--season", o.season, "Electric season the run is checked against (default: from the calendar)");
    cmd.add_option("--hours", o.hours, "Simulated hours (synthetic length, or truncation of a scenario file)");
    cmd.add_option("--seed", o.seed, "Seed for the GA and synthetic data")->capture_default_str();
    cmd.add_option("--profile", o.profile, "GA profile: desk or full")->capture_default_str();
    cmd.add_flag("--paper-scale", o.full_scale, "Same as --profile full");
    cmd.add_option("--workers", o.workers, "Fitness evaluation threads (default: hardware threads)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--out", o.out, "Output directory (env COLDPLANT_OUT, default coldplant-out)");
    cmd.add_option("--config", o.config_path, "Controller config file ([controller], [ga], [constraints])");
    cmd.add_option("--chillers", o.chillers_path, "Chiller curve config file");
    cmd.add_flag("--trace-ga", o.trace_ga, "Write the per-generation GA history to ga_trace.csv");
}

int cmd_simulate(const RunOptions& o)
{
    const Experiment x = prepare(o);
    const std::string dir = output_directory(o.out);
    std::string trace;
    const SimulationReport report = run(x, o.seed, o.trace_ga ? &trace : nullptr, true);
    write_run(report, x, dir, trace);
    print_totals(report, dir);
    return 0;
}

struct CompareOptions {
    RunOptions run;
    std::vector<std::string> econ_dirs;
    std::string ener_dir;
    std::vector<std::string> tariffs{"A", "B", "C"};
};

int cmd_compare(const CompareOptions& c)
{
    const std::string dir = output_directory(c.run.out);
    std::vector<ComparisonRow> rows;
    const bool from_reports = !c.econ_dirs.empty() || !c.ener_dir.empty();
    if (from_reports) {
        if (c.econ_dirs.empty() || c.ener_dir.empty()) {
            throw Error(ErrorCode::Config, "report mode needs --energetic DIR and at least one --economic DIR");
        }
        const SimulationReport ener = read_report(c.ener_dir);
        const TariffConfig& builtin = default_tariff_config();
        for (const auto& d : c.econ_dirs) {
            const SimulationReport econ = read_report(d);
            rows.push_back(compare_reports(econ, ener, builtin.find(econ.meta.tariff)));
        }
    } else {
        RunOptions o = c.run;
        o.objective = "energetic";
        o.tariff = c.tariffs.front();
        Experiment ener_x = prepare(o);
        std::string trace;
        const SimulationReport ener = run(ener_x, o.seed, o.trace_ga ? &trace : nullptr, true);
        const std::string ener_dir = (fs::path(dir) / "energetic").string();
        write_run(ener, ener_x, ener_dir, trace);
        print_totals(ener, ener_dir);
        for (const auto& t : c.tariffs) {
            o.objective = "economic";
            o.tariff = t;
            const Experiment econ_x = prepare(o);
            if (econ_x.scenario.fingerprint() != ener_x.scenario.fingerprint()) {
                throw Error(ErrorCode::ScenarioMismatch, "run-both mode produced two different scenarios");
            }
            trace.clear();
            const SimulationReport econ = run(econ_x, o.seed, o.trace_ga ? &trace : nullptr, true);
            const std::string econ_dir = (fs::path(dir) / ("economic-" + econ_x.tariff.name)).string();
            write_run(econ, econ_x, econ_dir, trace);
            print_totals(econ, econ_dir);
            rows.push_back(compare_reports(econ, ener, econ_x.tariff));
        }
    }
    const std::string csv = format_comparison_csv(rows);
    write_text_file((fs::path(dir) / "comparison.csv").string(), csv);
    fmt::print("{:<8}{:>14}{:>14}{:>14}{:>14}{:>12}{:>12}\n", "tariff", "cost ener", "cost econ", "E ener", "E econ",
               "saving %", "incr. %");
    for (const auto& r : rows) {
        fmt::print("{:<8}{:>14.3f}{:>14.3f}{:>14.3f}{:>14.3f}{:>12.2f}{:>12.2f}\n", r.tariff, r.cost_ener_keur,
                   r.cost_econ_keur, r.energy_ener_mwh, r.energy_econ_mwh, r.cost_saving_percent,
                   r.energy_increment_percent);
    }
    return 0;
}

int cmd_validate(const std::string& chillers_path, std::uint64_t seed, int cases)
{
    std::vector<ChillerSpec> chillers = default_chillers();
    if (!chillers_path.empty()) {
        chillers = parse_chiller_config(read_text_file(chillers_path), chillers_path);
    }
    int failures = 0;
    for (const auto& r : run_model_checks(chillers, seed, cases)) {
        fmt::print("{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        failures += r.passed ? 0 : 1;
    }
    fmt::print("{} check(s) failed\n", failures);
    return std::min(failures, kMaxExitFailures);
}

int cmd_synth(const SynthOptions& so, const std::string& out)
{
    const std::string text = format_scenario(synth_scenario(so));
    if (out.empty() || out == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_text_file(out, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Model predictive control of a chiller plant with thermal storage"};
    app.require_subcommand(1);

    RunOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run one closed-loop controller over a scenario");
    add_run_flags(*simulate, sim, true);

    CompareOptions cmp;
    auto* compare = app.add_subcommand(
        "compare", "Compare economic and energetic MPC, from existing reports or by running both on one scenario");
    add_run_flags(*compare, cmp.run, false);
    compare->add_option("--economic", cmp.econ_dirs, "Economic report directory (repeat for several tariffs)");
    compare->add_option("--energetic", cmp.ener_dir, "Energetic report directory");
    compare->add_option("--tariffs", cmp.tariffs, "Tariffs for run-both mode")->delimiter(',')->capture_default_str();

    std::string val_chillers;
    std::uint64_t val_seed = 1;
    int val_cases = 10000;
    auto* validate = app.add_subcommand(
        "validate-model", fmt::format("Run the built-in model checks; exit code = failed checks (max {})",
                                      kMaxExitFailures));
    validate->add_option("--chillers", val_chillers, "Chiller curve config file to check");
    validate->add_option("--seed", val_seed, "Seed of the randomized checks")->capture_default_str();
    validate->add_option("--cases", val_cases, "Randomized cases per conservation check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    SynthOptions syn;
    std::string syn_out;
    auto* synth = app.add_subcommand("synth", "Emit a synthetic scenario file");
    synth->add_option("--template", syn.profile, "Season template")
        ->check(CLI::IsMember({"high", "medium", "low"}))
        ->capture_default_str();
    synth->add_option("--hours", syn.hours, "Simulated hours")->capture_default_str();
    synth->add_option("--horizon", syn.horizon, "Extra forecast rows appended after the last hour")
        ->capture_default_str();
    synth->add_option("--seed", syn.seed, "Seed")->capture_default_str();
    synth->add_option("--demand-noise", syn.demand_noise, "Relative half-width of demand forecast noise")
        ->capture_default_str();
    synth->add_option("--temperature-noise", syn.temperature_noise, "Half-width of temperature forecast noise, K")
        ->capture_default_str();
    synth->add_option("--out", syn_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(sim);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp);
        }
        if (validate->parsed()) {
            return cmd_validate(val_chillers, val_seed, val_cases);
        }
        return cmd_synth(syn, syn_out);
    } catch (const Error& e) {
        fmt::print(stderr, "coldplant: {}\n", e.what());
        return e.code() == ErrorCode::Config ? 2 : 1;
    }
}
