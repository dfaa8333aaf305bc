#pragma once

#include "coldplant/plant_model.hpp"
#include "coldplant/tariff.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coldplant {

inline constexpr std::string_view kScenarioSchema = "coldplant-scenario v1";
inline constexpr std::string_view kReportSchema = "coldplant-report v1";

/// Hourly real and forecast tracks of cooling demand and ambient temperature.
struct Scenario {
    std::string name;
    Timestamp start{};
    std::size_t hours = 0;    // simulated hours; the tracks extend `horizon` periods further
    std::size_t horizon = 24;
    std::vector<double> q_load_real;      // W
    std::vector<double> q_load_forecast;  // W
    std::vector<double> t_env_real;       // degC
    std::vector<double> t_env_forecast;   // degC
    std::string season;

    Timestamp time_at(std::size_t hour) const { return start + std::chrono::hours(hour); }
    void validate() const;
    std::uint64_t fingerprint() const;
};

Scenario load_scenario(std::string_view text, std::size_t horizon = 24, std::string_view source = "<scenario>");
std::string format_scenario(const Scenario& s);

struct SynthOptions {
    std::string profile = "high";  // high | medium | low
    std::size_t hours = 168;
    std::size_t horizon = 24;
    std::uint64_t seed = 1;
    double demand_noise = 0.05;  // relative half-width of forecast noise
    double temperature_noise = 1.0;
};

Scenario synth_scenario(const SynthOptions& opt);
Timestamp synth_start(std::string_view profile);

/// One simulated hour.
struct HourRecord {
    std::size_t hour = 0;
    Timestamp time{};
    Period period{};
    double price = 0.0;  // EUR/kWh
    double q_load_forecast = 0.0;
    double t_env = 0.0;
    PeriodDecision decision;  // applied after flow limiting
    PeriodOutcome outcome;
    double energy_kwh = 0.0;
    double cost_eur = 0.0;
    bool within_tolerance = true;  // |unmet| <= tolerance * q_load
    bool fallback = false;         // optimizer plan rejected by the plant; safe decision applied
    int generations = 0;
    double planned_fitness = 0.0;
};

struct ChillerTotals {
    std::string name;
    double energy_mwh = 0.0;
    double cost_keur = 0.0;
};

struct ReportMetadata {
    std::string schema = std::string(kReportSchema);
    std::string objective;
    std::string tariff;
    std::string season;
    std::string scenario;
    std::string scenario_fingerprint;
    std::string start;
    std::uint64_t seed = 0;
    std::string profile;
    std::size_t horizon = 24;
    std::size_t hours = 0;
    double dt = 3600.0;  // s
    double tank_volume = 0.0;
    double tank_initial = 0.0;
    std::string ga;
};

struct SimulationReport {
    ReportMetadata meta;
    std::vector<std::string> chiller_names;
    std::vector<HourRecord> hours;
    std::vector<ChillerTotals> chillers;
    double energy_mwh = 0.0;
    double cost_keur = 0.0;

    void recompute_totals();
};

void write_report(const SimulationReport& report, const std::string& directory);
SimulationReport read_report(const std::string& directory);

std::string format_hourly_csv(const SimulationReport& report);
std::string format_plotdata_csv(const SimulationReport& report);
std::string format_metadata(const SimulationReport& report);
SimulationReport parse_report(std::string_view metadata, std::string_view hourly, std::string_view source);

struct TariffSummary {
    std::string tariff;
    std::vector<ChillerTotals> chillers;
    double energy_mwh = 0.0;
    double cost_keur = 0.0;
};

/// Re-prices the logged hourly powers under each tariff, using the period logged for each hour.
std::vector<TariffSummary> summarize(const SimulationReport& report, const std::vector<TariffSchedule>& tariffs);
std::string format_summary_csv(const std::vector<TariffSummary>& summary);

struct ComparisonRow {
    std::string tariff;
    double cost_ener_keur = 0.0;
    double cost_econ_keur = 0.0;
    double energy_ener_mwh = 0.0;
    double energy_econ_mwh = 0.0;
    double cost_saving_percent = 0.0;
    double energy_increment_percent = 0.0;
};

/// 100 (cost_ener - cost_econ) / cost_ener and 100 (E_econ - E_ener) / E_ener.
ComparisonRow compare_totals(std::string_view tariff, double cost_ener, double cost_econ, double energy_ener,
                             double energy_econ);

/// Compares under one tariff by re-pricing both logs; throws ScenarioMismatch when
/// the reports were produced on different scenarios.
ComparisonRow compare_reports(const SimulationReport& econ, const SimulationReport& ener, const TariffSchedule& tariff);
std::string format_comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace coldplant
