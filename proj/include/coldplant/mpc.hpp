#pragma once

#include "coldplant/decision.hpp"
#include "coldplant/ga.hpp"
#include "coldplant/plant_model.hpp"
#include "coldplant/scenario_io.hpp"
#include "coldplant/tariff.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coldplant {

enum class ObjectiveKind { Economic, Energetic };

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective(std::string_view text);

struct SoftLimits {
    double t_load_supply_max = 15.0;  // degC
    double t_tank_max = 15.0;         // degC
    double delta_t_min = 3.3;         // K, evaporator inlet minus outlet
    double delta_t_max = 10.0;
};

/// Penalty weights, in kWh per squared violation unit. Economic runs scale
/// them by the horizon's mean price so both objectives rank alike.
struct PenaltyWeights {
    double chiller_inversion = 100.0;  // per K^2, outlet above inlet
    double load_supply = 1e4;          // per K^2
    double tank = 1e4;                 // per K^2
    double delta_t = 100.0;            // per K^2
    double demand = 1e6;               // per squared relative mismatch
    double mass_balance = 100.0;       // per (kg/s)^2 of flow the headers cannot carry
};

struct ConstraintSet {
    DecisionBounds bounds;
    double demand_tolerance = 0.01;  // relative, per period
    double demand_floor = 50e3;      // W, denominator floor of the relative mismatch
    // The planner aims this far below the load-supply and tank limits, so
    // forecast error does not push the real plant over them.
    double temperature_margin = 0.3;  // K
    SoftLimits soft;
    PenaltyWeights weights;

    void validate() const;
};

ConstraintSet default_constraints(const PlantConfig& plant);

struct HorizonForecast {
    std::vector<double> q_load;  // W
    std::vector<double> t_env;   // degC
    std::vector<double> prices;  // EUR/kWh

    std::size_t size() const { return q_load.size(); }
    void validate() const;
};

/// Per-period chiller electric powers in W; each period is one step of `hours` length.
double economic_cost(std::span<const std::vector<double>> powers, std::span<const double> prices, double hours = 1.0);
double energetic_cost(std::span<const std::vector<double>> powers, double hours = 1.0);

struct PeriodViolations {
    PerChiller<double> chiller_inversion;  // K the outlet sits above the return
    double load_supply = 0.0;              // K above the supply limit
    double tank = 0.0;                     // K above the tank limit
    PerChiller<double> delta_t;            // K outside the allowed chiller delta-T
};

std::vector<PeriodViolations> constraint_violations(std::span<const PeriodOutcome> trajectory, const ConstraintSet& cs);

/// j + sum mu_i h_i^2.
double augmented_cost(double j, std::span<const double> violations, std::span<const double> weights);

/// Soft-constraint penalty of one trajectory, in kWh-equivalents.
double soft_penalty(std::span<const PeriodViolations> v, const PenaltyWeights& w);

struct CandidateEvaluation {
    double fitness = 0.0;
    double base_cost = 0.0;  // EUR or kWh, depending on the objective
    double energy_kwh = 0.0;
    double cost_eur = 0.0;
    double penalty = 0.0;  // in objective units
    double worst_mismatch = 0.0;
    bool plant_error = false;
    std::vector<PeriodOutcome> trajectory;
};

inline constexpr double kSentinelFitness = 1e30;

struct EvaluationContext {
    const PlantConfig* plant = nullptr;
    const ConstraintSet* constraints = nullptr;
    ObjectiveKind objective = ObjectiveKind::Energetic;
    double dt = 3600.0;  // s
};

CandidateEvaluation evaluate_candidate(const EvaluationContext& ctx, const DecisionVector& x, const PlantState& s0,
                                       const HorizonForecast& f, bool keep_trajectory = false);

struct HorizonSolution {
    DecisionVector x;
    double fitness = 0.0;
    GaResult ga;
};

HorizonSolution solve_horizon(const EvaluationContext& ctx, const PlantState& s0, const HorizonForecast& f,
                              const GaConfig& ga, std::uint64_t seed, std::span<const Genome> warm_starts = {});

/// Storage plans (idle, price arbitrage, load levelling) followed through the
/// plant; used to seed each horizon search.
std::vector<DecisionVector> heuristic_trajectories(const PlantConfig& plant, const ConstraintSet& cs,
                                                   const HorizonForecast& f, const PlantState& s0,
                                                   double dt = 3600.0);

/// Shifts a horizon genome one period forward, duplicating the last period.
Genome shift_genome(const Genome& g, std::size_t chillers, std::size_t horizon);

struct ControllerConfig {
    ObjectiveKind objective = ObjectiveKind::Energetic;
    std::size_t horizon = 24;
    double dt = 3600.0;
    GaConfig ga = GaConfig::desk();
    std::string profile = "desk";
    double warm_start_fraction = 0.1;  // share of the population carried over from the previous hour
    double tank_initial = 10.0;        // degC
};

/// Overrides fields of `cfg` and `cs` from a [controller] / [constraints] config text.
void apply_controller_config(std::string_view text, ControllerConfig& cfg, ConstraintSet& cs,
                             std::string_view source = "<controller>");
std::string format_controller_config(const ControllerConfig& cfg, const ConstraintSet& cs);

struct RunContext {
    const PlantConfig* plant = nullptr;
    const ConstraintSet* constraints = nullptr;
    const TariffSchedule* tariff = nullptr;
    const PeriodCalendar* calendar = nullptr;
    ControllerConfig controller;
    std::uint64_t seed = 1;
    // Called after every simulated hour with its GA history (optional).
    std::function<void(const HourRecord&, const GaResult&)> on_hour;
};

SimulationReport receding_horizon_run(const Scenario& scenario, const RunContext& ctx);

HorizonForecast forecast_at(const Scenario& s, std::size_t hour, std::size_t horizon, const TariffSchedule& tariff,
                            const PeriodCalendar& cal);

}  // namespace coldplant
