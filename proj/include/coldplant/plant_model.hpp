#pragma once

#include "coldplant/lookup_table.hpp"

#include <boost/container/static_vector.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace coldplant {

inline constexpr std::size_t kMaxChillers = 8;

template <class T>
using PerChiller = boost::container::static_vector<T, kMaxChillers>;

struct WaterProperties {
    double cp = 4186.0;   // J/(kg K)
    double rho = 1000.0;  // kg/m^3
};

/// One air-cooled chiller: performance maps plus the operating envelope the
/// optimizer is allowed to command.
struct ChillerSpec {
    int id = 0;
    std::string name;
    double q_nominal = 0.0;  // W
    // COP over (PLR, ELWT degC, CAET degC).
    MultilinearTable<3> cop_grid;
    // Full-load cooling capacity W over (ELWT degC, CAET degC).
    MultilinearTable<2> capacity_grid;
    double flow_min = 0.0;  // kg/s
    double flow_max = 0.0;
    double t_out_min = 0.0;  // degC
    double t_out_max = 0.0;

    /// Throws Error(MalformedGrid) or Error(Config) when an invariant fails.
    void validate() const;
};

struct LoopSolverOptions {
    double damping = 0.5;
    double tolerance = 1e-4;  // degC
    int max_iterations = 100;
};

struct PlantConfig {
    std::vector<ChillerSpec> chillers;
    WaterProperties water;
    double tank_volume = 1000.0;  // m^3
    double min_plr = 0.25;
    double capacity_tolerance = 1e-6;  // relative, before a chiller counts as saturated
    LoopSolverOptions loop;

    std::size_t size() const { return chillers.size(); }
};

struct TesState {
    double temperature = 10.0;  // degC
    double volume = 1000.0;     // m^3
};

struct PlantState {
    TesState tes;
    PerChiller<bool> chiller_on;
    long time_index = 0;
};

enum class TesMode { Charging, Discharging };

struct PeriodDecision {
    PerChiller<double> m_dot;      // kg/s
    PerChiller<double> t_out_ref;  // degC
    PerChiller<bool> on;
    double m_dot_load = 0.0;
    double m_dot_tes = 0.0;
    bool tes_on = false;
    TesMode mode = TesMode::Charging;

    bool operator==(const PeriodDecision&) const = default;
};

struct PeriodOutcome {
    double q_load = 0.0;       // W, demand the step was driven with
    double q_chillers = 0.0;   // W
    double q_tes = 0.0;        // W, positive while charging
    double q_delivered = 0.0;  // W, q_chillers - q_tes
    double unmet = 0.0;        // W, q_load - q_delivered (negative = surplus)

    PerChiller<bool> on;
    PerChiller<double> q_chiller;
    PerChiller<double> p_electric;
    PerChiller<double> plr;
    PerChiller<double> cop;
    PerChiller<double> t_out;        // actual evaporator outlet
    PerChiller<double> delta_t;      // inlet minus outlet set-point
    PerChiller<bool> saturated;

    double t_mix = 0.0;             // T_M at the chiller header
    double t_load_supply = 0.0;     // load inlet
    double t_load_return = 0.0;
    double t_chiller_return = 0.0;  // common evaporator inlet
    double t_tank_start = 0.0;
    double t_tank = 0.0;            // end of period

    double m_dot_load = 0.0;  // flows actually applied
    double m_dot_tes = 0.0;
    double bypass_flow = 0.0;  // kg/s from supply to return header
    int loop_iterations = 0;

    double p_total() const;
    bool any_saturated() const;
};

struct PlrResult {
    double ratio = 0.0;
    bool over_capacity = false;
};

double chiller_cooling_power(double m_dot, double t_in, double t_out, const WaterProperties& props);

/// Load over full-load capacity at the operating point, clamped to [0, 1];
/// over_capacity flags a request the machine cannot meet.
PlrResult chiller_plr(double q, const ChillerSpec& spec, double elwt, double caet,
                      double tolerance = 1e-6);

double chiller_capacity(const ChillerSpec& spec, double elwt, double caet);
double chiller_cop(const ChillerSpec& spec, double plr, double elwt, double caet);
double chiller_electric_power(double q, double cop);

/// Flow-weighted mean; zero-flow entries are ignored.
double mixed_outlet_temperature(std::span<const double> flows, std::span<const double> temps);

struct Stream {
    double m_dot = 0.0;
    double t = 0.0;
};

struct NodeBalance {
    boost::container::static_vector<Stream, 4> in;
    boost::container::static_vector<Stream, 4> out;
};

struct BypassInputs {
    double m_dot_chillers = 0.0;
    double t_mix = 0.0;
    double m_dot_load = 0.0;
    double t_load_return = 0.0;
    double m_dot_tes = 0.0;
    double t_tes = 0.0;  // water leaving the tank
    TesMode mode = TesMode::Charging;
    bool tes_on = false;
};

struct BypassResult {
    double t_load_supply = 0.0;
    double t_chiller_return = 0.0;
    double t_tank_inlet = 0.0;
    double bypass_flow = 0.0;  // A -> B, never negative
    NodeBalance node_a;        // supply header
    NodeBalance node_b;        // return header
};

/// Mass and energy balances at the two bypass headers for the selected
/// valve configuration. Discharging feeds tank water to the load supply and
/// returns part of the load outlet to the tank; charging diverts chilled
/// water into the tank and sends tank water to the chiller return.
/// The bypass only carries surplus supply water back to the return header.
BypassResult bypass_balance(const BypassInputs& in, double tolerance = 1e-6);

struct TesStepResult {
    TesState state;
    double q_tes = 0.0;          // W, mean over the step, positive = charging
    double t_outlet_mean = 0.0;  // degC, mean temperature of water leaving the tank
};

/// Exact update of a well-mixed, incompressible, adiabatic tank under a
/// constant inlet stream.
TesStepResult tes_step(const TesState& state, double m_dot, double t_in, double dt,
                       const WaterProperties& props);

struct StepResult {
    PlantState state;
    PeriodOutcome outcome;
};

/// Advances the whole plant one period under ideal low-level control.
StepResult plant_step(const PlantConfig& plant, const PlantState& state, const PeriodDecision& d,
                      double q_load, double t_env, double dt);

struct FlowLimitResult {
    PeriodDecision decision;
    double excess = 0.0;  // kg/s removed to close the balance
};

/// Reduces load and tank flows until bypass_balance can close: the load and
/// a charging tank can draw at most what the chillers supply, a discharging
/// tank at most the load outlet flow.
FlowLimitResult limit_flows_to_mass_balance(const PeriodDecision& d);

double total_chiller_flow(const PeriodDecision& d);

}  // namespace coldplant
