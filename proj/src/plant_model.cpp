#include "coldplant/plant_model.hpp"

#include "coldplant/error.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace coldplant {

void ChillerSpec::validate() const
{
    if (!(flow_min < flow_max) || flow_min < 0.0) {
        throw Error(ErrorCode::Config, fmt::format("chiller {}: flow bounds must satisfy 0 <= min < max", name));
    }
    if (!(t_out_min < t_out_max)) {
        throw Error(ErrorCode::Config, fmt::format("chiller {}: outlet temperature bounds must satisfy min < max", name));
    }
    if (!(q_nominal > 0.0)) {
        throw Error(ErrorCode::Config, fmt::format("chiller {}: nominal capacity must be positive", name));
    }
    if (cop_grid.values().empty() || capacity_grid.values().empty()) {
        throw Error(ErrorCode::MalformedGrid, fmt::format("chiller {}: missing performance grid", name));
    }
    for (double v : cop_grid.values()) {
        if (!(v > 0.0)) {
            throw Error(ErrorCode::MalformedGrid, fmt::format("chiller {}: COP values must be positive", name));
        }
    }
    for (double v : capacity_grid.values()) {
        if (!(v > 0.0)) {
            throw Error(ErrorCode::MalformedGrid, fmt::format("chiller {}: capacities must be positive", name));
        }
    }
}

double PeriodOutcome::p_total() const
{
    double sum = 0.0;
    for (double p : p_electric) {
        sum += p;
    }
    return sum;
}

bool PeriodOutcome::any_saturated() const
{
    return std::any_of(saturated.begin(), saturated.end(), [](bool s) { return s; });
}

double chiller_cooling_power(double m_dot, double t_in, double t_out, const WaterProperties& props)
{
    return m_dot * props.cp * (t_in - t_out);
}

double chiller_capacity(const ChillerSpec& spec, double elwt, double caet)
{
    return spec.capacity_grid({elwt, caet});
}

PlrResult chiller_plr(double q, const ChillerSpec& spec, double elwt, double caet, double tolerance)
{
    const double capacity = chiller_capacity(spec, elwt, caet);
    if (!(capacity > 0.0)) {
        throw Error(ErrorCode::Precondition, fmt::format("chiller {}: non-positive capacity", spec.name));
    }
    const double raw = q / capacity;
    PlrResult r;
    r.over_capacity = raw > 1.0 + tolerance;
    r.ratio = std::clamp(raw, 0.0, 1.0);
    return r;
}

double chiller_cop(const ChillerSpec& spec, double plr, double elwt, double caet)
{
    return spec.cop_grid({plr, elwt, caet});
}

double chiller_electric_power(double q, double cop)
{
    if (!(cop > 0.0)) {
        throw Error(ErrorCode::DivisionByZeroCop, fmt::format("COP {} is not positive", cop));
    }
    return q / cop;
}

double mixed_outlet_temperature(std::span<const double> flows, std::span<const double> temps)
{
    if (flows.size() != temps.size()) {
        throw Error(ErrorCode::Precondition, "flow and temperature lists differ in length");
    }
    double m = 0.0;
    double mt = 0.0;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (flows[i] < 0.0) {
            throw Error(ErrorCode::Precondition, "negative flow");
        }
        if (flows[i] > 0.0) {
            m += flows[i];
            mt += flows[i] * temps[i];
        }
    }
    if (!(m > 0.0)) {
        throw Error(ErrorCode::AllFlowsZero, "no unit carries flow");
    }
    return mt / m;
}

namespace {

double mix2(Stream a, Stream b)
{
    return (a.m_dot * a.t + b.m_dot * b.t) / (a.m_dot + b.m_dot);
}

}  // namespace

BypassResult bypass_balance(const BypassInputs& in, double tolerance)
{
    const double mc = in.m_dot_chillers;
    const double ml = in.m_dot_load;
    const double mt = in.tes_on ? in.m_dot_tes : 0.0;
    if (!(mc > 0.0) || !(ml > 0.0) || mt < 0.0 || !std::isfinite(mc + ml + mt)) {
        throw Error(ErrorCode::MassImbalance,
                    fmt::format("flows must be positive (chillers {}, load {}, tank {})", mc, ml, mt));
    }

    BypassResult r;
    const bool discharging = in.tes_on && in.mode == TesMode::Discharging && mt > 0.0;
    const bool charging = in.tes_on && in.mode == TesMode::Charging && mt > 0.0;
    const double scale = tolerance * std::max({mc, ml, mt, 1.0});

    if (discharging) {
        double bypass = mc + mt - ml;
        double to_return_header = ml - mt;
        if (bypass < -scale || to_return_header < -scale) {
            throw Error(ErrorCode::MassImbalance,
                        fmt::format("discharge: load {} kg/s, chillers {} kg/s, tank {} kg/s", ml, mc, mt));
        }
        bypass = std::max(bypass, 0.0);
        to_return_header = std::max(to_return_header, 0.0);
        const double t_a = mix2({mc, in.t_mix}, {mt, in.t_tes});
        r.t_load_supply = t_a;
        r.t_tank_inlet = in.t_load_return;
        r.bypass_flow = bypass;
        r.t_chiller_return = (to_return_header * in.t_load_return + bypass * t_a) / (to_return_header + bypass);
        r.node_a.in = {{mc, in.t_mix}, {mt, in.t_tes}};
        r.node_a.out = {{ml, t_a}, {bypass, t_a}};
        r.node_b.in = {{to_return_header, in.t_load_return}, {bypass, t_a}};
        r.node_b.out = {{mc, r.t_chiller_return}};
        return r;
    }

    double bypass = mc - ml - (charging ? mt : 0.0);
    if (bypass < -scale) {
        throw Error(ErrorCode::MassImbalance,
                    fmt::format("{}: load {} kg/s and tank {} kg/s exceed chiller supply {} kg/s",
                                charging ? "charge" : "no storage", ml, charging ? mt : 0.0, mc));
    }
    bypass = std::max(bypass, 0.0);
    r.t_load_supply = in.t_mix;
    r.bypass_flow = bypass;
    r.node_a.in = {{mc, in.t_mix}};
    if (charging) {
        r.t_tank_inlet = in.t_mix;
        r.t_chiller_return = (ml * in.t_load_return + mt * in.t_tes + bypass * in.t_mix) / (ml + mt + bypass);
        r.node_a.out = {{ml, in.t_mix}, {mt, in.t_mix}, {bypass, in.t_mix}};
        r.node_b.in = {{ml, in.t_load_return}, {mt, in.t_tes}, {bypass, in.t_mix}};
    } else {
        r.t_tank_inlet = in.t_tes;
        r.t_chiller_return = (ml * in.t_load_return + bypass * in.t_mix) / (ml + bypass);
        r.node_a.out = {{ml, in.t_mix}, {bypass, in.t_mix}};
        r.node_b.in = {{ml, in.t_load_return}, {bypass, in.t_mix}};
    }
    r.node_b.out = {{mc, r.t_chiller_return}};
    return r;
}

TesStepResult tes_step(const TesState& state, double m_dot, double t_in, double dt,
                       const WaterProperties& props)
{
    if (m_dot < 0.0 || !(dt > 0.0)) {
        throw Error(ErrorCode::Precondition, "tes_step needs m_dot >= 0 and dt > 0");
    }
    TesStepResult r;
    r.state = state;
    if (m_dot == 0.0) {
        r.t_outlet_mean = state.temperature;
        return r;
    }
    const double mass = props.rho * state.volume;
    const double x = m_dot * dt / mass;
    const double gap = state.temperature - t_in;
    const double decay = -std::expm1(-x);  // 1 - exp(-x)
    r.state.temperature = t_in + gap * (1.0 - decay);
    // Mean outlet temperature over the step: t_in + gap * (1 - e^-x) / x.
    r.t_outlet_mean = t_in + gap * (decay / x);
    r.q_tes = mass * props.cp * gap * decay / dt;
    return r;
}

double total_chiller_flow(const PeriodDecision& d)
{
    double m = 0.0;
    for (std::size_t i = 0; i < d.m_dot.size(); ++i) {
        if (d.on[i]) {
            m += d.m_dot[i];
        }
    }
    return m;
}

FlowLimitResult limit_flows_to_mass_balance(const PeriodDecision& d)
{
    FlowLimitResult r{d, 0.0};
    const double mc = total_chiller_flow(d);
    const double ml = d.m_dot_load;
    const double mt = d.m_dot_tes;
    if (!d.tes_on || mt <= 0.0) {
        r.decision.m_dot_load = std::min(ml, mc);
    } else if (d.mode == TesMode::Discharging) {
        r.decision.m_dot_tes = std::min(mt, ml);
        r.decision.m_dot_load = std::min(ml, mc + r.decision.m_dot_tes);
    } else if (ml + mt > mc) {
        r.decision.m_dot_load = std::max(mc - mt, std::min(ml, 0.5 * mc));
        r.decision.m_dot_tes = std::min(mt, mc - r.decision.m_dot_load);
    }
    r.excess = (ml - r.decision.m_dot_load) + (mt - r.decision.m_dot_tes);
    return r;
}

StepResult plant_step(const PlantConfig& plant, const PlantState& state, const PeriodDecision& d,
                      double q_load, double t_env, double dt)
{
    const std::size_t n = plant.size();
    if (d.m_dot.size() != n || d.t_out_ref.size() != n || d.on.size() != n) {
        throw Error(ErrorCode::Precondition,
                    fmt::format("decision describes {} chillers, plant has {}", d.m_dot.size(), n));
    }
    if (std::none_of(d.on.begin(), d.on.end(), [](bool b) { return b; })) {
        throw Error(ErrorCode::Precondition, "at least one chiller must be on");
    }
    if (!(d.m_dot_load > 0.0) || !(dt > 0.0) || q_load < 0.0) {
        throw Error(ErrorCode::Precondition, "load flow and dt must be positive, demand nonnegative");
    }
    const WaterProperties& w = plant.water;

    PerChiller<double> flows;
    double m_chillers = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d.m_dot[i] < 0.0) {
            throw Error(ErrorCode::Precondition, "negative chiller flow");
        }
        flows.push_back(d.on[i] ? d.m_dot[i] : 0.0);
        m_chillers += flows.back();
    }
    const double t_mix_ref = mixed_outlet_temperature({flows.data(), flows.size()}, {d.t_out_ref.data(), d.t_out_ref.size()});
    const bool tes_active = d.tes_on && d.m_dot_tes > 0.0;
    const double m_tes = tes_active ? d.m_dot_tes : 0.0;
    const double load_rise = q_load / (d.m_dot_load * w.cp);

    BypassInputs bin;
    bin.m_dot_chillers = m_chillers;
    bin.t_mix = t_mix_ref;
    bin.m_dot_load = d.m_dot_load;
    bin.m_dot_tes = m_tes;
    bin.mode = d.mode;
    bin.tes_on = tes_active;

    // Damped fixed point on (load return temperature, tank outlet temperature).
    double t_return = t_mix_ref + load_rise;
    double t_tank_out = state.tes.temperature;
    BypassResult nodes;
    TesStepResult tes{state.tes, 0.0, state.tes.temperature};
    int iterations = 0;
    bool converged = false;
    for (int it = 1; it <= plant.loop.max_iterations; ++it) {
        iterations = it;
        bin.t_load_return = t_return;
        bin.t_tes = t_tank_out;
        nodes = bypass_balance(bin);
        const double t_return_new = nodes.t_load_supply + load_rise;
        double t_tank_out_new = state.tes.temperature;
        if (tes_active) {
            tes = tes_step(state.tes, m_tes, nodes.t_tank_inlet, dt, w);
            t_tank_out_new = tes.t_outlet_mean;
        }
        const double err = std::max(std::abs(t_return_new - t_return), std::abs(t_tank_out_new - t_tank_out));
        if (!std::isfinite(err)) {
            break;
        }
        if (err < plant.loop.tolerance) {
            t_return = t_return_new;
            t_tank_out = t_tank_out_new;
            converged = true;
            break;
        }
        t_return += plant.loop.damping * (t_return_new - t_return);
        t_tank_out += plant.loop.damping * (t_tank_out_new - t_tank_out);
    }
    if (!converged) {
        throw Error(ErrorCode::LoopDivergence,
                    fmt::format("hydraulic loop did not settle within {} iterations", plant.loop.max_iterations));
    }
    bin.t_load_return = t_return;
    bin.t_tes = t_tank_out;
    nodes = bypass_balance(bin);
    if (tes_active) {
        tes = tes_step(state.tes, m_tes, nodes.t_tank_inlet, dt, w);
    }

    StepResult result;
    PeriodOutcome& o = result.outcome;
    o.q_load = q_load;
    o.t_chiller_return = nodes.t_chiller_return;
    o.t_tank_start = state.tes.temperature;
    o.t_tank = tes.state.temperature;
    o.q_tes = tes.q_tes;
    o.m_dot_load = d.m_dot_load;
    o.m_dot_tes = m_tes;
    o.bypass_flow = nodes.bypass_flow;
    o.loop_iterations = iterations;
    o.on = d.on;

    PerChiller<double> t_out_actual;
    for (std::size_t i = 0; i < n; ++i) {
        const ChillerSpec& spec = plant.chillers[i];
        const double delta_t = nodes.t_chiller_return - d.t_out_ref[i];
        if (!d.on[i]) {
            o.q_chiller.push_back(0.0);
            o.p_electric.push_back(0.0);
            o.plr.push_back(0.0);
            o.cop.push_back(0.0);
            o.t_out.push_back(nodes.t_chiller_return);
            o.delta_t.push_back(0.0);
            o.saturated.push_back(false);
            t_out_actual.push_back(d.t_out_ref[i]);
            continue;
        }
        const double requested = chiller_cooling_power(flows[i], nodes.t_chiller_return, d.t_out_ref[i], w);
        const double capacity = chiller_capacity(spec, d.t_out_ref[i], t_env);
        const PlrResult plr = chiller_plr(requested, spec, d.t_out_ref[i], t_env, plant.capacity_tolerance);
        const double ratio = std::max(plr.ratio, plant.min_plr);
        const double q = ratio * capacity;
        const double cop = chiller_cop(spec, ratio, d.t_out_ref[i], t_env);
        o.q_chiller.push_back(q);
        o.p_electric.push_back(chiller_electric_power(q, cop));
        o.plr.push_back(ratio);
        o.cop.push_back(cop);
        o.delta_t.push_back(delta_t);
        o.saturated.push_back(plr.over_capacity);
        o.t_out.push_back(nodes.t_chiller_return - q / (flows[i] * w.cp));
        t_out_actual.push_back(o.t_out.back());
        o.q_chillers += q;
    }
    o.q_delivered = o.q_chillers - o.q_tes;
    o.unmet = q_load - o.q_delivered;

    // Clamped machines move the header temperature away from the set-point mix.
    o.t_mix = mixed_outlet_temperature({flows.data(), flows.size()}, {t_out_actual.data(), t_out_actual.size()});
    bin.t_mix = o.t_mix;
    o.t_load_supply = bypass_balance(bin).t_load_supply;
    o.t_load_return = o.t_load_supply + load_rise;

    result.state = state;
    result.state.tes = tes.state;
    result.state.chiller_on = d.on;
    result.state.time_index = state.time_index + 1;
    return result;
}

}  // namespace coldplant
