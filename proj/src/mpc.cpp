#include "coldplant/mpc.hpp"

#include "coldplant/error.hpp"
#include "coldplant/text_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

namespace coldplant {

std::string_view to_string(ObjectiveKind kind)
{
    return kind == ObjectiveKind::Economic ? "economic" : "energetic";
}

ObjectiveKind parse_objective(std::string_view text)
{
    if (text == "economic" || text == "econ") {
        return ObjectiveKind::Economic;
    }
    if (text == "energetic" || text == "ener") {
        return ObjectiveKind::Energetic;
    }
    throw Error(ErrorCode::Config, fmt::format("unknown objective '{}' (economic|energetic)", text));
}

void ConstraintSet::validate() const
{
    bounds.validate();
    const double mus[] = {weights.chiller_inversion, weights.load_supply, weights.tank,
                          weights.delta_t,           weights.demand,      weights.mass_balance};
    for (double mu : mus) {
        if (!(mu > 0.0)) {
            throw Error(ErrorCode::Config, "penalty weights must be positive");
        }
    }
    if (!(demand_tolerance >= 0.0) || !(demand_floor > 0.0)) {
        throw Error(ErrorCode::Config, "demand tolerance must be >= 0 and the demand floor positive");
    }
    if (!(temperature_margin >= 0.0)) {
        throw Error(ErrorCode::Config, "temperature margin must be >= 0");
    }
    if (!(soft.delta_t_min < soft.delta_t_max)) {
        throw Error(ErrorCode::Config, "delta-T range must satisfy min < max");
    }
}

ConstraintSet default_constraints(const PlantConfig& plant)
{
    ConstraintSet cs;
    cs.bounds = default_bounds(plant);
    return cs;
}

void HorizonForecast::validate() const
{
    if (q_load.empty() || t_env.size() != q_load.size() || prices.size() != q_load.size()) {
        throw Error(ErrorCode::Precondition, "forecast series must be non-empty and of equal length");
    }
    for (double q : q_load) {
        if (!(q >= 0.0)) {
            throw Error(ErrorCode::Precondition, "forecast demand must be nonnegative");
        }
    }
}

double economic_cost(std::span<const std::vector<double>> powers, std::span<const double> prices, double hours)
{
    if (powers.size() != prices.size()) {
        throw Error(ErrorCode::Precondition, "power and price series differ in length");
    }
    double cost = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        double p = 0.0;
        for (double w : powers[k]) {
            p += w;
        }
        cost += p / 1000.0 * hours * prices[k];
    }
    return cost;
}

double energetic_cost(std::span<const std::vector<double>> powers, double hours)
{
    double energy = 0.0;
    for (const auto& period : powers) {
        double p = 0.0;
        for (double w : period) {
            p += w;
        }
        energy += p / 1000.0 * hours;
    }
    return energy;
}

namespace {

PeriodViolations period_violations(const PeriodOutcome& o, const ConstraintSet& cs, double margin = 0.0)
{
    PeriodViolations v;
    for (std::size_t i = 0; i < o.delta_t.size(); ++i) {
        const bool on = i < o.on.size() && o.on[i];
        const double dt = o.delta_t[i];
        v.chiller_inversion.push_back(on ? std::max(0.0, -dt) : 0.0);
        double out = 0.0;
        if (on) {
            out = dt < cs.soft.delta_t_min ? cs.soft.delta_t_min - dt
                                           : (dt > cs.soft.delta_t_max ? dt - cs.soft.delta_t_max : 0.0);
        }
        v.delta_t.push_back(out);
    }
    v.load_supply = std::max(0.0, o.t_load_supply - (cs.soft.t_load_supply_max - margin));
    v.tank = std::max(0.0, o.t_tank - (cs.soft.t_tank_max - margin));
    return v;
}

double period_penalty(const PeriodViolations& v, const PenaltyWeights& w)
{
    double p = w.load_supply * v.load_supply * v.load_supply + w.tank * v.tank * v.tank;
    for (double h : v.chiller_inversion) {
        p += w.chiller_inversion * h * h;
    }
    for (double h : v.delta_t) {
        p += w.delta_t * h * h;
    }
    return p;
}

}  // namespace

std::vector<PeriodViolations> constraint_violations(std::span<const PeriodOutcome> trajectory, const ConstraintSet& cs)
{
    std::vector<PeriodViolations> out;
    out.reserve(trajectory.size());
    for (const auto& o : trajectory) {
        out.push_back(period_violations(o, cs));
    }
    return out;
}

double augmented_cost(double j, std::span<const double> violations, std::span<const double> weights)
{
    if (violations.size() != weights.size()) {
        throw Error(ErrorCode::Precondition, "one weight per violation expected");
    }
    double out = j;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (!(weights[i] > 0.0)) {
            throw Error(ErrorCode::Precondition, "penalty weights must be positive");
        }
        const double h = std::max(0.0, violations[i]);
        out += weights[i] * h * h;
    }
    return out;
}

double soft_penalty(std::span<const PeriodViolations> v, const PenaltyWeights& w)
{
    double p = 0.0;
    for (const auto& period : v) {
        p += period_penalty(period, w);
    }
    return p;
}

CandidateEvaluation evaluate_candidate(const EvaluationContext& ctx, const DecisionVector& x, const PlantState& s0,
                                       const HorizonForecast& f, bool keep_trajectory)
{
    const PlantConfig& plant = *ctx.plant;
    const ConstraintSet& cs = *ctx.constraints;
    if (x.horizon() != f.size()) {
        throw Error(ErrorCode::Precondition,
                    fmt::format("trajectory has {} periods, forecast {}", x.horizon(), f.size()));
    }
    const double hours = ctx.dt / 3600.0;
    const bool economic = ctx.objective == ObjectiveKind::Economic;
    double mean_price = 0.0;
    for (double p : f.prices) {
        mean_price += p;
    }
    mean_price /= static_cast<double>(f.size());

    CandidateEvaluation r;
    if (keep_trajectory) {
        r.trajectory.reserve(f.size());
    }
    double penalty_kwh = 0.0;
    PlantState state = s0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const FlowLimitResult lim = limit_flows_to_mass_balance(x.periods[k]);
        penalty_kwh += cs.weights.mass_balance * lim.excess * lim.excess;
        StepResult step;
        try {
            step = plant_step(plant, state, lim.decision, f.q_load[k], f.t_env[k], ctx.dt);
        } catch (const Error&) {
            r.plant_error = true;
            r.fitness = kSentinelFitness;
            return r;
        }
        const PeriodOutcome& o = step.outcome;
        const double e = o.p_total() / 1000.0 * hours;
        r.energy_kwh += e;
        r.cost_eur += e * f.prices[k];
        penalty_kwh += period_penalty(period_violations(o, cs, cs.temperature_margin), cs.weights);
        const double mismatch = std::abs(o.unmet) / std::max(f.q_load[k], cs.demand_floor);
        r.worst_mismatch = std::max(r.worst_mismatch, mismatch);
        penalty_kwh += cs.weights.demand * mismatch * mismatch;
        state = step.state;
        if (keep_trajectory) {
            r.trajectory.push_back(o);
        }
    }
    r.base_cost = economic ? r.cost_eur : r.energy_kwh;
    r.penalty = economic ? penalty_kwh * mean_price : penalty_kwh;
    r.fitness = r.base_cost + r.penalty;
    if (!std::isfinite(r.fitness)) {
        r.fitness = kSentinelFitness;
    }
    return r;
}

HorizonSolution solve_horizon(const EvaluationContext& ctx, const PlantState& s0, const HorizonForecast& f,
                              const GaConfig& ga, std::uint64_t seed, std::span<const Genome> warm_starts)
{
    f.validate();
    ctx.constraints->validate();
    const DecisionBounds& bounds = ctx.constraints->bounds;
    if (bounds.chillers() != ctx.plant->size()) {
        throw Error(ErrorCode::Config, "bounds and plant describe different chiller counts");
    }
    const std::size_t horizon = f.size();
    const GenomeLayout layout = horizon_layout(bounds.chillers(), horizon);
    auto fitness = [&](const Genome& g) {
        return evaluate_candidate(ctx, decode(g, bounds, horizon), s0, f).fitness;
    };
    HorizonSolution sol;
    sol.ga = evolve(fitness, ga, layout, seed, warm_starts);
    sol.x = decode(sol.ga.best, bounds, horizon);
    sol.fitness = sol.ga.best_cost;
    return sol;
}

namespace {

struct Dispatch {
    PerChiller<bool> on;
    PerChiller<double> m_dot;
    double m_total = 0.0;
};

// Cheapest on/off set for a steady duty with equal part-load ratios, ignoring storage.
Dispatch static_dispatch(const PlantConfig& plant, const DecisionBounds& b, double q, double t_env, double t_set)
{
    const std::size_t n = plant.size();
    const double cp = plant.water.cp;
    constexpr double kDesignRise = 5.0;
    constexpr double kMargin = 1.1;

    unsigned best_mask = 0;
    double best_power = std::numeric_limits<double>::infinity();
    unsigned largest_mask = 0;
    double largest_capacity = -1.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        double capacity = 0.0;
        double min_duty = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                const double c = chiller_capacity(plant.chillers[i], t_set, t_env);
                capacity += c;
                min_duty += plant.min_plr * c;
            }
        }
        if (capacity > largest_capacity) {
            largest_capacity = capacity;
            largest_mask = mask;
        }
        if (capacity < kMargin * q || min_duty > q) {
            continue;
        }
        const double plr = q / capacity;
        double power = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                const double c = chiller_capacity(plant.chillers[i], t_set, t_env);
                power += plr * c / chiller_cop(plant.chillers[i], plr, t_set, t_env);
            }
        }
        if (power < best_power) {
            best_power = power;
            best_mask = mask;
        }
    }
    if (best_mask == 0) {
        if (q > 0.5 * largest_capacity) {
            best_mask = largest_mask;
        } else {
            // Demand below every machine's minimum: the smallest one runs.
            std::size_t smallest = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (chiller_capacity(plant.chillers[i], t_set, t_env)
                    < chiller_capacity(plant.chillers[smallest], t_set, t_env)) {
                    smallest = i;
                }
            }
            best_mask = 1u << smallest;
        }
    }
    double capacity = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (best_mask & (1u << i)) {
            capacity += chiller_capacity(plant.chillers[i], t_set, t_env);
        }
    }
    const double plr = std::clamp(q / capacity, plant.min_plr, 1.0);
    Dispatch d;
    for (std::size_t i = 0; i < n; ++i) {
        const bool on = best_mask & (1u << i);
        const double duty = plr * chiller_capacity(plant.chillers[i], t_set, t_env);
        const double m = std::clamp(duty / (cp * kDesignRise), b.m_dot[i].lo, b.m_dot[i].hi);
        d.on.push_back(on);
        d.m_dot.push_back(m);
        if (on) {
            d.m_total += m;
        }
    }
    return d;
}

PeriodDecision dispatch_decision(const Dispatch& dispatch, const DecisionBounds& b, double t_set)
{
    PeriodDecision d;
    d.on = dispatch.on;
    d.m_dot = dispatch.m_dot;
    for (std::size_t i = 0; i < b.chillers(); ++i) {
        d.t_out_ref.push_back(std::clamp(t_set, b.t_out[i].lo, b.t_out[i].hi));
    }
    d.m_dot_load = std::clamp(dispatch.m_total, b.m_dot_load.lo, b.m_dot_load.hi);
    d.m_dot_tes = b.m_dot_tes.lo;
    return d;
}

}  // namespace

namespace {

struct TesPlan {
    bool on = false;
    TesMode mode = TesMode::Charging;
    double m_tes = 0.0;
    double t_set = 7.0;
};

// Raises the flows of the running chillers, proportionally, toward `target`.
void widen_chiller_flow(PeriodDecision& d, const DecisionBounds& b, double target)
{
    for (int pass = 0; pass < 4; ++pass) {
        const double m = total_chiller_flow(d);
        if (m >= target) {
            return;
        }
        double headroom = 0.0;
        for (std::size_t i = 0; i < d.on.size(); ++i) {
            if (d.on[i]) {
                headroom += b.m_dot[i].hi - d.m_dot[i];
            }
        }
        if (headroom <= 0.0) {
            return;
        }
        const double share = std::min(1.0, (target - m) / headroom);
        for (std::size_t i = 0; i < d.on.size(); ++i) {
            if (d.on[i]) {
                d.m_dot[i] += share * (b.m_dot[i].hi - d.m_dot[i]);
            }
        }
    }
}

PeriodDecision plan_decision(const PlantConfig& plant, const DecisionBounds& b, const TesPlan& p, double q,
                             double duty, double t_env)
{
    constexpr double kLoadRise = 6.0;
    const double cp = plant.water.cp;
    PeriodDecision d = dispatch_decision(static_dispatch(plant, b, std::max(duty, 0.0), t_env, p.t_set), b, p.t_set);
    d.m_dot_load = std::clamp(q / (cp * kLoadRise), b.m_dot_load.lo, b.m_dot_load.hi);
    d.m_dot_tes = b.m_dot_tes.lo;
    if (p.on) {
        d.tes_on = true;
        d.mode = p.mode;
        d.m_dot_tes = std::clamp(p.m_tes, b.m_dot_tes.lo, b.m_dot_tes.hi);
    }
    double mc = total_chiller_flow(d);
    if (p.on && p.mode == TesMode::Charging) {
        widen_chiller_flow(d, b, d.m_dot_load + d.m_dot_tes);
        mc = total_chiller_flow(d);
        if (d.m_dot_load + d.m_dot_tes > mc) {
            d.m_dot_load = std::max(b.m_dot_load.lo, std::min(d.m_dot_load, 0.6 * mc));
            d.m_dot_tes = std::clamp(mc - d.m_dot_load, b.m_dot_tes.lo, b.m_dot_tes.hi);
        }
    } else if (p.on) {
        // A warm return is what lets the tank give up its cold.
        constexpr double kDischargeRise = 8.0;
        d.m_dot_load = std::clamp(std::min(mc + d.m_dot_tes, q / (cp * kDischargeRise)),
                                  std::max(b.m_dot_load.lo, d.m_dot_tes), b.m_dot_load.hi);
    } else {
        d.m_dot_load = std::min(d.m_dot_load, mc);
        d.m_dot_load = std::max(d.m_dot_load, std::min(b.m_dot_load.lo, mc));
    }
    return d;
}

double period_score(const PeriodOutcome& o, const ConstraintSet& cs, double excess, double dt)
{
    const double mismatch = std::abs(o.unmet) / std::max(o.q_load, cs.demand_floor);
    return o.p_total() / 1000.0 * dt / 3600.0 + cs.weights.mass_balance * excess * excess
        + period_penalty(period_violations(o, cs, cs.temperature_margin), cs.weights)
        + cs.weights.demand * mismatch * mismatch;
}

// Greedy per-period search over on-set, total chiller flow, set-point and
// (when discharging) load flow. Minimum-load clamping often makes the first
// guess overcool, and a fixed set-point wastes the warmer outlet allowed when
// the tank carries the peak.
void refine_period(const PlantConfig& plant, const ConstraintSet& cs, const PlantState& state, double q,
                   double t_env, double dt, PeriodDecision& best, std::optional<StepResult>& step)
{
    const DecisionBounds& b = cs.bounds;
    const std::size_t n = plant.size();
    if (best.on.size() != n) {
        return;
    }
    double best_score = std::numeric_limits<double>::infinity();
    if (step) {
        best_score = period_score(step->outcome, cs, limit_flows_to_mass_balance(best).excess, dt);
    }
    const PeriodDecision base = best;
    const double mc = total_chiller_flow(base);
    const bool charging = base.tes_on && base.mode == TesMode::Charging;
    const bool discharging = base.tes_on && base.mode == TesMode::Discharging;

    std::vector<double> set_points{base.t_out_ref.front()};
    if (!charging) {
        set_points.push_back(b.t_out.front().hi);
    }
    std::vector<double> load_flows{base.m_dot_load};
    if (discharging) {
        for (double rise : {6.0, 8.0}) {
            load_flows.push_back(std::clamp(q / (plant.water.cp * rise), std::max(b.m_dot_load.lo, base.m_dot_tes),
                                            b.m_dot_load.hi));
        }
    }
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        for (double t_set : set_points) {
            for (double scale : {0.6, 0.8, 1.0, 1.25}) {
                for (double ml : load_flows) {
                    PeriodDecision d = base;
                    double cap = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        d.on[i] = mask & (1u << i);
                        d.t_out_ref[i] = std::clamp(t_set, b.t_out[i].lo, b.t_out[i].hi);
                        if (d.on[i]) {
                            cap += chiller_capacity(plant.chillers[i], d.t_out_ref[i], t_env);
                        }
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        if (d.on[i]) {
                            const double share = chiller_capacity(plant.chillers[i], d.t_out_ref[i], t_env) / cap;
                            d.m_dot[i] = std::clamp(share * scale * mc, b.m_dot[i].lo, b.m_dot[i].hi);
                        }
                    }
                    d.m_dot_load = ml;
                    if (discharging) {
                        d.m_dot_load = std::min(ml, total_chiller_flow(d) + d.m_dot_tes);
                    } else if (!charging) {
                        d.m_dot_load = std::min(ml, total_chiller_flow(d));
                    }
                    const FlowLimitResult lim = limit_flows_to_mass_balance(d);
                    try {
                        StepResult r = plant_step(plant, state, lim.decision, q, t_env, dt);
                        const double score = period_score(r.outcome, cs, lim.excess, dt);
                        if (score < best_score) {
                            best_score = score;
                            best = lim.decision;
                            step = std::move(r);
                        }
                    } catch (const Error&) {
                    }
                }
            }
        }
    }
}

// Follows a storage plan through the plant, re-dispatching the chillers for the
// duty each period actually sees. Storage actions the plant rejects are dropped.
DecisionVector follow_plan(const PlantConfig& plant, const ConstraintSet& cs, const HorizonForecast& f,
                           const PlantState& s0, std::vector<TesPlan> plan, double dt)
{
    DecisionVector x;
    PlantState state = s0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        TesPlan& p = plan[k];
        const double q = f.q_load[k];
        if (p.on && p.mode == TesMode::Charging && state.tes.temperature <= p.t_set + 0.5) {
            p.on = false;
        }
        double duty = q;
        PeriodDecision best;
        std::optional<StepResult> step;
        for (int pass = 0; pass < 3; ++pass) {
            PeriodDecision d = limit_flows_to_mass_balance(plan_decision(plant, cs.bounds, p, q, duty, f.t_env[k])).decision;
            try {
                StepResult r = plant_step(plant, state, d, q, f.t_env[k], dt);
                if (p.on && p.mode == TesMode::Discharging && r.outcome.q_tes >= 0.0) {
                    p.on = false;
                    duty = q;
                    continue;
                }
                duty = q + r.outcome.q_tes;
                best = d;
                step = r;
            } catch (const Error&) {
                if (!p.on) {
                    break;
                }
                p.on = false;
                duty = q;
            }
        }
        if (!step) {
            best = limit_flows_to_mass_balance(plan_decision(plant, cs.bounds, TesPlan{}, q, q, f.t_env[k])).decision;
            try {
                step = plant_step(plant, state, best, q, f.t_env[k], dt);
            } catch (const Error&) {
            }
        }
        refine_period(plant, cs, state, q, f.t_env[k], dt, best, step);
        if (step) {
            state = step->state;
        }
        x.periods.push_back(std::move(best));
    }
    return x;
}

}  // namespace

std::vector<DecisionVector> heuristic_trajectories(const PlantConfig& plant, const ConstraintSet& cs,
                                                   const HorizonForecast& f, const PlantState& s0, double dt)
{
    const DecisionBounds& b = cs.bounds;
    const std::size_t n = f.size();
    std::vector<DecisionVector> out;
    out.push_back(follow_plan(plant, cs, f, s0, std::vector<TesPlan>(n), dt));

    const double lo_price = *std::min_element(f.prices.begin(), f.prices.end());
    const double hi_price = *std::max_element(f.prices.begin(), f.prices.end());
    const auto [q_lo, q_hi] = std::minmax_element(f.q_load.begin(), f.q_load.end());
    const double q_mid = 0.5 * (*q_lo + *q_hi);

    for (double share : {0.25, 0.5, 1.0}) {
        const double m_tes = b.m_dot_tes.from_unit(share);
        for (double t_charge : {5.5, 7.0}) {
            // Price arbitrage: charge in the cheapest periods, discharge in the dearest
            // (or in every period above the cheapest).
            if (hi_price > lo_price) {
                for (bool any_above : {false, true}) {
                    std::vector<TesPlan> plan(n);
                    for (std::size_t k = 0; k < n; ++k) {
                        if (f.prices[k] == lo_price) {
                            plan[k] = {true, TesMode::Charging, m_tes, t_charge};
                        } else if (f.prices[k] == hi_price || any_above) {
                            plan[k] = {true, TesMode::Discharging, m_tes, 7.0};
                        }
                    }
                    out.push_back(follow_plan(plant, cs, f, s0, std::move(plan), dt));
                }
            }
            // Load levelling: charge below the mid demand, discharge above it.
            std::vector<TesPlan> plan(n);
            for (std::size_t k = 0; k < n; ++k) {
                if (f.q_load[k] < q_mid) {
                    plan[k] = {true, TesMode::Charging, m_tes, t_charge};
                } else {
                    plan[k] = {true, TesMode::Discharging, m_tes, 7.0};
                }
            }
            out.push_back(follow_plan(plant, cs, f, s0, std::move(plan), dt));
        }
    }
    return out;
}

Genome shift_genome(const Genome& g, std::size_t chillers, std::size_t horizon)
{
    const GenomeLayout layout = horizon_layout(chillers, horizon);
    if (g.layout() != layout) {
        throw Error(ErrorCode::LayoutMismatch, "genome does not match the horizon layout");
    }
    const std::size_t nc = 2 * chillers + 2;
    const std::size_t nb = chillers + 2;
    Genome out = g;
    if (horizon < 2) {
        return out;
    }
    std::copy(g.continuous.begin() + static_cast<long>(nc), g.continuous.end(), out.continuous.begin());
    std::copy(g.binary.begin() + static_cast<long>(nb), g.binary.end(), out.binary.begin());
    return out;
}

HorizonForecast forecast_at(const Scenario& s, std::size_t hour, std::size_t horizon, const TariffSchedule& tariff,
                            const PeriodCalendar& cal)
{
    if (hour + horizon > s.q_load_forecast.size() || hour + horizon > s.t_env_forecast.size()) {
        throw Error(ErrorCode::Precondition,
                    fmt::format("scenario tracks end before hour {} + horizon {}", hour, horizon));
    }
    HorizonForecast f;
    for (std::size_t k = 0; k < horizon; ++k) {
        f.q_load.push_back(s.q_load_forecast[hour + k]);
        f.t_env.push_back(s.t_env_forecast[hour + k]);
        f.prices.push_back(price_at(tariff, cal, s.time_at(hour + k)));
    }
    return f;
}

SimulationReport receding_horizon_run(const Scenario& scenario, const RunContext& ctx)
{
    scenario.validate();
    const PlantConfig& plant = *ctx.plant;
    const ConstraintSet& cs = *ctx.constraints;
    const ControllerConfig& cc = ctx.controller;
    cs.validate();
    cc.ga.validate();
    if (scenario.q_load_forecast.size() < scenario.hours + cc.horizon) {
        throw Error(ErrorCode::Precondition,
                    fmt::format("scenario covers {} rows, {} hours need {}", scenario.q_load_forecast.size(),
                                scenario.hours, scenario.hours + cc.horizon));
    }
    const std::size_t n = plant.size();
    const EvaluationContext ectx{&plant, &cs, cc.objective, cc.dt};

    SimulationReport report;
    report.meta.objective = std::string(to_string(cc.objective));
    report.meta.tariff = ctx.tariff->name;
    report.meta.season = scenario.season;
    report.meta.scenario = scenario.name;
    report.meta.scenario_fingerprint = fmt::format("{:016x}", scenario.fingerprint());
    report.meta.start = format_timestamp(scenario.start);
    report.meta.seed = ctx.seed;
    report.meta.profile = cc.profile;
    report.meta.horizon = cc.horizon;
    report.meta.hours = scenario.hours;
    report.meta.dt = cc.dt;
    report.meta.tank_volume = plant.tank_volume;
    report.meta.tank_initial = cc.tank_initial;
    report.meta.ga = fmt::format("population={} tournament={} mutation={} alpha={} generations={} stagnation={} "
                                 "elitism={} warm_start={}",
                                 cc.ga.population, cc.ga.tournament, cc.ga.mutation_rate, cc.ga.alpha,
                                 cc.ga.generations, cc.ga.stagnation, cc.ga.elite_count(), cc.warm_start_fraction);
    for (const auto& c : plant.chillers) {
        report.chiller_names.push_back(c.name);
    }

    PlantState state;
    state.tes = TesState{cc.tank_initial, plant.tank_volume};
    state.chiller_on.assign(n, false);

    const auto carried = static_cast<std::size_t>(std::floor(cc.warm_start_fraction * double(cc.ga.population)));
    Population previous;
    for (std::size_t h = 0; h < scenario.hours; ++h) {
        const HorizonForecast f = forecast_at(scenario, h, cc.horizon, *ctx.tariff, *ctx.calendar);

        std::vector<Genome> warm;
        for (const auto& x : heuristic_trajectories(plant, cs, f, state, cc.dt)) {
            warm.push_back(encode(x, cs.bounds));
        }
        for (std::size_t i = 0; i < previous.size() && i < carried && warm.size() < cc.ga.population; ++i) {
            warm.push_back(shift_genome(previous[i], n, cc.horizon));
        }

        const HorizonSolution sol = solve_horizon(ectx, state, f, cc.ga, mix_seed(ctx.seed, h), warm);
        previous = sol.ga.final_population;

        HourRecord rec;
        rec.hour = h;
        rec.time = scenario.time_at(h);
        rec.period = period_at(*ctx.calendar, rec.time);
        rec.price = ctx.tariff->price(rec.period);
        rec.q_load_forecast = f.q_load.front();
        rec.t_env = scenario.t_env_real[h];
        rec.generations = static_cast<int>(sol.ga.history.size()) - 1;
        rec.planned_fitness = sol.fitness;

        const double q_real = scenario.q_load_real[h];
        rec.decision = limit_flows_to_mass_balance(sol.x.periods.front()).decision;
        StepResult step;
        try {
            step = plant_step(plant, state, rec.decision, q_real, rec.t_env, cc.dt);
        } catch (const Error&) {
            rec.fallback = true;
            const Dispatch dispatch = static_dispatch(plant, cs.bounds, q_real, rec.t_env, 7.0);
            rec.decision = limit_flows_to_mass_balance(dispatch_decision(dispatch, cs.bounds, 7.0)).decision;
            step = plant_step(plant, state, rec.decision, q_real, rec.t_env, cc.dt);
        }
        rec.outcome = step.outcome;
        rec.energy_kwh = rec.outcome.p_total() / 1000.0 * (cc.dt / 3600.0);
        rec.cost_eur = rec.energy_kwh * rec.price;
        rec.within_tolerance = std::abs(rec.outcome.unmet) <= cs.demand_tolerance * q_real + 1e-9;
        state = step.state;
        report.hours.push_back(rec);
        if (ctx.on_hour) {
            ctx.on_hour(report.hours.back(), sol.ga);
        }
    }
    report.recompute_totals();
    return report;
}

void apply_controller_config(std::string_view text, ControllerConfig& cfg, ConstraintSet& cs, std::string_view source)
{
    const ConfigDocument doc = parse_config(text, source);
    for (const ConfigEntry& e : doc.entries) {
        const auto num = [&] { return entry_number(doc, e); };
        const auto count = [&] {
            const long v = entry_integer(doc, e);
            if (v < 0) {
                entry_error(doc, e, "must be nonnegative");
            }
            return v;
        };
        if (e.section == "controller") {
            if (e.key == "objective") {
                try {
                    cfg.objective = parse_objective(e.value);
                } catch (const Error& err) {
                    entry_error(doc, e, err.what());
                }
            } else if (e.key == "horizon") {
                cfg.horizon = static_cast<std::size_t>(count());
            } else if (e.key == "dt_s") {
                cfg.dt = num();
            } else if (e.key == "profile") {
                if (e.value == "desk") {
                    cfg.ga = GaConfig::desk();
                } else if (e.value == "full" || e.value == "paper-scale") {
                    cfg.ga = GaConfig::full_scale();
                } else {
                    entry_error(doc, e, "expected desk or full");
                }
                cfg.profile = e.value == "desk" ? "desk" : "full";
            } else if (e.key == "warm_start_fraction") {
                cfg.warm_start_fraction = num();
            } else if (e.key == "tank_initial_c") {
                cfg.tank_initial = num();
            } else {
                entry_error(doc, e, "unknown field");
            }
        } else if (e.section == "ga") {
            if (e.key == "population") {
                cfg.ga.population = static_cast<std::size_t>(count());
            } else if (e.key == "tournament") {
                cfg.ga.tournament = static_cast<std::size_t>(count());
            } else if (e.key == "mutation_rate") {
                cfg.ga.mutation_rate = num();
            } else if (e.key == "alpha") {
                cfg.ga.alpha = num();
            } else if (e.key == "generations") {
                cfg.ga.generations = static_cast<int>(count());
            } else if (e.key == "stagnation") {
                cfg.ga.stagnation = static_cast<int>(count());
            } else if (e.key == "elitism") {
                cfg.ga.elitism = static_cast<std::size_t>(count());
            } else {
                entry_error(doc, e, "unknown field");
            }
        } else if (e.section == "constraints") {
            if (e.key == "demand_tolerance") {
                cs.demand_tolerance = num();
            } else if (e.key == "demand_floor_w") {
                cs.demand_floor = num();
            } else if (e.key == "t_load_supply_max_c") {
                cs.soft.t_load_supply_max = num();
            } else if (e.key == "t_tank_max_c") {
                cs.soft.t_tank_max = num();
            } else if (e.key == "temperature_margin_k") {
                cs.temperature_margin = num();
            } else if (e.key == "delta_t_min_k") {
                cs.soft.delta_t_min = num();
            } else if (e.key == "delta_t_max_k") {
                cs.soft.delta_t_max = num();
            } else if (e.key == "mu_chiller_inversion") {
                cs.weights.chiller_inversion = num();
            } else if (e.key == "mu_load_supply") {
                cs.weights.load_supply = num();
            } else if (e.key == "mu_tank") {
                cs.weights.tank = num();
            } else if (e.key == "mu_delta_t") {
                cs.weights.delta_t = num();
            } else if (e.key == "mu_demand") {
                cs.weights.demand = num();
            } else if (e.key == "mu_mass_balance") {
                cs.weights.mass_balance = num();
            } else if (e.key == "load_flow_kg_s" || e.key == "tes_flow_kg_s") {
                const auto v = entry_numbers(doc, e);
                if (v.size() != 2) {
                    entry_error(doc, e, "expected two numbers");
                }
                (e.key == "load_flow_kg_s" ? cs.bounds.m_dot_load : cs.bounds.m_dot_tes) = Range{v[0], v[1]};
            } else {
                entry_error(doc, e, "unknown field");
            }
        } else {
            entry_error(doc, e, fmt::format("unexpected section '[{}]'", e.section));
        }
    }
    if (cfg.horizon < 1 || !(cfg.dt > 0.0) || !(cfg.warm_start_fraction >= 0.0 && cfg.warm_start_fraction <= 1.0)) {
        throw Error(ErrorCode::Config,
                    fmt::format("{}: horizon >= 1, dt_s > 0 and warm_start_fraction in [0, 1] required", doc.source));
    }
    cfg.ga.validate();
    cs.validate();
}

std::string format_controller_config(const ControllerConfig& cfg, const ConstraintSet& cs)
{
    std::string out = "# coldplant controller v1\n\n[controller]\n";
    out += fmt::format("objective = {}\nhorizon = {}\ndt_s = {}\nwarm_start_fraction = {}\ntank_initial_c = {}\n",
                       to_string(cfg.objective), cfg.horizon, cfg.dt, cfg.warm_start_fraction, cfg.tank_initial);
    out += "\n[ga]\n";
    out += fmt::format("population = {}\ntournament = {}\nmutation_rate = {}\nalpha = {}\ngenerations = {}\n"
                       "stagnation = {}\nelitism = {}\n",
                       cfg.ga.population, cfg.ga.tournament, cfg.ga.mutation_rate, cfg.ga.alpha, cfg.ga.generations,
                       cfg.ga.stagnation, cfg.ga.elitism);
    out += "\n[constraints]\n";
    out += fmt::format("demand_tolerance = {}\ndemand_floor_w = {}\n", cs.demand_tolerance, cs.demand_floor);
    out += fmt::format("t_load_supply_max_c = {}\nt_tank_max_c = {}\ntemperature_margin_k = {}\ndelta_t_min_k = {}\n"
                       "delta_t_max_k = {}\n",
                       cs.soft.t_load_supply_max, cs.soft.t_tank_max, cs.temperature_margin, cs.soft.delta_t_min,
                       cs.soft.delta_t_max);
    out += fmt::format("mu_chiller_inversion = {}\nmu_load_supply = {}\nmu_tank = {}\nmu_delta_t = {}\n"
                       "mu_demand = {}\nmu_mass_balance = {}\n",
                       cs.weights.chiller_inversion, cs.weights.load_supply, cs.weights.tank, cs.weights.delta_t,
                       cs.weights.demand, cs.weights.mass_balance);
    out += fmt::format("load_flow_kg_s = {} {}\ntes_flow_kg_s = {} {}\n", cs.bounds.m_dot_load.lo,
                       cs.bounds.m_dot_load.hi, cs.bounds.m_dot_tes.lo, cs.bounds.m_dot_tes.hi);
    return out;
}

}  // namespace coldplant
