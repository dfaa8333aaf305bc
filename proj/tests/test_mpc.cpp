#include "coldplant/chiller_data.hpp"
#include "coldplant/error.hpp"
#include "coldplant/mpc.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace coldplant;

namespace {

const PlantConfig& plant()
{
    static const PlantConfig p = default_plant();
    return p;
}

const ConstraintSet& constraints()
{
    static const ConstraintSet cs = default_constraints(plant());
    return cs;
}

PlantState fresh_state(double t_tank = 10.0)
{
    PlantState s;
    s.tes = TesState{t_tank, plant().tank_volume};
    s.chiller_on.assign(plant().size(), false);
    return s;
}

// Only chiller `unit` runs, at `flow`, holding 7 degC; TES idle.
PeriodDecision single_unit(std::size_t unit, double flow, double load_flow)
{
    PeriodDecision d;
    for (std::size_t i = 0; i < plant().size(); ++i) {
        d.on.push_back(i == unit);
        d.m_dot.push_back(i == unit ? flow : constraints().bounds.m_dot[i].lo);
        d.t_out_ref.push_back(7.0);
    }
    d.m_dot_load = load_flow;
    d.m_dot_tes = 1.0;
    return d;
}

HorizonForecast flat_forecast(std::size_t n, double q, double t_env, double price)
{
    HorizonForecast f;
    f.q_load.assign(n, q);
    f.t_env.assign(n, t_env);
    f.prices.assign(n, price);
    return f;
}

GaConfig small_ga(std::size_t population, int generations)
{
    GaConfig g;
    g.population = population;
    g.generations = generations;
    g.stagnation = 0;
    return g;
}

}  // namespace

TEST(Objective, ParsesNames)
{
    EXPECT_EQ(parse_objective("econ"), ObjectiveKind::Economic);
    EXPECT_EQ(parse_objective("energetic"), ObjectiveKind::Energetic);
    EXPECT_EQ(to_string(ObjectiveKind::Economic), "economic");
    EXPECT_THROW(parse_objective("cheap"), Error);
}

TEST(EconomicCost, WorkedExamples)
{
    const std::vector<std::vector<double>> one = {{600e3, 400e3}};
    const double p1 = 0.2998;
    EXPECT_NEAR(economic_cost(one, std::vector<double>{p1}), 299.8, 1e-9);
    const std::vector<std::vector<double>> zero = {{0.0, 0.0}, {0.0}};
    EXPECT_EQ(economic_cost(zero, std::vector<double>{0.3, 0.1}), 0.0);
    const std::vector<std::vector<double>> two = {{500e3}, {500e3}};
    EXPECT_NEAR(economic_cost(two, std::vector<double>{0.10, 0.20}), 150.0, 1e-9);
    EXPECT_THROW(economic_cost(two, std::vector<double>{0.1}), Error);
}

TEST(EnergeticCost, WorkedExamples)
{
    const std::vector<std::vector<double>> day(24, std::vector<double>{60e3, 40e3});
    EXPECT_NEAR(energetic_cost(day), 2400.0, 1e-9);
    EXPECT_EQ(energetic_cost(std::vector<std::vector<double>>{{0.0}}), 0.0);
    const std::vector<std::vector<double>> one = {{600e3, 400e3}};
    EXPECT_NEAR(energetic_cost(one), 1000.0, 1e-9);
    EXPECT_NEAR(energetic_cost(one, 0.5), 500.0, 1e-9);
}

TEST(Violations, FeasibleOutcomeIsClean)
{
    PeriodOutcome o;
    o.on = {true, false};
    o.delta_t = {5.0, 0.0};
    o.t_load_supply = 7.0;
    o.t_tank = 10.0;
    const auto v = constraint_violations(std::vector<PeriodOutcome>{o}, constraints());
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].tank, 0.0);
    EXPECT_EQ(v[0].load_supply, 0.0);
    EXPECT_EQ(v[0].delta_t[0], 0.0);
    EXPECT_EQ(v[0].chiller_inversion[0], 0.0);
    EXPECT_EQ(soft_penalty(v, constraints().weights), 0.0);
}

TEST(Violations, WorkedExamples)
{
    PeriodOutcome o;
    o.on = {true, true, false};
    o.delta_t = {2.0, 11.5, 0.5};
    o.t_load_supply = 15.25;
    o.t_tank = 16.0;
    const auto v = constraint_violations(std::vector<PeriodOutcome>{o}, constraints());
    EXPECT_NEAR(v[0].tank, 1.0, 1e-12);
    EXPECT_NEAR(v[0].delta_t[0], 1.3, 1e-12);
    EXPECT_NEAR(v[0].delta_t[1], 1.5, 1e-12);
    EXPECT_EQ(v[0].delta_t[2], 0.0);  // off
    EXPECT_NEAR(v[0].load_supply, 0.25, 1e-12);

    o.delta_t = {-0.5, 4.0, -3.0};
    const auto w = constraint_violations(std::vector<PeriodOutcome>{o}, constraints());
    EXPECT_NEAR(w[0].chiller_inversion[0], 0.5, 1e-12);
    EXPECT_EQ(w[0].chiller_inversion[2], 0.0);
    const double expected = 1e4 * (0.25 * 0.25 + 1.0) + 100.0 * (0.5 * 0.5 + 3.8 * 3.8);
    EXPECT_NEAR(soft_penalty(w, constraints().weights), expected, 1e-9);
}

TEST(AugmentedCost, WorkedExamples)
{
    EXPECT_EQ(augmented_cost(100.0, std::vector<double>{0.0, 0.0}, std::vector<double>{10.0, 5.0}), 100.0);
    EXPECT_NEAR(augmented_cost(100.0, std::vector<double>{2.0}, std::vector<double>{10.0}), 140.0, 1e-12);
    const double a = augmented_cost(0.0, std::vector<double>{1.5}, std::vector<double>{3.0});
    const double b = augmented_cost(0.0, std::vector<double>{3.0}, std::vector<double>{3.0});
    EXPECT_NEAR(b, 4.0 * a, 1e-12);
    EXPECT_THROW(augmented_cost(0.0, std::vector<double>{1.0}, std::vector<double>{0.0}), Error);
}

TEST(AugmentedCost, NeverBelowBaseAndStrictlyIncreasing)
{
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double j = rng.uniform(-10, 1000);
        std::vector<double> v = {rng.uniform(0, 3), rng.uniform(0, 3), 0.0};
        const std::vector<double> mu = {rng.uniform(0.1, 100), rng.uniform(0.1, 100), 7.0};
        const double base = augmented_cost(j, v, mu);
        EXPECT_GE(base, j);
        v[2] = 1e-3;
        EXPECT_GT(augmented_cost(j, v, mu), base);
    }
}

TEST(Evaluate, FeasibleCandidateCostsItsEnergy)
{
    // One 1407 kW unit carrying 1000 kW for two hours at 7 degC, 30 degC air.
    const double q = 1000e3;
    DecisionVector x;
    x.periods = {single_unit(0, 34.0, 34.0), single_unit(0, 34.0, 34.0)};
    const HorizonForecast f = flat_forecast(2, q, 30.0, 0.2);
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const CandidateEvaluation e = evaluate_candidate(ener, x, fresh_state(), f, true);

    const ChillerSpec& spec = plant().chillers[0];
    const double plr = q / chiller_capacity(spec, 7.0, 30.0);
    const double kwh = q / chiller_cop(spec, plr, 7.0, 30.0) / 1000.0;
    ASSERT_FALSE(e.plant_error);
    EXPECT_NEAR(e.penalty, 0.0, 1e-9);
    EXPECT_NEAR(e.fitness, 2.0 * kwh, 1e-6 * kwh);
    EXPECT_NEAR(e.worst_mismatch, 0.0, 1e-9);
    ASSERT_EQ(e.trajectory.size(), 2u);

    const EvaluationContext econ{&plant(), &constraints(), ObjectiveKind::Economic, 3600.0};
    EXPECT_NEAR(evaluate_candidate(econ, x, fresh_state(), f).fitness, 0.2 * 2.0 * kwh, 1e-6 * kwh);
}

TEST(Evaluate, FlatTariffRanksCandidatesIdentically)
{
    const double c = 0.137;
    const HorizonForecast f = flat_forecast(3, 1500e3, 33.0, c);
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const EvaluationContext econ{&plant(), &constraints(), ObjectiveKind::Economic, 3600.0};
    const GenomeLayout layout = horizon_layout(plant().size(), 3);
    Rng rng(21);
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 0; i < 200; ++i) {
        Genome g;
        for (std::size_t k = 0; k < layout.continuous; ++k) {
            g.continuous.push_back(rng.uniform());
        }
        for (std::size_t k = 0; k < layout.binary; ++k) {
            g.binary.push_back(rng.coin());
        }
        const DecisionVector x = decode(g, constraints().bounds, 3);
        a.push_back(evaluate_candidate(ener, x, fresh_state(), f).fitness);
        b.push_back(evaluate_candidate(econ, x, fresh_state(), f).fitness);
        if (a.back() < kSentinelFitness) {
            EXPECT_NEAR(b.back(), c * a.back(), 1e-9 * a.back());
        }
    }
    EXPECT_EQ(std::min_element(a.begin(), a.end()) - a.begin(), std::min_element(b.begin(), b.end()) - b.begin());
    std::vector<std::size_t> ra(a.size());
    std::vector<std::size_t> rb(b.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ra[i] = rb[i] = i;
    }
    std::stable_sort(ra.begin(), ra.end(), [&](auto i, auto j) { return a[i] < a[j]; });
    std::stable_sort(rb.begin(), rb.end(), [&](auto i, auto j) { return b[i] < b[j]; });
    EXPECT_EQ(ra, rb);
}

TEST(Evaluate, UnderDeliveryPaysTheDemandPenalty)
{
    // The 375 kW unit alone facing 10% more than it can give.
    const double cap = chiller_capacity(plant().chillers[3], 7.0, 30.0);
    const double q = cap / 0.9;
    DecisionVector short_x;
    short_x.periods = {single_unit(3, 28.4, 28.4)};
    DecisionVector ok_x;
    ok_x.periods = {single_unit(0, 40.0, 40.0)};
    const HorizonForecast f = flat_forecast(1, q, 30.0, 0.1);
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const CandidateEvaluation bad = evaluate_candidate(ener, short_x, fresh_state(), f, true);
    const CandidateEvaluation good = evaluate_candidate(ener, ok_x, fresh_state(), f);
    ASSERT_FALSE(bad.plant_error);
    EXPECT_NEAR(bad.trajectory[0].unmet / q, 0.1, 1e-6);
    const double floor = constraints().weights.demand * 0.1 * 0.1;
    EXPECT_GE(bad.penalty, floor * (1 - 1e-6));
    EXPECT_GE(bad.fitness - good.fitness, floor - good.fitness);
    EXPECT_GT(bad.fitness, good.fitness);
}

TEST(Evaluate, EconomicPenaltiesAreInMoney)
{
    const double cap = chiller_capacity(plant().chillers[3], 7.0, 30.0);
    DecisionVector x;
    x.periods = {single_unit(3, 28.4, 28.4), single_unit(3, 28.4, 28.4)};
    HorizonForecast f = flat_forecast(2, cap / 0.9, 30.0, 0.1);
    f.prices = {0.1, 0.3};
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const EvaluationContext econ{&plant(), &constraints(), ObjectiveKind::Economic, 3600.0};
    const auto a = evaluate_candidate(ener, x, fresh_state(), f);
    const auto b = evaluate_candidate(econ, x, fresh_state(), f);
    EXPECT_NEAR(b.penalty, 0.2 * a.penalty, 1e-9 * a.penalty);
    EXPECT_NEAR(b.base_cost, a.cost_eur, 1e-9);
}

TEST(Evaluate, MassImbalanceIsPenalizedNotFatal)
{
    DecisionVector x;
    x.periods = {single_unit(0, 34.0, 60.0)};  // load asks for more than the chiller moves
    const HorizonForecast f = flat_forecast(1, 800e3, 30.0, 0.1);
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const auto e = evaluate_candidate(ener, x, fresh_state(), f);
    ASSERT_FALSE(e.plant_error);
    EXPECT_GE(e.penalty, constraints().weights.mass_balance * 26.0 * 26.0 * (1 - 1e-9));
}

TEST(Evaluate, PlantErrorsGetTheSentinel)
{
    DecisionVector x;
    x.periods = {single_unit(0, 34.0, 34.0)};
    x.periods[0].on[0] = false;
    const HorizonForecast f = flat_forecast(1, 800e3, 30.0, 0.1);
    const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const auto e = evaluate_candidate(ener, x, fresh_state(), f);
    EXPECT_TRUE(e.plant_error);
    EXPECT_EQ(e.fitness, kSentinelFitness);
    EXPECT_THROW(evaluate_candidate(ener, x, fresh_state(), flat_forecast(2, 1.0, 30.0, 0.1)), Error);
}

TEST(Heuristics, SeedsAreFeasibleAndWithinBounds)
{
    SynthOptions so;
    so.hours = 24;
    const Scenario s = synth_scenario(so);
    const TariffConfig& tc = default_tariff_config();
    for (std::size_t hour : {0u, 9u, 20u}) {
        const HorizonForecast f = forecast_at(s, hour, 24, tc.find("A"), tc.calendar);
        const auto seeds = heuristic_trajectories(plant(), constraints(), f, fresh_state());
        EXPECT_GE(seeds.size(), 10u);
        const EvaluationContext ener{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
        for (const auto& x : seeds) {
            EXPECT_NO_THROW(check_decision_vector(x, constraints().bounds, 24));
            const auto e = evaluate_candidate(ener, x, fresh_state(), f);
            EXPECT_FALSE(e.plant_error);
        }
    }
}

TEST(ShiftGenome, DropsFirstPeriodAndRepeatsLast)
{
    const std::size_t n = plant().size();
    const GenomeLayout layout = horizon_layout(n, 3);
    Genome g;
    for (std::size_t k = 0; k < layout.continuous; ++k) {
        g.continuous.push_back(static_cast<double>(k) / static_cast<double>(layout.continuous));
    }
    for (std::size_t k = 0; k < layout.binary; ++k) {
        g.binary.push_back(static_cast<std::uint8_t>(k % 3 == 0));
    }
    const Genome s = shift_genome(g, n, 3);
    const std::size_t nc = layout.continuous / 3;
    const std::size_t nb = layout.binary / 3;
    for (std::size_t k = 0; k < nc; ++k) {
        EXPECT_EQ(s.continuous[k], g.continuous[nc + k]);
        EXPECT_EQ(s.continuous[nc + k], g.continuous[2 * nc + k]);
        EXPECT_EQ(s.continuous[2 * nc + k], g.continuous[2 * nc + k]);
    }
    for (std::size_t k = 0; k < nb; ++k) {
        EXPECT_EQ(s.binary[k], g.binary[nb + k]);
        EXPECT_EQ(s.binary[2 * nb + k], g.binary[2 * nb + k]);
    }
    EXPECT_THROW(shift_genome(g, n, 2), Error);
}

TEST(SolveHorizon, SameSeedSameAnswer)
{
    const HorizonForecast f = flat_forecast(3, 1200e3, 31.0, 0.15);
    const EvaluationContext ctx{&plant(), &constraints(), ObjectiveKind::Economic, 3600.0};
    const auto a = solve_horizon(ctx, fresh_state(), f, small_ga(30, 8), 99);
    const auto b = solve_horizon(ctx, fresh_state(), f, small_ga(30, 8), 99);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.fitness, b.fitness);
    GaConfig parallel = small_ga(30, 8);
    parallel.workers = 3;
    EXPECT_EQ(solve_horizon(ctx, fresh_state(), f, parallel, 99).x, a.x);
}

TEST(SolveHorizon, SingleSmallLoadUsesOneChiller)
{
    // Demand equal to the smallest unit's minimum output; flat tariff.
    const double t_env = 30.0;
    const double q = plant().min_plr * chiller_capacity(plant().chillers[3], 7.0, t_env);
    const HorizonForecast f = flat_forecast(1, q, t_env, 0.1);
    const EvaluationContext ctx{&plant(), &constraints(), ObjectiveKind::Economic, 3600.0};
    const auto sol = solve_horizon(ctx, fresh_state(), f, small_ga(200, 150), 4);

    // Grid oracle over on-sets, flows and set-points, storage idle.
    const DecisionBounds& b = constraints().bounds;
    const std::size_t n = plant().size();
    double oracle = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            for (double t : {5.0, 6.0, 7.0, 8.0, 9.0}) {
                PeriodDecision d;
                double mc = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    d.on.push_back((mask >> i) & 1u);
                    d.m_dot.push_back(b.m_dot[i].from_unit(u));
                    d.t_out_ref.push_back(t);
                    mc += d.on[i] ? d.m_dot[i] : 0.0;
                }
                d.m_dot_load = std::max(b.m_dot_load.lo, std::min(mc, b.m_dot_load.hi));
                d.m_dot_tes = b.m_dot_tes.lo;
                const auto e = evaluate_candidate(ctx, DecisionVector{{d}}, fresh_state(), f);
                oracle = std::min(oracle, e.fitness);
            }
        }
    }
    EXPECT_LE(sol.fitness, oracle * 1.02);
    const PeriodDecision& d = sol.x.periods[0];
    EXPECT_EQ(std::count(d.on.begin(), d.on.end(), true), 1);
    const auto e = evaluate_candidate(ctx, sol.x, fresh_state(), f, true);
    EXPECT_LE(std::abs(e.trajectory[0].unmet), constraints().demand_tolerance * q);
}

TEST(SolveHorizon, ZeroDemandKeepsTheFootprintMinimal)
{
    const HorizonForecast f = flat_forecast(2, 0.0, 28.0, 0.1);
    const EvaluationContext ctx{&plant(), &constraints(), ObjectiveKind::Energetic, 3600.0};
    const auto sol = solve_horizon(ctx, fresh_state(12.0), f, small_ga(150, 120), 8);
    const auto e = evaluate_candidate(ctx, sol.x, fresh_state(12.0), f, true);
    for (std::size_t k = 0; k < 2; ++k) {
        const PeriodDecision& d = sol.x.periods[k];
        EXPECT_EQ(std::count(d.on.begin(), d.on.end(), true), 1);
        // Storage either idles or soaks up the minimum-output surplus; it never supplies cooling.
        EXPECT_GE(e.trajectory[k].q_tes, 0.0);
    }
}

TEST(ControllerConfig, RoundTripsThroughText)
{
    ControllerConfig cfg;
    ConstraintSet cs = constraints();
    cfg.objective = ObjectiveKind::Economic;
    cfg.ga.population = 64;
    cfg.ga.generations = 12;
    cfg.tank_initial = 9.5;
    cs.weights.demand = 5e5;
    cs.soft.delta_t_min = 3.0;
    cs.bounds.m_dot_tes = Range{2.0, 40.0};
    const std::string text = format_controller_config(cfg, cs);

    ControllerConfig cfg2;
    ConstraintSet cs2 = constraints();
    apply_controller_config(text, cfg2, cs2, "ctl.txt");
    EXPECT_EQ(format_controller_config(cfg2, cs2), text);
    EXPECT_EQ(cfg2.objective, ObjectiveKind::Economic);
    EXPECT_EQ(cfg2.ga.population, 64u);
    EXPECT_EQ(cs2.bounds.m_dot_tes.hi, 40.0);
}

TEST(ControllerConfig, RejectsUnknownKeysAndBadValues)
{
    ControllerConfig cfg;
    ConstraintSet cs = constraints();
    EXPECT_THROW(apply_controller_config("[ga]\npopulaton = 3\n", cfg, cs), Error);
    EXPECT_THROW(apply_controller_config("[constraints]\nmu_tank = -1\n", cfg, cs), Error);
    EXPECT_THROW(apply_controller_config("[controller]\nobjective = fast\n", cfg, cs), Error);
    EXPECT_THROW(apply_controller_config("[ga]\ntournament = 500\n", cfg, cs), Error);
    ControllerConfig full;
    ConstraintSet cs2 = constraints();
    apply_controller_config("[controller]\nprofile = full\n", full, cs2);
    EXPECT_EQ(full.ga.population, 3000u);
}

namespace {

Scenario steady_scenario(std::size_t hours, std::size_t horizon, double q)
{
    Scenario s;
    s.name = "steady";
    s.start = parse_timestamp("2023-07-04T00:00:00");
    s.hours = hours;
    s.horizon = horizon;
    s.season = "high";
    s.q_load_real.assign(hours + horizon, q);
    s.q_load_forecast = s.q_load_real;
    s.t_env_real.assign(hours + horizon, 30.0);
    s.t_env_forecast = s.t_env_real;
    return s;
}

RunContext small_run(const Scenario& s, ObjectiveKind obj, std::size_t population, int generations)
{
    const TariffConfig& tc = default_tariff_config();
    RunContext rc;
    rc.plant = &plant();
    rc.constraints = &constraints();
    rc.tariff = &tc.find("A");
    rc.calendar = &tc.calendar;
    rc.controller.objective = obj;
    rc.controller.horizon = s.horizon;
    rc.controller.ga = small_ga(population, generations);
    rc.seed = 17;
    return rc;
}

}  // namespace

TEST(RecedingHorizon, OneDayBookkeeping)
{
    SynthOptions so;
    so.hours = 24;
    so.horizon = 6;
    const Scenario s = synth_scenario(so);
    RunContext rc = small_run(s, ObjectiveKind::Energetic, 24, 4);
    std::vector<DecisionVector> plans;
    rc.on_hour = [&](const HourRecord&, const GaResult& ga) {
        plans.push_back(decode(ga.best, constraints().bounds, 6));
    };
    const SimulationReport r = receding_horizon_run(s, rc);
    ASSERT_EQ(r.hours.size(), 24u);
    ASSERT_EQ(plans.size(), 24u);
    double kwh = 0.0;
    double eur = 0.0;
    double demand = 0.0;
    double served = 0.0;
    for (std::size_t h = 0; h < 24; ++h) {
        const HourRecord& rec = r.hours[h];
        double p = 0.0;
        for (double w : rec.outcome.p_electric) {
            p += w;
        }
        kwh += p / 1000.0;
        eur += p / 1000.0 * rec.price;
        demand += s.q_load_real[h];
        served += rec.outcome.q_delivered + rec.outcome.unmet;
        EXPECT_EQ(rec.outcome.q_load, s.q_load_real[h]);
        EXPECT_EQ(rec.period, period_at(default_tariff_config().calendar, s.time_at(h)));
        if (!rec.fallback) {
            EXPECT_EQ(rec.decision, limit_flows_to_mass_balance(plans[h].periods.front()).decision);
        }
    }
    EXPECT_NEAR(r.energy_mwh, kwh / 1000.0, 1e-9 * kwh);
    EXPECT_NEAR(r.cost_keur, eur / 1000.0, 1e-9 * eur);
    EXPECT_NEAR(served, demand, 1e-6 * demand);
    EXPECT_EQ(r.meta.hours, 24u);
    EXPECT_EQ(r.meta.objective, "energetic");
}

TEST(RecedingHorizon, TankStateCarriesBetweenHours)
{
    SynthOptions so;
    so.hours = 8;
    so.horizon = 4;
    const Scenario s = synth_scenario(so);
    const SimulationReport r = receding_horizon_run(s, small_run(s, ObjectiveKind::Economic, 20, 3));
    for (std::size_t h = 1; h < r.hours.size(); ++h) {
        EXPECT_EQ(r.hours[h].outcome.t_tank_start, r.hours[h - 1].outcome.t_tank);
    }
    EXPECT_EQ(r.hours[0].outcome.t_tank_start, 10.0);
}

TEST(RecedingHorizon, PerfectForecastSteadyLoadIsServed)
{
    const Scenario s = steady_scenario(6, 4, 800e3);
    const SimulationReport r = receding_horizon_run(s, small_run(s, ObjectiveKind::Energetic, 60, 30));
    for (const HourRecord& h : r.hours) {
        EXPECT_TRUE(h.within_tolerance) << "hour " << h.hour << " unmet " << h.outcome.unmet;
    }
}

TEST(RecedingHorizon, SameInputsSameReport)
{
    const Scenario s = steady_scenario(4, 3, 1500e3);
    const auto rc = small_run(s, ObjectiveKind::Economic, 20, 4);
    EXPECT_EQ(format_hourly_csv(receding_horizon_run(s, rc)), format_hourly_csv(receding_horizon_run(s, rc)));
}

TEST(RecedingHorizon, ShortScenarioIsRejected)
{
    Scenario s = steady_scenario(4, 3, 1500e3);
    auto rc = small_run(s, ObjectiveKind::Economic, 20, 4);
    rc.controller.horizon = 6;
    EXPECT_THROW(receding_horizon_run(s, rc), Error);
}
