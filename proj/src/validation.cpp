#include "coldplant/validation.hpp"

#include "coldplant/chiller_data.hpp"
#include "coldplant/error.hpp"
#include "coldplant/ga.hpp"
#include "coldplant/rng.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace coldplant {

namespace {

namespace rd = reference_data;

bool close(double a, double b, double rel, double abs_floor = 1e-9)
{
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0}) + abs_floor;
}

CheckResult grid_check(const std::vector<ChillerSpec>& chillers, bool full_load)
{
    CheckResult r{full_load ? "full-load COP grid exactness" : "part-load COP grid exactness", true, ""};
    if (chillers.size() != rd::kUnits) {
        r.passed = false;
        r.detail = fmt::format("expected {} chillers, found {}", rd::kUnits, chillers.size());
        return r;
    }
    int bad = 0;
    for (std::size_t u = 0; u < rd::kUnits; ++u) {
        if (full_load) {
            for (std::size_t e = 0; e < 2; ++e) {
                for (std::size_t c = 0; c < 2; ++c) {
                    const double got = chiller_cop(chillers[u], 1.0, rd::kElwt[e], rd::kCaet[c]);
                    if (std::abs(got - rd::kFullLoadCop[u][e][c]) > 1e-9) {
                        if (bad++ == 0) {
                            r.detail = fmt::format("{} at ELWT {} / CAET {}: {} (want {})", chillers[u].name,
                                                   rd::kElwt[e], rd::kCaet[c], got, rd::kFullLoadCop[u][e][c]);
                        }
                    }
                }
            }
        } else {
            for (std::size_t p = 0; p < rd::kPlr.size(); ++p) {
                const double got = chiller_cop(chillers[u], rd::kPlr[p], rd::kPartLoadElwt, rd::kPartLoadCaet);
                if (std::abs(got - rd::kPartLoadCop[u][p]) > 1e-9) {
                    if (bad++ == 0) {
                        r.detail = fmt::format("{} at PLR {}: {} (want {})", chillers[u].name, rd::kPlr[p], got,
                                               rd::kPartLoadCop[u][p]);
                    }
                }
            }
        }
    }
    r.passed = bad == 0;
    if (r.passed) {
        r.detail = "16 nodes";
    } else {
        r.detail = fmt::format("{} of 16 nodes off; first: {}", bad, r.detail);
    }
    return r;
}

CheckResult tank_check(Rng& rng, int cases)
{
    const WaterProperties w;
    int bad = 0;
    std::string first;
    for (int i = 0; i < cases; ++i) {
        const TesState s{rng.uniform(4.0, 16.0), rng.uniform(100.0, 2000.0)};
        const double t_in = rng.uniform(4.0, 16.0);
        const double m = rng.uniform(0.1, 60.0);
        const double dt = rng.uniform(60.0, 7200.0);
        const TesStepResult r = tes_step(s, m, t_in, dt, w);
        const double mass = w.rho * s.volume;
        const double t1 = t_in + (s.temperature - t_in) * std::exp(-m * dt / mass);
        const double stored = mass * w.cp * (s.temperature - r.state.temperature);
        if (!close(r.state.temperature, t1, 1e-6) || !close(r.q_tes * dt, stored, 1e-6, 1e-3)) {
            if (bad++ == 0) {
                first = fmt::format("case {}: T1 {} vs {}", i, r.state.temperature, t1);
            }
        }
    }
    return {"tank closed form", bad == 0, bad == 0 ? fmt::format("{} cases", cases) : first};
}

bool balanced(const NodeBalance& n)
{
    double m_in = 0.0;
    double m_out = 0.0;
    double e_in = 0.0;
    double e_out = 0.0;
    for (const Stream& s : n.in) {
        m_in += s.m_dot;
        e_in += s.m_dot * s.t;
    }
    for (const Stream& s : n.out) {
        m_out += s.m_dot;
        e_out += s.m_dot * s.t;
    }
    return close(m_in, m_out, 1e-6) && close(e_in, e_out, 1e-6);
}

CheckResult bypass_check(Rng& rng, int cases)
{
    int bad = 0;
    std::string first;
    for (int i = 0; i < cases; ++i) {
        BypassInputs in;
        in.m_dot_chillers = rng.uniform(10.0, 250.0);
        in.t_mix = rng.uniform(5.0, 9.0);
        in.t_load_return = rng.uniform(9.0, 16.0);
        in.t_tes = rng.uniform(5.0, 15.0);
        in.tes_on = rng.coin();
        in.mode = rng.coin() ? TesMode::Discharging : TesMode::Charging;
        if (in.tes_on && in.mode == TesMode::Discharging) {
            in.m_dot_tes = rng.uniform(1.0, 50.0);
            in.m_dot_load = rng.uniform(in.m_dot_tes, in.m_dot_chillers + in.m_dot_tes);
        } else if (in.tes_on) {
            in.m_dot_tes = rng.uniform(1.0, 0.5 * in.m_dot_chillers);
            in.m_dot_load = rng.uniform(1.0, in.m_dot_chillers - in.m_dot_tes);
        } else {
            in.m_dot_load = rng.uniform(1.0, in.m_dot_chillers);
        }
        const BypassResult r = bypass_balance(in);
        if (!balanced(r.node_a) || !balanced(r.node_b)) {
            if (bad++ == 0) {
                first = fmt::format("case {} fails a node balance", i);
            }
        }
    }
    return {"bypass node balances", bad == 0, bad == 0 ? fmt::format("{} cases", cases) : first};
}

CheckResult bookkeeping_check(const PlantConfig& plant, Rng& rng, int cases)
{
    const DecisionBounds b = default_bounds(plant);
    int bad = 0;
    int rejected = 0;
    std::string first;
    for (int i = 0; i < cases; ++i) {
        PeriodDecision d;
        for (std::size_t c = 0; c < plant.size(); ++c) {
            d.on.push_back(rng.coin());
            d.m_dot.push_back(b.m_dot[c].from_unit(rng.uniform()));
            d.t_out_ref.push_back(b.t_out[c].from_unit(rng.uniform()));
        }
        d.on[rng.index(plant.size())] = true;
        d.m_dot_load = b.m_dot_load.from_unit(rng.uniform());
        d.m_dot_tes = b.m_dot_tes.from_unit(rng.uniform());
        d.tes_on = rng.coin();
        d.mode = rng.coin() ? TesMode::Discharging : TesMode::Charging;
        d = limit_flows_to_mass_balance(d).decision;
        PlantState s;
        s.tes = TesState{rng.uniform(5.0, 15.0), plant.tank_volume};
        s.chiller_on.assign(plant.size(), false);
        const double q = rng.uniform(0.0, 4000e3);
        try {
            const PeriodOutcome o = plant_step(plant, s, d, q, rng.uniform(15.0, 45.0), 3600.0).outcome;
            const bool ok = close(o.q_chillers, o.q_delivered + o.q_tes, 1e-6, 1e-6)
                && close(o.unmet, q - o.q_delivered, 1e-6, 1e-6);
            if (!ok && bad++ == 0) {
                first = fmt::format("case {}: q_chillers {} vs delivered {} + tes {}", i, o.q_chillers, o.q_delivered,
                                    o.q_tes);
            }
        } catch (const Error&) {
            ++rejected;
        }
    }
    return {"plant_step bookkeeping", bad == 0,
            bad == 0 ? fmt::format("{} cases ({} rejected by the plant)", cases, rejected) : first};
}

CheckResult ga_check(std::uint64_t seed)
{
    GaConfig cfg;
    cfg.population = 100;
    cfg.generations = 200;
    cfg.stagnation = 0;
    auto sphere = [](const Genome& g) {
        double s = 0.0;
        for (double u : g.continuous) {
            s += (10.0 * u - 5.0) * (10.0 * u - 5.0);
        }
        return s;
    };
    auto onemax = [](const Genome& g) { return static_cast<double>(std::count(g.binary.begin(), g.binary.end(), 0)); };
    const double s = evolve(sphere, cfg, {5, 0}, seed).best_cost;
    const double o = evolve(onemax, cfg, {0, 20}, seed).best_cost;
    return {"GA sphere and onemax", s < 1e-3 && o == 0.0, fmt::format("sphere {:.2e}, onemax misses {}", s, o)};
}

}  // namespace

std::vector<CheckResult> run_model_checks(const std::vector<ChillerSpec>& chillers, std::uint64_t seed,
                                          int random_cases)
{
    std::vector<CheckResult> out;
    out.push_back(grid_check(chillers, true));
    out.push_back(grid_check(chillers, false));
    const double p = chiller_electric_power(1407.1e3, 3.1);
    out.push_back({"electric power example", std::abs(p - 453.9e3) <= 100.0, fmt::format("{:.1f} kW", p / 1e3)});

    Rng rng(mix_seed(seed, 7));
    out.push_back(tank_check(rng, random_cases));
    out.push_back(bypass_check(rng, random_cases));
    PlantConfig plant = default_plant();
    plant.chillers = chillers;
    try {
        out.push_back(bookkeeping_check(plant, rng, random_cases));
    } catch (const Error& e) {
        out.push_back({"plant_step bookkeeping", false, e.what()});
    }
    out.push_back(ga_check(seed));
    return out;
}

}  // namespace coldplant
