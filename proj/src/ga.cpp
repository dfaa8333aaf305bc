#include "coldplant/ga.hpp"

#include "coldplant/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include <omp.h>

namespace coldplant {

GaConfig GaConfig::desk()
{
    return GaConfig{};
}

GaConfig GaConfig::full_scale()
{
    GaConfig c;
    c.population = 3000;
    c.tournament = 69;
    c.mutation_rate = 0.1;
    c.alpha = 0.5;
    return c;
}

std::size_t GaConfig::elite_count() const
{
    if (elitism > 0) {
        return elitism;
    }
    return (population + 99) / 100;
}

void GaConfig::validate() const
{
    if (population < 2 || tournament < 1 || tournament >= population) {
        throw Error(ErrorCode::Config,
                    fmt::format("GA needs population > tournament >= 1 (population {}, tournament {})", population,
                                tournament));
    }
    if (!(alpha >= 0.0) || !(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw Error(ErrorCode::Config, "GA needs alpha >= 0 and mutation rate in [0, 1]");
    }
    if (generations < 0 || stagnation < 0 || workers < 1) {
        throw Error(ErrorCode::Config, "GA generations, stagnation must be >= 0 and workers >= 1");
    }
    if (elite_count() >= population) {
        throw Error(ErrorCode::Config, "GA elitism must leave room for offspring");
    }
}

namespace {

void check_layout(const Genome& g, const GenomeLayout& layout)
{
    if (g.layout() != layout) {
        throw Error(ErrorCode::LayoutMismatch,
                    fmt::format("genome has {}+{} genes, layout expects {}+{}", g.continuous.size(), g.binary.size(),
                                layout.continuous, layout.binary));
    }
}

Genome random_genome(const GenomeLayout& layout, Rng& rng)
{
    Genome g;
    g.continuous.resize(layout.continuous);
    g.binary.resize(layout.binary);
    for (double& v : g.continuous) {
        v = rng.uniform();
    }
    for (auto& b : g.binary) {
        b = rng.coin() ? 1 : 0;
    }
    return g;
}

// NaN never wins a comparison.
double sanitize(double cost)
{
    return std::isnan(cost) ? std::numeric_limits<double>::infinity() : cost;
}

}  // namespace

Population init_population(const GaConfig& cfg, const GenomeLayout& layout, std::uint64_t seed,
                           std::span<const Genome> warm_starts)
{
    if (warm_starts.size() > cfg.population) {
        throw Error(ErrorCode::Config, "more warm starts than population slots");
    }
    Population pop;
    pop.reserve(cfg.population);
    for (const Genome& g : warm_starts) {
        check_layout(g, layout);
        for (double v : g.continuous) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw Error(ErrorCode::Precondition, "warm start gene outside [0, 1]");
            }
        }
        pop.push_back(g);
    }
    Rng rng(seed);
    while (pop.size() < cfg.population) {
        pop.push_back(random_genome(layout, rng));
    }
    return pop;
}

std::size_t tournament_select(std::span<const double> fitness, std::size_t k, Rng& rng)
{
    const std::size_t n = fitness.size();
    if (n == 0) {
        throw Error(ErrorCode::Precondition, "tournament on an empty population");
    }
    if (k < 1 || k > n) {
        throw Error(ErrorCode::Precondition, fmt::format("tournament size {} outside [1, {}]", k, n));
    }
    // Partial Fisher-Yates over a virtual identity permutation; only swapped
    // slots are stored.
    std::vector<std::pair<std::size_t, std::size_t>> swapped;
    swapped.reserve(2 * k);
    auto slot = [&](std::size_t i) {
        for (const auto& [pos, val] : swapped) {
            if (pos == i) {
                return val;
            }
        }
        return i;
    };
    auto assign = [&](std::size_t i, std::size_t v) {
        for (auto& [pos, val] : swapped) {
            if (pos == i) {
                val = v;
                return;
            }
        }
        swapped.emplace_back(i, v);
    };
    std::size_t best = n;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t r = j + rng.index(n - j);
        const std::size_t picked = slot(r);
        assign(r, slot(j));
        assign(j, picked);
        if (best == n || fitness[picked] < fitness[best] || (fitness[picked] == fitness[best] && picked < best)) {
            best = picked;
        }
    }
    if (std::isnan(fitness[best])) {
        // Every contestant was NaN; fall back to the lowest index among them.
        for (std::size_t j = 0; j < k; ++j) {
            best = std::min(best, slot(j));
        }
    }
    return best;
}

std::vector<double> blx_alpha_raw(std::span<const double> p1, std::span<const double> p2, double alpha, Rng& rng)
{
    if (p1.size() != p2.size()) {
        throw Error(ErrorCode::LayoutMismatch, "parents have different continuous lengths");
    }
    std::vector<double> out(p1.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double lo = std::min(p1[i], p2[i]);
        const double hi = std::max(p1[i], p2[i]);
        const double d = hi - lo;
        out[i] = d == 0.0 ? lo : rng.uniform(lo - alpha * d, hi + alpha * d);
    }
    return out;
}

Genome blx_alpha_crossover(const Genome& p1, const Genome& p2, double alpha, Rng& rng)
{
    check_layout(p2, p1.layout());
    Genome child;
    child.continuous = blx_alpha_raw(p1.continuous, p2.continuous, alpha, rng);
    for (double& v : child.continuous) {
        v = std::clamp(v, 0.0, 1.0);
    }
    child.binary.resize(p1.binary.size());
    for (std::size_t i = 0; i < p1.binary.size(); ++i) {
        child.binary[i] = p1.binary[i] == p2.binary[i] ? p1.binary[i] : (rng.coin() ? p1.binary[i] : p2.binary[i]);
    }
    return child;
}

Genome mutate(const Genome& g, Rng& rng)
{
    Genome out = g;
    const bool has_c = !out.continuous.empty();
    const bool has_b = !out.binary.empty();
    if (!has_c && !has_b) {
        return out;
    }
    const bool bit_branch = has_c && has_b ? rng.coin() : has_b;
    if (bit_branch) {
        auto& b = out.binary[rng.index(out.binary.size())];
        b = b ? 0 : 1;
    } else {
        double& v = out.continuous[rng.index(out.continuous.size())];
        const double old = v;
        // Resample until the gene actually changes.
        do {
            v = rng.uniform();
        } while (v == old);
    }
    return out;
}

void evaluate_population_serial(const Population& pop, std::span<const std::size_t> which, const GenomeCost& fn,
                                std::span<double> costs)
{
    for (std::size_t i : which) {
        costs[i] = sanitize(fn(pop[i]));
    }
}

void evaluate_population_parallel(const Population& pop, std::span<const std::size_t> which, const GenomeCost& fn,
                                  std::span<double> costs, int workers)
{
    const auto n = static_cast<std::ptrdiff_t>(which.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::size_t i = which[static_cast<std::size_t>(j)];
        try {
            costs[i] = sanitize(fn(pop[i]));
        } catch (...) {
#pragma omp critical(coldplant_ga_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

GaResult evolve(const GenomeCost& fitness, const GaConfig& cfg, const GenomeLayout& layout, std::uint64_t seed,
                std::span<const Genome> warm_starts)
{
    cfg.validate();
    Population pop = init_population(cfg, layout, mix_seed(seed, 0), warm_starts);
    Rng rng(mix_seed(seed, 1));
    const std::size_t n = cfg.population;
    const std::size_t elites = cfg.elite_count();

    std::vector<double> costs(n, 0.0);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto evaluate = [&](std::span<const std::size_t> which) {
        if (cfg.workers > 1) {
            evaluate_population_parallel(pop, which, fitness, costs, cfg.workers);
        } else {
            evaluate_population_serial(pop, which, fitness, costs);
        }
    };
    evaluate(all);
    std::size_t evaluations = n;

    std::vector<std::size_t> order(n);
    auto rank = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    };

    GaResult result;
    auto record = [&](int generation) {
        GenerationStats s;
        s.generation = generation;
        s.best = costs[order.front()];
        s.worst = costs[order.back()];
        double sum = 0.0;
        for (double c : costs) {
            sum += c;
        }
        s.mean = sum / static_cast<double>(n);
        s.evaluations = evaluations;
        result.history.push_back(s);
    };

    rank();
    record(0);
    double best = costs[order.front()];
    int stagnant = 0;

    std::vector<std::size_t> offspring(n - elites);
    std::iota(offspring.begin(), offspring.end(), elites);
    for (int gen = 1; gen <= cfg.generations; ++gen) {
        Population next;
        next.reserve(n);
        std::vector<double> next_costs(n, 0.0);
        for (std::size_t e = 0; e < elites; ++e) {
            next.push_back(pop[order[e]]);
            next_costs[e] = costs[order[e]];
        }
        while (next.size() < n) {
            const std::size_t a = tournament_select(costs, cfg.tournament, rng);
            const std::size_t b = tournament_select(costs, cfg.tournament, rng);
            next.push_back(blx_alpha_crossover(pop[a], pop[b], cfg.alpha, rng));
        }
        for (std::size_t i = elites; i < n; ++i) {
            if (rng.uniform() < cfg.mutation_rate) {
                next[i] = mutate(next[i], rng);
            }
        }
        pop = std::move(next);
        costs = std::move(next_costs);
        evaluate(offspring);
        evaluations += offspring.size();
        rank();
        record(gen);

        const double gen_best = costs[order.front()];
        if (gen_best < best) {
            best = gen_best;
            stagnant = 0;
        } else if (cfg.stagnation > 0 && ++stagnant >= cfg.stagnation) {
            break;
        }
    }

    result.best = pop[order.front()];
    result.best_cost = costs[order.front()];
    result.final_population.reserve(n);
    result.final_costs.reserve(n);
    for (std::size_t i : order) {
        result.final_population.push_back(pop[i]);
        result.final_costs.push_back(costs[i]);
    }
    return result;
}

std::string format_history_csv(const std::vector<GenerationStats>& history)
{
    std::string out = "generation,best,mean,worst,evaluations\n";
    for (const auto& s : history) {
        out += fmt::format("{},{},{},{},{}\n", s.generation, s.best, s.mean, s.worst, s.evaluations);
    }
    return out;
}

GenomeLayout horizon_layout(std::size_t chillers, std::size_t horizon)
{
    return {horizon * (2 * chillers + 2), horizon * (chillers + 2)};
}

DecisionVector decode(const Genome& g, const DecisionBounds& bounds, std::size_t horizon)
{
    const std::size_t n = bounds.chillers();
    check_layout(g, horizon_layout(n, horizon));
    const std::size_t nc = 2 * n + 2;
    const std::size_t nb = n + 2;
    DecisionVector x;
    x.periods.resize(horizon);
    for (std::size_t k = 0; k < horizon; ++k) {
        const double* c = g.continuous.data() + k * nc;
        const std::uint8_t* b = g.binary.data() + k * nb;
        PeriodDecision& d = x.periods[k];
        std::size_t strongest = 0;
        bool any_on = false;
        for (std::size_t i = 0; i < n; ++i) {
            d.m_dot.push_back(bounds.m_dot[i].from_unit(c[i]));
            d.t_out_ref.push_back(bounds.t_out[i].from_unit(c[n + i]));
            d.on.push_back(b[i] != 0);
            any_on = any_on || b[i] != 0;
            if (c[i] > c[strongest]) {
                strongest = i;
            }
        }
        if (!any_on) {
            d.on[strongest] = true;
        }
        d.m_dot_load = bounds.m_dot_load.from_unit(c[2 * n]);
        d.m_dot_tes = bounds.m_dot_tes.from_unit(c[2 * n + 1]);
        d.tes_on = b[n] != 0;
        d.mode = b[n + 1] != 0 ? TesMode::Discharging : TesMode::Charging;
    }
    return x;
}

Genome encode(const DecisionVector& x, const DecisionBounds& bounds)
{
    const std::size_t n = bounds.chillers();
    const std::size_t horizon = x.horizon();
    Genome g;
    g.continuous.reserve(horizon * (2 * n + 2));
    g.binary.reserve(horizon * (n + 2));
    for (const PeriodDecision& d : x.periods) {
        if (d.m_dot.size() != n || d.t_out_ref.size() != n || d.on.size() != n) {
            throw Error(ErrorCode::LayoutMismatch, "decision does not match the bounds' chiller count");
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.continuous.push_back(std::clamp(bounds.m_dot[i].to_unit(d.m_dot[i]), 0.0, 1.0));
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.continuous.push_back(std::clamp(bounds.t_out[i].to_unit(d.t_out_ref[i]), 0.0, 1.0));
        }
        g.continuous.push_back(std::clamp(bounds.m_dot_load.to_unit(d.m_dot_load), 0.0, 1.0));
        g.continuous.push_back(std::clamp(bounds.m_dot_tes.to_unit(d.m_dot_tes), 0.0, 1.0));
        for (std::size_t i = 0; i < n; ++i) {
            g.binary.push_back(d.on[i] ? 1 : 0);
        }
        g.binary.push_back(d.tes_on ? 1 : 0);
        g.binary.push_back(d.mode == TesMode::Discharging ? 1 : 0);
    }
    return g;
}

}  // namespace coldplant
