#pragma once

#include "coldplant/decision.hpp"
#include "coldplant/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coldplant {

struct GenomeLayout {
    std::size_t continuous = 0;
    std::size_t binary = 0;

    bool operator==(const GenomeLayout&) const = default;
};

/// Mixed genome: continuous genes normalized to [0, 1] plus bits.
struct Genome {
    std::vector<double> continuous;
    std::vector<std::uint8_t> binary;

    GenomeLayout layout() const { return {continuous.size(), binary.size()}; }
    bool operator==(const Genome&) const = default;
};

using Population = std::vector<Genome>;

struct GaConfig {
    std::size_t population = 200;
    std::size_t tournament = 5;
    double mutation_rate = 0.1;  // fraction of non-elite individuals mutated per generation
    double alpha = 0.5;
    int generations = 150;
    int stagnation = 30;          // stop after this many generations without improvement; 0 disables
    std::size_t elitism = 0;      // 0 selects ceil(1% of population)
    int workers = 1;              // fitness evaluation threads

    static GaConfig desk();
    static GaConfig full_scale();

    std::size_t elite_count() const;
    void validate() const;
};

Population init_population(const GaConfig& cfg, const GenomeLayout& layout, std::uint64_t seed,
                           std::span<const Genome> warm_starts = {});

/// Index of the best of k distinct, uniformly drawn contestants; ties go to the lower index.
std::size_t tournament_select(std::span<const double> fitness, std::size_t k, Rng& rng);

/// Continuous genes by BLX-alpha (clamped to [0, 1]), bits by uniform crossover.
Genome blx_alpha_crossover(const Genome& p1, const Genome& p2, double alpha, Rng& rng);

/// Unclamped BLX-alpha draws, exposed so the interval law can be checked.
std::vector<double> blx_alpha_raw(std::span<const double> p1, std::span<const double> p2, double alpha, Rng& rng);

/// Resamples one continuous gene or flips one bit, each branch with probability 1/2.
Genome mutate(const Genome& g, Rng& rng);

using GenomeCost = std::function<double(const Genome&)>;

/// Fills costs[i] = fn(pop[i]) for the indices in `which`. fn must be safe to call concurrently.
void evaluate_population_serial(const Population& pop, std::span<const std::size_t> which, const GenomeCost& fn,
                                std::span<double> costs);
void evaluate_population_parallel(const Population& pop, std::span<const std::size_t> which, const GenomeCost& fn,
                                  std::span<double> costs, int workers);

struct GenerationStats {
    int generation = 0;
    double best = 0.0;  // best so far
    double mean = 0.0;  // over the current population
    double worst = 0.0;
    std::size_t evaluations = 0;  // cumulative
};

struct GaResult {
    Genome best;
    double best_cost = 0.0;
    std::vector<GenerationStats> history;
    Population final_population;  // sorted by cost, best first
    std::vector<double> final_costs;
};

GaResult evolve(const GenomeCost& fitness, const GaConfig& cfg, const GenomeLayout& layout, std::uint64_t seed,
                std::span<const Genome> warm_starts = {});

std::string format_history_csv(const std::vector<GenerationStats>& history);

// Horizon encoding. Per period, continuous genes are
//   m_1..m_n, t_1..t_n, m_load, m_tes
// and bits are
//   on_1..on_n, tes_on, discharging.
GenomeLayout horizon_layout(std::size_t chillers, std::size_t horizon);

DecisionVector decode(const Genome& g, const DecisionBounds& bounds, std::size_t horizon);
Genome encode(const DecisionVector& x, const DecisionBounds& bounds);

}  // namespace coldplant
