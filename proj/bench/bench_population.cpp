#include "coldplant/chiller_data.hpp"
#include "coldplant/ga.hpp"
#include "coldplant/mpc.hpp"
#include "coldplant/tariff.hpp"

#include <benchmark/benchmark.h>

#include <numeric>

using namespace coldplant;

namespace {

struct Fixture {
    PlantConfig plant = default_plant();
    ConstraintSet cs = default_constraints(plant);
    HorizonForecast f;
    PlantState s0;
    Population pop;
    std::vector<std::size_t> which;
    GenomeCost cost;

    explicit Fixture(std::size_t population)
    {
        for (std::size_t k = 0; k < 24; ++k) {
            f.q_load.push_back(k >= 9 && k < 19 ? 2200e3 : 500e3);
            f.t_env.push_back(28.0 + 6.0 * (k >= 12 && k < 18));
            f.prices.push_back(k >= 9 && k < 14 ? 0.2998 : 0.0991);
        }
        s0.tes.temperature = 10.0;
        s0.chiller_on.assign(plant.size(), false);
        GaConfig cfg;
        cfg.population = population;
        pop = init_population(cfg, horizon_layout(plant.size(), 24), 7);
        which.resize(pop.size());
        std::iota(which.begin(), which.end(), std::size_t{0});
        cost = [this](const Genome& g) {
            const EvaluationContext ctx{&plant, &cs, ObjectiveKind::Economic, 3600.0};
            return evaluate_candidate(ctx, decode(g, cs.bounds, 24), s0, f).fitness;
        };
    }
};

void BM_EvaluateSerial(benchmark::State& state)
{
    Fixture fx(static_cast<std::size_t>(state.range(0)));
    std::vector<double> costs(fx.pop.size());
    for (auto _ : state) {
        evaluate_population_serial(fx.pop, fx.which, fx.cost, costs);
        benchmark::DoNotOptimize(costs.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.pop.size()));
}

void BM_EvaluateParallel(benchmark::State& state)
{
    Fixture fx(static_cast<std::size_t>(state.range(0)));
    std::vector<double> costs(fx.pop.size());
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        evaluate_population_parallel(fx.pop, fx.which, fx.cost, costs, workers);
        benchmark::DoNotOptimize(costs.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.pop.size()));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)
    ->ArgsProduct({{200, 1000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
