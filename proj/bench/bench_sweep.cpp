// Parallel sweeps against their serial references on the 8-pole layout.

#include "tapline/netsim.hpp"
#include "tapline/topology.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tapline;

FilterLayout ku8_layout() {
    LayoutInputs in;
    in.band = BandSpec::from_center(8, 0.2, 13.2e9, 0.2);
    in.substrate = Substrate{11.9, 200e-6, 0.0, 154.0};
    in.tap_ratio = 0.55;
    in.resonator_eps_eff = 10.79;
    in.zeros = ZeroInputs{{10e9, 11e9}, {15e9, 16e9}, 10.5e9, 15.5e9, 12.49, {}};
    return make_layout(in);
}

template <auto Sweep>
void bm_cascade(benchmark::State& state) {
    const CircuitNet net = build_circuit(ku8_layout());
    const auto grid = linear_grid(6.6e9, 21.12e9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(net, grid, 50.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Sweep>
void bm_cm(benchmark::State& state) {
    const CmModel model = cm_model(ku8_layout());
    const auto grid = linear_grid(6.6e9, 21.12e9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(model, grid, 50.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_cascade<cascade_sweep>)->Name("cascade_sweep")->Arg(1601)->Arg(16001);
BENCHMARK(bm_cascade<cascade_sweep_serial>)->Name("cascade_sweep_serial")->Arg(1601)->Arg(16001);
BENCHMARK(bm_cm<cm_response>)->Name("cm_response")->Arg(1601)->Arg(16001);
BENCHMARK(bm_cm<cm_response_serial>)->Name("cm_response_serial")->Arg(1601)->Arg(16001);

BENCHMARK_MAIN();
