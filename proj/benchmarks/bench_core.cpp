// bench_core.cpp — timing of self-energy, census, survival and lattice propagation

#include <benchmark/benchmark.h>

#include "friedrichs/bound_states.hpp"
#include "friedrichs/dynamics.hpp"
#include "friedrichs/lattice_oracle.hpp"
#include "friedrichs/markovian.hpp"
#include "friedrichs/spectral.hpp"
#include "friedrichs/waveguide.hpp"

using namespace friedrichs;

namespace {

WaveguideParams fig4(AttachmentSite site) {
    WaveguideParams p;
    p.n_atoms = 3;
    p.lambda = 1.0;
    p.kappa = 0.75;
    p.xi = 0.25;
    p.site = site;
    return p;
}

std::vector<double> grid(double t_max, int points) {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) t[i] = t_max * i / (points - 1);
    return t;
}

void BM_SelfEnergyQuadrature(benchmark::State& state) {
    ValidatedModel m = validate_model(build_waveguide_model(fig4(AttachmentSite::at(3))));
    double e = 1.6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(self_energy(m, e, Evaluation::Quadrature));
        e = e < 3.0 ? e + 0.01 : 1.6;
    }
}
BENCHMARK(BM_SelfEnergyQuadrature);

void BM_ShiftWidthQuadrature(benchmark::State& state) {
    ValidatedModel m = validate_model(build_waveguide_model(fig4(AttachmentSite::at(3))));
    double e = -1.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_gamma(m, e, Evaluation::Quadrature));
        e = e < 1.4 ? e + 0.01 : -1.4;
    }
}
BENCHMARK(BM_ShiftWidthQuadrature);

void BM_BoundStates(benchmark::State& state) {
    ValidatedModel m =
        validate_model(build_waveguide_model(fig4(AttachmentSite::infinite()), ClosedForms::Omit));
    for (auto _ : state) benchmark::DoNotOptimize(all_bound_states(m));
}
BENCHMARK(BM_BoundStates)->Unit(benchmark::kMillisecond);

void BM_Survival(benchmark::State& state) {
    WaveguideParams p = fig4(AttachmentSite::at(2));
    ValidatedModel m = validate_model(build_waveguide_model(p));
    const auto times = grid(static_cast<double>(state.range(0)), 400);
    for (auto _ : state) benchmark::DoNotOptimize(survival_probability(m, default_initial_state(p), times));
}
BENCHMARK(BM_Survival)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MarkovianClosedForm(benchmark::State& state) {
    WaveguideParams p;
    p.n_atoms = 2;
    p.kappa = 4.0;
    p.xi = 2.0;
    p.site = AttachmentSite::infinite();
    ValidatedModel m = validate_model(build_waveguide_model(p));
    EffectiveHamiltonianMarkov h = build_markovian(m, markovian_gamma(m, 0.0));
    const auto times = grid(10.0, 400);
    for (auto _ : state) benchmark::DoNotOptimize(markovian_survival(h, default_initial_state(p), times));
}
BENCHMARK(BM_MarkovianClosedForm);

void BM_LatticeOracle(benchmark::State& state) {
    WaveguideParams p = fig4(AttachmentSite::at(1));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(p, 3, static_cast<double>(state.range(0)), 0.5));
}
BENCHMARK(BM_LatticeOracle)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
