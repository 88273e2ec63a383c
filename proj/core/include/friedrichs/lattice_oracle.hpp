// lattice_oracle.hpp — brute-force time evolution of chain plus truncated waveguide

#pragma once

#include <optional>
#include <vector>

#include "friedrichs/dynamics.hpp"
#include "friedrichs/waveguide.hpp"

namespace friedrichs {

struct OracleOptions {
    // waveguide sites kept (per side for an infinite waveguide); raised to
    // ceil(2.5 kappa t_max) + l when that is larger and auto_truncation is set
    int n_trunc = 1000;
    bool auto_truncation = true;
    // fixed RK4 step; default min(0.01 / max(lambda, kappa, xi), dt_out / 10),
    // shrunk so that it divides dt_out
    std::optional<double> dt;
    std::vector<double> snapshot_times;
    std::size_t memory_budget_sites = 20'000'000;
    double norm_tolerance = 1e-6;
};

struct OracleSnapshot {
    double time = 0.0;
    std::vector<double> chain_population;      // |alpha_mu|^2, mu = 1..N
    std::vector<double> waveguide_population;  // |beta_nu|^2 in lattice order
};

struct OracleResult {
    SurvivalSeries series;
    std::vector<OracleSnapshot> snapshots;
    double max_norm_drift = 0.0;
    double dt = 0.0;
    int n_trunc = 0;
};

// p(t) = sum_mu |alpha_mu(t)|^2 on t = 0, dt_out, ..., t_max, starting from
// the chain site initial_site (1-based; the open end is N).
OracleResult evolve(const WaveguideParams& params, int initial_site, double t_max, double dt_out,
                    const OracleOptions& options = {});

}  // namespace friedrichs
