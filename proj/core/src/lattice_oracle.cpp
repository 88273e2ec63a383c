#include "friedrichs/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "friedrichs/error.hpp"

namespace friedrichs {

namespace {

// Tight-binding Hamiltonian on chain sites [0, N) followed by waveguide sites.
// Semi-infinite waveguide: sites nu = 1..M, chain site 0 (mu = 1) couples to nu = l.
// Infinite waveguide: sites -M..M, chain couples to the centre.
struct Lattice {
    int n_chain = 0;
    int n_guide = 0;
    int attach = 0;   // index of the coupled waveguide site within the guide block
    double lambda = 0.0, kappa = 0.0, xi = 0.0;

    // y = -i H x
    void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const {
        const int nc = n_chain, ng = n_guide;
        const cplx* a = x.data();
        const cplx* b = x.data() + nc;
        cplx* ya = y.data();
        cplx* yb = y.data() + nc;
        const cplx mi(0.0, -1.0);
        for (int m = 0; m < nc; ++m) {
            cplx h = 0.0;
            if (m > 0) h -= lambda * a[m - 1];
            if (m + 1 < nc) h -= lambda * a[m + 1];
            if (m == 0) h += xi * b[attach];
            ya[m] = mi * h;
        }
        yb[0] = mi * (-kappa * b[1]);
        for (int v = 1; v + 1 < ng; ++v) yb[v] = mi * (-kappa * (b[v - 1] + b[v + 1]));
        yb[ng - 1] = mi * (-kappa * b[ng - 2]);
        yb[attach] += mi * (xi * a[0]);
    }
};

double norm_sq(const std::vector<cplx>& x, int from, int to) {
    double s = 0.0;
    for (int i = from; i < to; ++i) s += std::norm(x[i]);
    return s;
}

}  // namespace

OracleResult evolve(const WaveguideParams& params, int initial_site, double t_max, double dt_out,
                    const OracleOptions& options) {
    validate_params(params);
    const int n = params.n_atoms;
    if (initial_site < 1 || initial_site > n)
        throw Error(ErrorCode::InvalidArgument, "initial site must lie on the chain");
    if (!(t_max >= 0.0) || !(dt_out > 0.0))
        throw Error(ErrorCode::InvalidArgument, "need t_max >= 0 and dt_out > 0");

    const int l = params.site.is_infinite() ? 0 : params.site.index();
    int m = options.n_trunc;
    const int needed = static_cast<int>(std::ceil(2.5 * params.kappa * t_max)) + l;
    if (options.auto_truncation) {
        m = std::max(m, needed);
    } else if (2.0 * params.kappa * t_max >= m - l) {
        std::ostringstream os;
        os << "waveguide of " << m << " sites is inside the light cone 2 kappa t_max = "
           << 2.0 * params.kappa * t_max;
        throw Error(ErrorCode::LightConeViolation, os.str());
    }
    if (m < l + 2) m = l + 2;
    Lattice lat;
    lat.n_chain = n;
    lat.lambda = params.lambda;
    lat.kappa = params.kappa;
    lat.xi = params.xi;
    if (params.site.is_infinite()) {
        lat.n_guide = 2 * m + 1;
        lat.attach = m;
    } else {
        lat.n_guide = m;
        lat.attach = l - 1;
    }
    const std::size_t total = static_cast<std::size_t>(n) + lat.n_guide;
    if (total > options.memory_budget_sites) {
        std::ostringstream os;
        os << "t_max = " << t_max << " needs " << total << " sites, budget is "
           << options.memory_budget_sites;
        throw Error(ErrorCode::LightConeViolation, os.str());
    }

    double dt = options.dt ? *options.dt
                           : std::min(0.01 / std::max({params.lambda, params.kappa, params.xi}),
                                      dt_out / 10.0);
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    const long per_out = std::max(1L, static_cast<long>(std::ceil(dt_out / dt - 1e-9)));
    dt = dt_out / static_cast<double>(per_out);
    const long n_out = static_cast<long>(std::floor(t_max / dt_out + 1e-9));

    std::vector<cplx> psi(total, cplx(0.0)), k1(total), k2(total), k3(total), k4(total), tmp(total);
    psi[initial_site - 1] = 1.0;

    OracleResult out;
    out.dt = dt;
    out.n_trunc = m;
    std::vector<double> snaps = options.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    auto record = [&](double t) {
        out.series.times.push_back(t);
        out.series.p.push_back(norm_sq(psi, 0, n));
        const double drift = std::abs(1.0 - norm_sq(psi, 0, static_cast<int>(total)));
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
        if (drift > options.norm_tolerance) {
            std::ostringstream os;
            os << "norm drift " << drift << " at t = " << t;
            throw Error(ErrorCode::NormDrift, os.str());
        }
        while (next_snap < snaps.size() && snaps[next_snap] <= t + 0.5 * dt_out) {
            OracleSnapshot s;
            s.time = t;
            for (int i = 0; i < n; ++i) s.chain_population.push_back(std::norm(psi[i]));
            for (std::size_t i = n; i < total; ++i) s.waveguide_population.push_back(std::norm(psi[i]));
            out.snapshots.push_back(std::move(s));
            ++next_snap;
        }
    };

    record(0.0);
    for (long k = 1; k <= n_out; ++k) {
        for (long s = 0; s < per_out; ++s) {
            lat.apply(psi, k1);
            for (std::size_t i = 0; i < total; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
            lat.apply(tmp, k2);
            for (std::size_t i = 0; i < total; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
            lat.apply(tmp, k3);
            for (std::size_t i = 0; i < total; ++i) tmp[i] = psi[i] + dt * k3[i];
            lat.apply(tmp, k4);
            for (std::size_t i = 0; i < total; ++i)
                psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        record(static_cast<double>(k) * dt_out);
    }
    return out;
}

}  // namespace friedrichs
