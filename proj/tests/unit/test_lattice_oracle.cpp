// test_lattice_oracle.cpp — RK4 propagation of chain plus truncated waveguide

#include <doctest.h>

#include <cmath>

#include "friedrichs/error.hpp"
#include "friedrichs/lattice_oracle.hpp"
#include "oracles.hpp"

using namespace friedrichs;
namespace ft = friedrichs::testing;

namespace {

WaveguideParams params(int n, double kappa, double xi, AttachmentSite site) {
    WaveguideParams p;
    p.n_atoms = n;
    p.lambda = 1.0;
    p.kappa = kappa;
    p.xi = xi;
    p.site = site;
    return p;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidModel;
}

// dense Hamiltonian of the same lattice, chain sites first, chain site 1 attached
Eigen::MatrixXcd lattice_matrix(const WaveguideParams& p, int guide_sites) {
    const int n = p.n_atoms;
    const int size = n + guide_sites;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
    for (int i = 0; i + 1 < n; ++i) h(i, i + 1) = h(i + 1, i) = -p.lambda;
    for (int j = 0; j + 1 < guide_sites; ++j) h(n + j, n + j + 1) = h(n + j + 1, n + j) = -p.kappa;
    const int attach = n + p.site.index() - 1;
    h(0, attach) = h(attach, 0) = -p.xi;
    return h;
}

}  // namespace

TEST_CASE("decoupled chain keeps its excitation") {
    OracleResult r = evolve(params(3, 0.75, 0.0, AttachmentSite::at(1)), 3, 20.0, 0.5);
    REQUIRE(r.series.p.size() == 41);
    // RK4 damps a mode of frequency w by (w dt)^6 / 72 per step; the chain's largest is sqrt(2)
    const double theta = std::sqrt(2.0) * r.dt;
    for (std::size_t i = 0; i < r.series.p.size(); ++i) {
        const double steps = r.series.times[i] / r.dt;
        CHECK(std::abs(r.series.p[i] - 1.0) <= 1.01 * steps * std::pow(theta, 6) / 72.0 + 1e-14);
    }
}

TEST_CASE("output grid, step and truncation defaults") {
    OracleResult r = evolve(params(3, 0.75, 0.25, AttachmentSite::at(1)), 3, 10.0, 0.1);
    CHECK(r.series.times.size() == 101);
    CHECK(r.series.times[37] == doctest::Approx(3.7));
    CHECK(r.dt == doctest::Approx(0.01));
    CHECK(r.n_trunc == 1000);
    OracleResult big = evolve(params(1, 4.0, 0.1, AttachmentSite::at(2)), 1, 120.0, 10.0);
    CHECK(big.n_trunc == static_cast<int>(std::ceil(2.5 * 4.0 * 120.0)) + 2);
    CHECK(big.dt == doctest::Approx(0.0025));
}

TEST_CASE("norm is conserved") {
    for (AttachmentSite site : {AttachmentSite::at(1), AttachmentSite::at(2), AttachmentSite::infinite()}) {
        OracleResult r = evolve(params(3, 0.75, 0.25, site), 3, 50.0, 0.5);
        CHECK(r.max_norm_drift < 1e-6);
    }
}

TEST_CASE("agrees with dense exponentiation of the same lattice") {
    WaveguideParams p = params(2, 1.0, 0.8, AttachmentSite::at(3));
    OracleOptions o;
    o.n_trunc = 60;
    o.auto_truncation = false;
    o.dt = 0.0025;
    OracleResult r = evolve(p, 1, 10.0, 1.0, o);
    Eigen::MatrixXcd h = lattice_matrix(p, 60);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(h.rows());
    psi[0] = 1.0;
    for (std::size_t i = 0; i < r.series.times.size(); ++i) {
        Eigen::VectorXcd x = ft::evolve_hermitian(h, psi, r.series.times[i]);
        CHECK(std::abs(r.series.p[i] - x.head(2).squaredNorm()) < 1e-9);
    }
}

TEST_CASE("fourth-order convergence under step halving") {
    WaveguideParams p = params(3, 0.75, 0.25, AttachmentSite::at(2));
    auto run = [&](double dt) {
        OracleOptions o;
        o.dt = dt;
        o.n_trunc = 100;
        o.norm_tolerance = 1.0;
        return evolve(p, 3, 8.0, 0.8, o).series.p;
    };
    auto a = run(0.08), b = run(0.04), c = run(0.02);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e1 = std::max(e1, std::abs(a[i] - b[i]));
        e2 = std::max(e2, std::abs(b[i] - c[i]));
    }
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
    // the default step is converged to well below the comparison tolerances
    auto d = run(0.01), f = run(0.005);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - f[i]) < 1e-8);
}

TEST_CASE("doubling the truncation inside the light cone changes nothing") {
    for (AttachmentSite site : {AttachmentSite::at(1), AttachmentSite::infinite()}) {
        WaveguideParams p = params(3, 0.75, 0.25, site);
        OracleOptions a, b;
        a.auto_truncation = b.auto_truncation = false;
        a.n_trunc = 120;
        b.n_trunc = 240;
        auto pa = evolve(p, 3, 50.0, 1.0, a).series.p;
        auto pb = evolve(p, 3, 50.0, 1.0, b).series.p;
        for (std::size_t i = 0; i < pa.size(); ++i) CHECK(std::abs(pa[i] - pb[i]) < 1e-8);
    }
}

TEST_CASE("site one decays, frozen regression value at the end of the window") {
    OracleResult r = evolve(params(3, 0.75, 0.25, AttachmentSite::at(1)), 3, 50.0, 0.5);
    // the outer chain modes sit just inside the band edges and decay slowly
    CHECK(r.series.p.back() == doctest::Approx(0.2721452).epsilon(1e-6));
    CHECK(r.series.p.back() < r.series.p[40]);
}

TEST_CASE("exceptional point follows the power-law exponential") {
    OracleResult r = evolve(params(2, 4.0, 4.0, AttachmentSite::infinite()), 2, 10.0, 0.1);
    for (std::size_t i = 0; i < r.series.times.size(); ++i) {
        const double t = r.series.times[i];
        CHECK(std::abs(r.series.p[i] - (2.0 * t * t + 2.0 * t + 1.0) * std::exp(-2.0 * t)) < 5e-2);
    }
}

TEST_CASE("snapshots hold every population") {
    OracleOptions o;
    o.snapshot_times = {5.0, 1.0};
    OracleResult r = evolve(params(2, 1.0, 0.5, AttachmentSite::at(1)), 1, 6.0, 0.5, o);
    REQUIRE(r.snapshots.size() == 2);
    CHECK(r.snapshots[0].time == doctest::Approx(1.0));
    for (const auto& s : r.snapshots) {
        double total = 0.0;
        for (double x : s.chain_population) total += x;
        for (double x : s.waveguide_population) total += x;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("light-cone and argument errors") {
    OracleOptions o;
    o.auto_truncation = false;
    o.n_trunc = 10;
    CHECK(code_of([&] { evolve(params(3, 0.75, 0.25, AttachmentSite::at(1)), 3, 50.0, 1.0, o); }) ==
          ErrorCode::LightConeViolation);
    OracleOptions tight;
    tight.memory_budget_sites = 500;
    CHECK(code_of([&] { evolve(params(3, 0.75, 0.25, AttachmentSite::at(1)), 3, 5.0, 1.0, tight); }) ==
          ErrorCode::LightConeViolation);
    CHECK(code_of([&] { evolve(params(3, 0.75, 0.25, AttachmentSite::at(1)), 4, 5.0, 1.0); }) ==
          ErrorCode::InvalidArgument);
}
