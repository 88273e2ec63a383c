// test_spectral.cpp — self-energy, shift/width and the rational kernels

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "friedrichs/error.hpp"
#include "friedrichs/spectral.hpp"
#include "oracles.hpp"

using namespace friedrichs;
namespace ft = friedrichs::testing;

namespace {

std::vector<ft::ClosedBand> families() {
    return {ft::flat_band(-1.0, 2.0, 0.3), ft::semicircle_band(0.5, 1.5, 0.8),
            ft::parabolic_band(-0.25, 2.0, 1.3)};
}

// energies outside the band, from 1e-6 of the bandwidth up to ten bandwidths
std::vector<double> outside_energies(const ft::ClosedBand& b) {
    std::vector<double> out;
    const double width = b.high - b.low;
    for (double d : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0}) {
        out.push_back(b.low - d * width);
        out.push_back(b.high + d * width);
    }
    return out;
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

ValidatedModel infinite_flat(double j0, std::vector<double> levels, std::vector<cplx> f) {
    FriedrichsModel m;
    m.discrete = {std::move(levels), std::move(f)};
    m.continuum.omega_low = -std::numeric_limits<double>::infinity();
    m.continuum.omega_up = std::numeric_limits<double>::infinity();
    m.continuum.spectral_density = [j0](double) { return j0; };
    m.continuum.s_low = m.continuum.s_up = std::nullopt;
    return validate_model(m);
}

}  // namespace

TEST_CASE("self-energy quadrature matches closed forms outside the band") {
    for (const auto& band : families()) {
        CAPTURE(band.name);
        ValidatedModel m = validate_model(ft::model_from(band, {0.0}, {1.0}));
        for (double e : outside_energies(band)) {
            CAPTURE(e);
            const double exact = band.sigma(e);
            CHECK(self_energy(m, e) == doctest::Approx(exact).epsilon(1e-9));
            const double d_exact = band.sigma_prime(e);
            CHECK(self_energy_derivative(m, e) == doctest::Approx(d_exact).epsilon(1e-8));
        }
    }
}

TEST_CASE("self-energy agrees with an independent Gauss-Legendre integration") {
    const auto band = ft::semicircle_band(0.5, 1.5, 0.8);
    ValidatedModel m = validate_model(ft::model_from(band, {0.0}, {1.0}));
    for (double e : {-1.3, -2.0, 2.2, 4.0}) {
        const double gl =
            ft::integrate_band([&](double w) { return band.J(w) / (e - w); }, band.low, band.high);
        CHECK(self_energy(m, e) == doctest::Approx(gl).epsilon(1e-10));
    }
}

TEST_CASE("self-energy derivative is negative and vanishes far from the band") {
    for (const auto& band : families()) {
        ValidatedModel m = validate_model(ft::model_from(band, {0.0}, {1.0}));
        for (double e : outside_energies(band)) CHECK(self_energy_derivative(m, e) < 0.0);
        const double far = self_energy_derivative(m, band.low - 1e6);
        CHECK(far < 0.0);
        CHECK(far > -1e-10);
    }
}

TEST_CASE("symmetric density gives an odd self-energy") {
    const auto band = ft::semicircle_band(0.0, 2.0, 1.0);
    ValidatedModel m = validate_model(ft::model_from(band, {0.0}, {1.0}));
    for (double e : {2.001, 2.5, 3.7, 11.0})
        CHECK(self_energy(m, -e) == doctest::Approx(-self_energy(m, e)).epsilon(1e-12));
}

TEST_CASE("edge behaviour follows the declared exponents") {
    const auto semi = ft::semicircle_band(0.0, 1.0, 1.0);
    ValidatedModel ms = validate_model(ft::model_from(semi, {0.0}, {1.0}));
    // J is sampled at rounded abscissae next to the edge, which limits the plain integral
    CHECK(self_energy(ms, 1.0) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(self_energy(ms, -1.0) == doctest::Approx(-2.0).epsilon(1e-7));
    FriedrichsModel md = ft::model_from(semi, {0.0}, {1.0});
    Dispersion k;
    k.k_low = 0.0;
    k.k_up = M_PI;
    k.omega = [](double q) { return -std::cos(q); };
    k.from_low = [](double q) { return 2.0 * std::sin(0.5 * q) * std::sin(0.5 * q); };
    k.to_up = [](double q) { return 2.0 * std::cos(0.5 * q) * std::cos(0.5 * q); };
    k.weight = [](double q) { return 2.0 / M_PI * std::sin(q) * std::sin(q); };
    md.continuum.dispersion = k;
    ValidatedModel mk = validate_model(md);
    CHECK(self_energy(mk, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(self_energy(mk, -1.0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(self_energy(mk, 1.3) == doctest::Approx(semi.sigma(1.3)).epsilon(1e-12));
    CHECK(code_of([&] { self_energy_derivative(ms, 1.0); }) == ErrorCode::DivergentDerivative);

    const auto flat = ft::flat_band(-1.0, 1.0, 0.5);
    ValidatedModel mf = validate_model(ft::model_from(flat, {0.0}, {1.0}));
    CHECK(code_of([&] { self_energy(mf, -1.0); }) == ErrorCode::NonconvergentEdge);
    CHECK(code_of([&] { self_energy(mf, 0.3); }) == ErrorCode::EInsideBand);
}

TEST_CASE("principal-value shift matches closed forms inside the band") {
    const double c = 0.5, r = 1.5, w = 0.8;
    ValidatedModel semi =
        validate_model(ft::model_from(ft::semicircle_band(c, r, w), {0.0}, {1.0}));
    const double a = -1.0, b = 2.0, j0 = 0.3;
    ValidatedModel flat = validate_model(ft::model_from(ft::flat_band(a, b, j0), {0.0}, {1.0}));
    const double pc = -0.25, h = 2.0, pw = 1.3;
    ValidatedModel para =
        validate_model(ft::model_from(ft::parabolic_band(pc, h, pw), {0.0}, {1.0}));
    for (double u : {-0.999, -0.9, -0.5, -0.1, 0.0, 0.3, 0.77, 0.99}) {
        CAPTURE(u);
        const double es = c + u * r;
        ShiftWidth s = delta_gamma(semi, es);
        CHECK(s.delta == doctest::Approx(2.0 * w / (r * r) * (es - c)).epsilon(1e-9));
        CHECK(s.gamma == doctest::Approx(2.0 * w / (r * r) * std::sqrt(r * r - (es - c) * (es - c))));

        const double ef = 0.5 * (a + b) + u * 0.5 * (b - a);
        CHECK(delta_gamma(flat, ef).delta ==
              doctest::Approx(j0 * std::log(std::abs((ef - a) / (ef - b)))).epsilon(1e-9));
        CHECK(delta_gamma(flat, ef).gamma == doctest::Approx(M_PI * j0));

        const double ep = pc + u * h;
        const double expect =
            3.0 * pw / (4.0 * h) * ((1.0 - u * u) * std::log(std::abs((u + 1.0) / (u - 1.0))) + 2.0 * u);
        CHECK(delta_gamma(para, ep).delta == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("flat infinite band has zero shift and constant width") {
    ValidatedModel m = infinite_flat(0.25, {-1.0, 1.0}, {1.0, 1.0});
    for (double e : {-3.0, 0.0, 0.4, 7.0}) {
        ShiftWidth s = delta_gamma(m, e);
        CHECK(std::abs(s.delta) < 1e-10);
        CHECK(s.gamma == doctest::Approx(M_PI * 0.25));
    }
}

TEST_CASE("K for a single level has no zeros") {
    ValidatedModel m =
        validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0), {0.3}, {cplx(0.4, 0.3)}));
    CHECK(k_function(m, 2.0) == doctest::Approx(0.25 / 1.7));
    CHECK(k_zeros(m).empty());
}

TEST_CASE("K derivative matches a centred difference for random models") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 20; ++trial) {
        auto rm = ft::random_model(rng, 4, -1.0, 1.0, trial % 2 == 1);
        ValidatedModel m = validate_model(
            ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0), rm.levels, rm.couplings));
        std::uniform_real_distribution<double> pick(-3.0, 3.0);
        for (int k = 0; k < 10; ++k) {
            double e = pick(rng);
            double gap = 1e9;
            for (double l : rm.levels) gap = std::min(gap, std::abs(e - l));
            if (gap < 0.05) continue;
            const double h = 1e-5 * gap;
            const double fd = (k_function(m, e + h) - k_function(m, e - h)) / (2.0 * h);
            CHECK(k_derivative(m, e) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("K zeros interlace the levels and K is decreasing between poles") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto rm = ft::random_model(rng, 1 + trial % 5, -1.0, 1.0, true);
        ValidatedModel m = validate_model(
            ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0), rm.levels, rm.couplings));
        auto zeros = k_zeros(m);
        REQUIRE(zeros.size() == rm.levels.size() - 1);
        double ksum = 0.0;
        for (auto f : rm.couplings) ksum += std::norm(f);
        for (std::size_t n = 0; n < zeros.size(); ++n) {
            CHECK(zeros[n] > rm.levels[n]);
            CHECK(zeros[n] < rm.levels[n + 1]);
            CHECK(std::abs(k_function(m, zeros[n])) < 1e-9 * ksum / (rm.levels[n + 1] - rm.levels[n]));
        }
        for (double e : {-5.0, -0.3, 0.2, 4.0}) CHECK(k_derivative(m, e) < 0.0);
    }
}

TEST_CASE("K and I are conjugation symmetric off the real axis") {
    ValidatedModel m = validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0),
                                                     {-0.5, 0.2, 0.9},
                                                     {cplx(0.3, 0.1), cplx(-0.2, 0.4), 0.5}));
    InitialState c{{cplx(0.6, 0.0), cplx(0.0, 0.8), 0.0}};
    const cplx z(0.1, 0.37);
    CHECK(std::abs(k_function(m, std::conj(z)) - std::conj(k_function(m, z))) < 1e-14);
    cplx direct = 0.0;
    for (int n = 0; n < 3; ++n)
        direct += std::conj(m.coupling(n)) * c.amplitudes[n] / (z - m.level(n));
    CHECK(std::abs(i_function(m, c, z) - direct) < 1e-14);
}

TEST_CASE("I for a single occupied level and for an orthogonal state") {
    ValidatedModel m = validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0),
                                                     {-0.5, 0.5}, {cplx(0.3, 0.4), 0.5}));
    InitialState first{{1.0, 0.0}};
    const cplx z(2.0, -0.5);
    CHECK(std::abs(i_function(m, first, z) - std::conj(cplx(0.3, 0.4)) / (z + 0.5)) < 1e-15);

    ValidatedModel same = validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0),
                                                        {-0.5, 0.5}, {1.0, 1.0}));
    const double s = std::sqrt(0.5);
    // f_n^* c_n = 0 for each n requires c_n = 0 wherever f_n != 0; use a zero coupling instead
    ValidatedModel half = validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0),
                                                        {-0.5, 0.5}, {1.0, 0.0}));
    InitialState second{{0.0, 1.0}};
    for (double e : {-3.0, 0.0, 0.2, 2.5}) CHECK(i_function(half, second, cplx(e)) == cplx(0.0));
    InitialState mix{{s, s}};
    CHECK(std::abs(i_function(same, mix, cplx(2.0)) - s * (1.0 / 2.5 + 1.0 / 1.5)) < 1e-15);
}

TEST_CASE("a pole hit is reported") {
    ValidatedModel m = validate_model(ft::model_from(ft::semicircle_band(0.0, 1.0, 1.0),
                                                     {-2.0, 2.0}, {1.0, 1.0}));
    CHECK(code_of([&] { k_function(m, 2.0); }) == ErrorCode::PoleHit);
}

TEST_CASE("energy-unit covariance of the kernels") {
    // omega -> s omega with J(omega/s) and f -> sqrt(s) f leaves Sigma, K invariant
    const double s = 3.7;
    const auto band = ft::semicircle_band(0.2, 1.0, 0.9);
    ValidatedModel m1 = validate_model(ft::model_from(band, {-1.5, 1.8}, {0.5, 0.7}));
    auto scaled = ft::semicircle_band(0.2 * s, s, 0.9 * s);
    ValidatedModel m2 = validate_model(ft::model_from(
        scaled, {-1.5 * s, 1.8 * s}, {0.5 * std::sqrt(s), 0.7 * std::sqrt(s)}));
    for (double e : {-2.0, -0.85, 1.25, 3.0}) {
        CHECK(self_energy(m2, s * e) == doctest::Approx(self_energy(m1, e)).epsilon(1e-10));
        CHECK(k_function(m2, s * e) == doctest::Approx(k_function(m1, e)).epsilon(1e-12));
    }
}
