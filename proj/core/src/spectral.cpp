#include "friedrichs/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "friedrichs/error.hpp"
#include "roots.hpp"

namespace friedrichs {

namespace {

constexpr double kRelTol = 1e-12;

std::string fmt(double e) {
    std::ostringstream os;
    os.precision(17);
    os << e;
    return os.str();
}

bool at_low_edge(const ValidatedModel& m, double e) {
    return std::isfinite(m.omega_low()) && e == m.omega_low();
}
bool at_up_edge(const ValidatedModel& m, double e) {
    return std::isfinite(m.omega_up()) && e == m.omega_up();
}

// Integral of J(w) * kernel(E - w) over the band for E outside the open band.
// kernel receives the difference d = E - w, computed without cancellation.
QuadratureResult outside_integral(const ValidatedModel& m, double e,
                                  const std::function<double(double)>& kernel) {
    const auto& band = m.band();
    const double a = band.omega_low, b = band.omega_up;
    if (band.dispersion) {
        const auto& disp = *band.dispersion;
        const double tiny = 1e-100 * m.span();
        auto f = [&](double k, double kc) {
            double d = kc <= 0.0 ? (e - a) - disp.from_low(k) : (e - b) + disp.to_up(k);
            // |d| this small only occurs next to an edge with E on it, where the integrand is bounded
            return std::abs(d) < tiny ? 0.0 : disp.weight(k) * kernel(d);
        };
        return integrate_tanh_sinh(EndpointIntegrand(f), disp.k_low, disp.k_up, kRelTol);
    }
    if (std::isfinite(a) && std::isfinite(b)) {
        const double tiny = 1e-100 * m.span();
        auto f = [&](double x, double xc) {
            // xc = a - x <= 0 in the left half, b - x > 0 in the right half
            double d = xc <= 0.0 ? (e - a) + xc : (e - b) + xc;
            return std::abs(d) < tiny ? 0.0 : band.spectral_density(x) * kernel(d);
        };
        return integrate_tanh_sinh(EndpointIntegrand(f), a, b, kRelTol);
    }
    auto f = [&](double x) { return band.spectral_density(x) * kernel(e - x); };
    return integrate_tanh_sinh(std::function<double(double)>(f), a, b, kRelTol);
}

// Same integral for E at an interior zero of J, split at E.
QuadratureResult zero_integral(const ValidatedModel& m, double e,
                               const std::function<double(double)>& kernel) {
    const auto& band = m.band();
    const double a = band.omega_low, b = band.omega_up;
    // Close to the zero J(x) is dominated by rounding of x inside J, so the
    // bounded integrand is frozen at distance `floor` from E.
    const double floor = 1e-7 * m.span();
    auto g = [&](double x, double d) {
        if (std::abs(d) < floor) {
            d = std::copysign(floor, d);
            x = e - d;
        }
        return band.spectral_density(x) * kernel(d);
    };
    QuadratureResult left, right;
    if (std::isfinite(a)) {
        // xc = a - x <= 0 near a, e - x > 0 near e
        auto f = [&](double x, double xc) { return g(x, xc <= 0.0 ? (e - a) + xc : xc); };
        left = integrate_tanh_sinh(EndpointIntegrand(f), a, e, kRelTol);
    } else {
        auto f = [&](double x) { return g(x, e - x); };
        left = integrate_tanh_sinh(std::function<double(double)>(f), a, e, kRelTol);
    }
    if (std::isfinite(b)) {
        // xc = e - x <= 0 near e, b - x > 0 near b
        auto f = [&](double x, double xc) { return g(x, xc <= 0.0 ? xc : (e - b) + xc); };
        right = integrate_tanh_sinh(EndpointIntegrand(f), e, b, kRelTol);
    } else {
        auto f = [&](double x) { return g(x, e - x); };
        right = integrate_tanh_sinh(std::function<double(double)>(f), e, b, kRelTol);
    }
    return {left.value + right.value, left.error + right.error};
}

enum class Site { Outside, LowEdge, UpEdge, Zero };

Site classify(const ValidatedModel& m, double e) {
    if (at_low_edge(m, e)) return Site::LowEdge;
    if (at_up_edge(m, e)) return Site::UpEdge;
    if (!m.inside_band(e)) return Site::Outside;
    if (m.interior_zero_index(e) >= 0) return Site::Zero;
    throw Error(ErrorCode::EInsideBand, "E = " + fmt(e) + " lies inside the band");
}

double snap_to_zero(const ValidatedModel& m, double e) {
    int idx = m.interior_zero_index(e);
    return idx >= 0 ? m.band().interior_zeros[idx] : e;
}

cplx pole_guard(const ValidatedModel& m, cplx z, int n) {
    cplx d = z - m.level(n);
    if (std::abs(d) < m.pole_tolerance()) {
        std::ostringstream os;
        os << "z = " << z << " coincides with level " << n;
        throw Error(ErrorCode::PoleHit, os.str());
    }
    return d;
}

}  // namespace

QuadratureResult self_energy_detail(const ValidatedModel& m, double e, Evaluation how) {
    Site site = classify(m, e);
    if (site == Site::Zero) e = snap_to_zero(m, e);
    if (site == Site::LowEdge && !m.band().s_low)
        throw Error(ErrorCode::NonconvergentEdge, "Sigma diverges at the lower edge");
    if (site == Site::UpEdge && !m.band().s_up)
        throw Error(ErrorCode::NonconvergentEdge, "Sigma diverges at the upper edge");
    if (how == Evaluation::Auto && m.has_overrides() && m.model().overrides->self_energy) {
        return {m.model().overrides->self_energy(e), 0.0};
    }
    auto kernel = [](double d) { return 1.0 / d; };
    if (site == Site::Zero) return zero_integral(m, e, kernel);
    return outside_integral(m, e, kernel);
}

double self_energy(const ValidatedModel& m, double e, Evaluation how) {
    return self_energy_detail(m, e, how).value;
}

QuadratureResult self_energy_derivative_detail(const ValidatedModel& m, double e,
                                               Evaluation how) {
    Site site = classify(m, e);
    if (site == Site::Zero) e = snap_to_zero(m, e);
    auto edge_ok = [](const std::optional<double>& s) { return s && *s > 1.0; };
    if (site == Site::LowEdge && !edge_ok(m.band().s_low))
        throw Error(ErrorCode::DivergentDerivative, "Sigma' diverges at the lower edge");
    if (site == Site::UpEdge && !edge_ok(m.band().s_up))
        throw Error(ErrorCode::DivergentDerivative, "Sigma' diverges at the upper edge");
    if (site == Site::Zero && m.band().interior_zero_order < 2)
        throw Error(ErrorCode::DivergentDerivative,
                    "J vanishes only linearly at " + fmt(e) + "; Sigma' diverges");
    if (how == Evaluation::Auto && m.has_overrides() &&
        m.model().overrides->self_energy_derivative) {
        return {m.model().overrides->self_energy_derivative(e), 0.0};
    }
    auto kernel = [](double d) { return -1.0 / (d * d); };
    if (site == Site::Zero) return zero_integral(m, e, kernel);
    return outside_integral(m, e, kernel);
}

double self_energy_derivative(const ValidatedModel& m, double e, Evaluation how) {
    return self_energy_derivative_detail(m, e, how).value;
}

ShiftWidth delta_gamma(const ValidatedModel& m, double e, Evaluation how) {
    if (!m.inside_band(e)) {
        throw Error(ErrorCode::InvalidArgument, "delta_gamma requires E inside the band");
    }
    if (how == Evaluation::Auto && m.has_overrides() && m.model().overrides->shift_width) {
        auto [d, g] = m.model().overrides->shift_width(e);
        return {d, g, 0.0};
    }
    const auto& band = m.band();
    const double a = band.omega_low, b = band.omega_up;
    const double je = band.spectral_density(e);
    // subtraction window around E; the whole band when it is finite
    const double w = std::max(1.0, std::abs(e));
    double lo = std::isfinite(a) ? a : e - w;
    double hi = std::isfinite(b) ? b : e + w;
    double edge_value = 0.0, edge_error = 0.0;
    if (band.dispersion) {
        // edge strips are integrated in k, where the van Hove singularity is absent
        const auto& disp = *band.dispersion;
        const double delta = 0.5 * std::min(e - a, b - e);
        const double ktol = 1e-15 * (disp.k_up - disp.k_low);
        auto k_of = [&](double target) {
            return detail::solve_decreasing([&](double k) { return target - disp.omega(k); },
                                            disp.k_low, disp.k_up, ktol);
        };
        const double k1 = k_of(a + delta), k2 = k_of(b - delta);
        auto low_strip = [&](double k, double) {
            return disp.weight(k) / ((e - a) - disp.from_low(k));
        };
        auto up_strip = [&](double k, double) {
            return disp.weight(k) / ((e - b) + disp.to_up(k));
        };
        auto s1 = integrate_tanh_sinh(EndpointIntegrand(low_strip), disp.k_low, k1, kRelTol);
        auto s2 = integrate_tanh_sinh(EndpointIntegrand(up_strip), k2, disp.k_up, kRelTol);
        edge_value = s1.value + s2.value;
        edge_error = s1.error + s2.error;
        lo = disp.omega(k1);
        hi = disp.omega(k2);
    }

    // near E the difference must use the rounded node so numerator and denominator agree
    auto sub_left = [&](double x, double xc) {
        double d = xc <= 0.0 ? (e - lo) + xc : e - x;
        return d == 0.0 ? 0.0 : (band.spectral_density(x) - je) / d;
    };
    auto sub_right = [&](double x, double xc) {
        double d = xc <= 0.0 ? e - x : (e - hi) + xc;
        return d == 0.0 ? 0.0 : (band.spectral_density(x) - je) / d;
    };
    QuadratureResult left = integrate_tanh_sinh(EndpointIntegrand(sub_left), lo, e, kRelTol);
    QuadratureResult right = integrate_tanh_sinh(EndpointIntegrand(sub_right), e, hi, kRelTol);
    double delta = left.value + right.value + je * std::log((e - lo) / (hi - e));
    double err = left.error + right.error;
    delta += edge_value, err += edge_error;

    if (std::isinf(a) && std::isinf(b)) {
        // symmetric pairing of the two tails keeps the principal value finite
        auto tails = [&](double u) {
            return (band.spectral_density(e - u) - band.spectral_density(e + u)) / u;
        };
        auto t = integrate_tanh_sinh(std::function<double(double)>(tails), w,
                                     std::numeric_limits<double>::infinity(), kRelTol);
        delta += t.value, err += t.error;
    } else if (std::isinf(a)) {
        auto tail = [&](double x) { return band.spectral_density(x) / (e - x); };
        auto t = integrate_tanh_sinh(std::function<double(double)>(tail),
                                     -std::numeric_limits<double>::infinity(), lo, kRelTol);
        delta += t.value, err += t.error;
    } else if (std::isinf(b)) {
        auto tail = [&](double x) { return band.spectral_density(x) / (e - x); };
        auto t = integrate_tanh_sinh(std::function<double(double)>(tail), hi,
                                     std::numeric_limits<double>::infinity(), kRelTol);
        delta += t.value, err += t.error;
    }
    return {delta, M_PI * je, err};
}

cplx k_function(const ValidatedModel& m, cplx z) {
    cplx sum = 0.0;
    for (int n = 0; n < m.size(); ++n) sum += m.coupling_sq(n) / pole_guard(m, z, n);
    return sum;
}

cplx k_derivative(const ValidatedModel& m, cplx z) {
    cplx sum = 0.0;
    for (int n = 0; n < m.size(); ++n) {
        cplx d = pole_guard(m, z, n);
        sum -= m.coupling_sq(n) / (d * d);
    }
    return sum;
}

cplx i_function(const ValidatedModel& m, const InitialState& initial, cplx z) {
    if (static_cast<int>(initial.amplitudes.size()) != m.size()) {
        throw Error(ErrorCode::InvalidModel, "initial state has wrong dimension");
    }
    cplx sum = 0.0;
    for (int n = 0; n < m.size(); ++n) {
        sum += std::conj(m.coupling(n)) * initial.amplitudes[n] / pole_guard(m, z, n);
    }
    return sum;
}

double k_function(const ValidatedModel& m, double e) { return k_function(m, cplx(e)).real(); }

double k_derivative(const ValidatedModel& m, double e) {
    return k_derivative(m, cplx(e)).real();
}

std::vector<double> k_zeros(const ValidatedModel& m) {
    for (int n = 0; n < m.size(); ++n) {
        if (m.coupling_sq(n) == 0.0)
            throw Error(ErrorCode::InvalidModel, "K has fewer poles when a coupling vanishes");
    }
    std::vector<double> zeros;
    for (int n = 0; n + 1 < m.size(); ++n) {
        auto f = [&](double e) { return k_function(m, e); };
        zeros.push_back(detail::solve_decreasing(f, m.level(n), m.level(n + 1), 1e-15 * m.span()));
    }
    return zeros;
}

}  // namespace friedrichs
