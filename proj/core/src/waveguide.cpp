#include "friedrichs/waveguide.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "friedrichs/error.hpp"

namespace friedrichs {

namespace {

// arccosh(1 + d) without the cancellation of forming 1 + d first
double acosh1p(double d) { return std::log1p(d + std::sqrt(d * (d + 2.0))); }

// sinh(a u) / sinh(b u) for 0 < a < b, stable for large u
double sinh_ratio(double a, double b, double u) {
    return std::exp(-(b - a) * u) * std::expm1(-2.0 * a * u) / std::expm1(-2.0 * b * u);
}

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

AttachmentSite AttachmentSite::at(int l) {
    if (l < 1) throw Error(ErrorCode::InvalidArgument, "attachment site must be >= 1");
    AttachmentSite s;
    s.l_ = l;
    return s;
}

AttachmentSite AttachmentSite::infinite() {
    AttachmentSite s;
    s.infinite_ = true;
    s.l_ = 0;
    return s;
}

AttachmentSite AttachmentSite::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinite();
    std::size_t used = 0;
    int l = 0;
    try {
        l = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "site must be a positive integer or 'inf', got '" + text + "'");
    }
    if (used != text.size())
        throw Error(ErrorCode::InvalidArgument, "site must be a positive integer or 'inf', got '" + text + "'");
    return at(l);
}

int AttachmentSite::index() const {
    if (infinite_) throw Error(ErrorCode::InvalidArgument, "infinite site has no index");
    return l_;
}

std::string AttachmentSite::to_string() const { return infinite_ ? "inf" : std::to_string(l_); }

void validate_params(const WaveguideParams& p) {
    if (p.n_atoms < 1) throw Error(ErrorCode::InvalidArgument, "n_atoms must be >= 1");
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
    if (!(p.kappa > 0.0) || !std::isfinite(p.kappa))
        throw Error(ErrorCode::InvalidArgument, "kappa must be positive");
    if (!(p.xi >= 0.0) || !std::isfinite(p.xi))
        throw Error(ErrorCode::InvalidArgument, "xi must be non-negative");
}

std::vector<double> waveguide_levels(const WaveguideParams& p) {
    std::vector<double> out;
    const int n = p.n_atoms;
    for (int i = 1; i <= n; ++i) out.push_back(-2.0 * p.lambda * std::cos(M_PI * i / (n + 1)));
    // the middle level of an odd chain is exactly zero
    if (n % 2 == 1) out[n / 2] = 0.0;
    return out;
}

std::vector<cplx> waveguide_couplings(const WaveguideParams& p) {
    std::vector<cplx> out;
    const int n = p.n_atoms;
    const double norm = p.xi * std::sqrt(2.0 / (n + 1));
    for (int i = 1; i <= n; ++i) out.emplace_back(norm * std::sin(M_PI * i / (n + 1)));
    return out;
}

double waveguide_spectral_density(const WaveguideParams& p, double w) {
    const double k2 = 2.0 * p.kappa;
    if (!(std::abs(w) < k2)) return 0.0;
    const double root = std::sqrt((k2 - w) * (k2 + w));
    if (p.site.is_infinite()) return 1.0 / (M_PI * root);
    const double s = std::sin(p.site.index() * std::acos(w / k2));
    return 2.0 * s * s / (M_PI * root);
}

std::vector<double> waveguide_density_zeros(const WaveguideParams& p) {
    std::vector<double> out;
    if (p.site.is_infinite()) return out;
    const int l = p.site.index();
    for (int j = 1; j < l; ++j) {
        double z = -2.0 * p.kappa * std::cos(M_PI * j / l);
        if (2 * j == l) z = 0.0;
        out.push_back(z);
    }
    return out;
}

double waveguide_self_energy(const WaveguideParams& p, double e) {
    const double k2 = 2.0 * p.kappa;
    const double a = std::abs(e);
    if (a < k2) {
        for (double z : waveguide_density_zeros(p)) {
            if (std::abs(z - e) <= 1e-12 * k2) return 0.0;
        }
        throw Error(ErrorCode::EInsideBand, "waveguide Sigma requested inside the band");
    }
    if (a == k2) {
        if (p.site.is_infinite()) throw Error(ErrorCode::NonconvergentEdge, "Sigma diverges at the band edge");
        return sign(e) * p.site.index() / p.kappa;
    }
    const double u = acosh1p((a - k2) / k2);
    if (p.site.is_infinite()) return sign(e) / (k2 * std::sinh(u));
    const double l = p.site.index();
    return sign(e) * (-std::expm1(-2.0 * l * u)) / (k2 * std::sinh(u));
}

double waveguide_self_energy_derivative(const WaveguideParams& p, double e) {
    const double k2 = 2.0 * p.kappa;
    const double a = std::abs(e);
    if (a < k2) {
        for (double z : waveguide_density_zeros(p)) {
            if (std::abs(z - e) <= 1e-12 * k2) {
                return -2.0 * p.site.index() / ((k2 - z) * (k2 + z));
            }
        }
        throw Error(ErrorCode::EInsideBand, "waveguide Sigma' requested inside the band");
    }
    if (a == k2) throw Error(ErrorCode::DivergentDerivative, "Sigma' diverges at the band edge");
    const double u = acosh1p((a - k2) / k2);
    const double sh = std::sinh(u), ch = std::cosh(u);
    double h;
    if (p.site.is_infinite()) {
        h = -ch / (sh * sh);
    } else {
        const double l = p.site.index();
        h = (2.0 * l * std::exp(-2.0 * l * u) * sh + std::expm1(-2.0 * l * u) * ch) / (sh * sh);
    }
    return h / (k2 * k2 * sh);
}

std::pair<double, double> waveguide_shift_width(const WaveguideParams& p, double e) {
    const double k2 = 2.0 * p.kappa;
    if (!(std::abs(e) < k2)) throw Error(ErrorCode::InvalidArgument, "E outside the band");
    const double root = std::sqrt((k2 - e) * (k2 + e));
    if (p.site.is_infinite()) return {0.0, 1.0 / root};
    const double phi = std::acos(e / k2);
    const double l = p.site.index();
    const double s = std::sin(l * phi);
    return {std::sin(2.0 * l * phi) / root, 2.0 * s * s / root};
}

cplx waveguide_self_energy(const WaveguideParams& p, cplx z) {
    if (z.imag() == 0.0) {
        const double e = z.real();
        if (std::abs(e) >= 2.0 * p.kappa) return waveguide_self_energy(p, e);
        throw Error(ErrorCode::EInsideBand, "real z inside the band is on the branch cut");
    }
    if (z.imag() < 0.0) return std::conj(waveguide_self_energy(p, std::conj(z)));
    const cplx t = std::acos(-z / (2.0 * p.kappa));
    const cplx i(0.0, 1.0);
    if (p.site.is_infinite()) return -i / (2.0 * p.kappa * std::sin(t));
    const double l = p.site.index();
    return -i * (1.0 - std::exp(2.0 * i * l * t)) / (2.0 * p.kappa * std::sin(t));
}

double waveguide_k(const WaveguideParams& p, double e) {
    const double n = p.n_atoms;
    const double x2 = p.xi * p.xi / p.lambda;
    const double l2 = 2.0 * p.lambda;
    if (e < -l2) return -x2 * sinh_ratio(n, n + 1, acosh1p((-e - l2) / l2));
    if (e > l2) return x2 * sinh_ratio(n, n + 1, acosh1p((e - l2) / l2));
    const double phi = std::acos(e / l2);
    return x2 * std::sin(n * phi) / std::sin((n + 1) * phi);
}

double waveguide_i(const WaveguideParams& p, double e) {
    const int n = p.n_atoms;
    const double x1 = p.xi / p.lambda;
    const double l2 = 2.0 * p.lambda;
    const double parity = n % 2 == 1 ? 1.0 : -1.0;   // (-1)^(N+1)
    if (e < -l2) return -x1 * sinh_ratio(1, n + 1, acosh1p((-e - l2) / l2));
    if (e > l2) return parity * x1 * sinh_ratio(1, n + 1, acosh1p((e - l2) / l2));
    const double phi = std::acos(e / l2);
    return parity * x1 * std::sin(phi) / std::sin((n + 1) * phi);
}

cplx waveguide_k(const WaveguideParams& p, cplx z) {
    const cplx t = std::acos(-z / (2.0 * p.lambda));
    const double n = p.n_atoms;
    return -p.xi * p.xi * std::sin(n * t) / (p.lambda * std::sin((n + 1) * t));
}

cplx waveguide_i(const WaveguideParams& p, cplx z) {
    const cplx t = std::acos(-z / (2.0 * p.lambda));
    const double n = p.n_atoms;
    return -p.xi * std::sin(t) / (p.lambda * std::sin((n + 1) * t));
}

FriedrichsModel build_waveguide_model(const WaveguideParams& p, ClosedForms forms) {
    validate_params(p);
    FriedrichsModel m;
    m.discrete.levels = waveguide_levels(p);
    m.discrete.couplings = waveguide_couplings(p);
    auto& band = m.continuum;
    const double kappa = p.kappa;
    band.omega_low = -2.0 * kappa;
    band.omega_up = 2.0 * kappa;
    band.spectral_density = [p](double w) { return waveguide_spectral_density(p, w); };
    if (p.site.is_infinite()) {
        band.s_low.reset();
        band.s_up.reset();
    } else {
        band.s_low = 0.5;
        band.s_up = 0.5;
    }
    band.interior_zeros = waveguide_density_zeros(p);
    band.interior_zero_order = 2;

    Dispersion d;
    d.k_low = 0.0;
    d.k_up = M_PI;
    d.omega = [kappa](double k) { return -2.0 * kappa * std::cos(k); };
    d.from_low = [kappa](double k) {
        double s = std::sin(0.5 * k);
        return 4.0 * kappa * s * s;
    };
    d.to_up = [kappa](double k) {
        double c = std::cos(0.5 * k);
        return 4.0 * kappa * c * c;
    };
    if (p.site.is_infinite()) {
        d.weight = [](double) { return 1.0 / M_PI; };
    } else {
        const int l = p.site.index();
        d.weight = [l](double k) {
            double s = std::sin(l * k);
            return 2.0 / M_PI * s * s;
        };
    }
    band.dispersion = d;
    band.density = [kappa](double w) {
        return std::abs(w) < 2.0 * kappa ? 1.0 / std::sqrt(4.0 * kappa * kappa - w * w) : 0.0;
    };
    if (p.site.is_infinite()) {
        band.form_factor = [](double) { return cplx(1.0 / std::sqrt(M_PI)); };
    } else {
        const int l = p.site.index();
        band.form_factor = [l, kappa](double w) {
            return cplx(std::sqrt(2.0 / M_PI) * std::sin(l * std::acos(-w / (2.0 * kappa))));
        };
    }

    if (forms == ClosedForms::Use) {
        AnalyticOverrides o;
        o.self_energy = [p](double e) { return waveguide_self_energy(p, e); };
        o.self_energy_derivative = [p](double e) { return waveguide_self_energy_derivative(p, e); };
        o.shift_width = [p](double e) { return waveguide_shift_width(p, e); };
        m.overrides = o;
    }
    return m;
}

InitialState default_initial_state(const WaveguideParams& p) {
    InitialState s;
    const int n = p.n_atoms;
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int i = 1; i <= n; ++i) {
        s.amplitudes.emplace_back(norm * std::sin(M_PI * static_cast<double>(i) * n / (n + 1)));
    }
    return s;
}

BoundStateCensus waveguide_bound_state_count(const WaveguideParams& p) {
    validate_params(p);
    BoundStateCensus c;
    const int n = p.n_atoms;
    const double ratio = p.kappa / p.lambda;
    for (double e : waveguide_levels(p)) c.n_low += e < -2.0 * p.kappa;
    c.n_up = c.n_low;

    // energy criterion: kappa/lambda < cos(pi N_out / 2N), vacuous without levels outside
    const int n_out = 2 * c.n_low;
    const bool energy = c.n_low == 0 || ratio < std::cos(M_PI * n_out / (2.0 * n));

    // amplitude criterion: l xi^2 r > kappa lambda, r = -lambda K(-2 kappa) / xi^2
    bool amplitude = true;
    double r = 0.0;
    if (!p.site.is_infinite()) {
        if (ratio <= 1.0) {
            const double a = std::acos(ratio);
            r = a == 0.0 ? static_cast<double>(n) / (n + 1) : std::sin(n * a) / std::sin((n + 1) * a);
        } else {
            r = sinh_ratio(n, n + 1, std::acosh(ratio));
        }
        amplitude = p.site.index() * p.xi * p.xi * r > p.kappa * p.lambda;
    }
    const int extra = energy && amplitude ? 1 : 0;
    c.m_below = c.n_low + extra;
    c.m_above = c.n_up + extra;
    c.m_bic = static_cast<int>(waveguide_bic_energies(p).size());

    EdgeCriterion lo;
    lo.edge = "lower";
    lo.edge_energy = -2.0 * p.kappa;
    lo.levels_beyond = c.n_low;
    lo.k_zero = c.n_low == 0 ? -std::numeric_limits<double>::infinity()
                             : -2.0 * p.lambda * std::cos(M_PI * c.n_low / n);
    lo.energy_criterion = energy;
    lo.k_edge = p.site.is_infinite() ? waveguide_k(p, lo.edge_energy) : -p.xi * p.xi * r / p.lambda;
    lo.sigma_divergent = p.site.is_infinite();
    lo.sigma_inverse_edge = p.site.is_infinite() ? 0.0 : -p.kappa / p.site.index();
    lo.amplitude_criterion = amplitude;
    EdgeCriterion up = lo;
    up.edge = "upper";
    up.edge_energy = -lo.edge_energy;
    up.k_zero = -lo.k_zero;
    up.k_edge = -lo.k_edge;
    up.sigma_inverse_edge = -lo.sigma_inverse_edge;
    c.criteria_trace = {lo, up};
    return c;
}

std::vector<double> waveguide_bic_energies(const WaveguideParams& p) {
    validate_params(p);
    std::vector<double> out;
    if (p.site.is_infinite() || p.site.index() < 2) return out;
    const auto zeros = waveguide_density_zeros(p);
    for (double e : waveguide_levels(p)) {
        for (double z : zeros) {
            if (std::abs(e - z) <= 1e-12 * p.lambda) {
                out.push_back(e);
                break;
            }
        }
    }
    return out;
}

}  // namespace friedrichs
