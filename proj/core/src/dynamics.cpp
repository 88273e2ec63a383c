#include "friedrichs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "friedrichs/error.hpp"
#include "friedrichs/spectral.hpp"
#include "parallel.hpp"

namespace friedrichs {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

// Pole-free form of S_n(E):
//   S_n = (Gamma/pi) f_n Ip(E) Q_n(E) / [(P - Delta Kp)^2 + (Gamma Kp)^2]
// with Q_n = prod_{k != n}(E - eps_k), P = prod_k (E - eps_k), Kp = K P, Ip = I P.
struct ScatteringDensity {
    ValidatedModel model;
    std::vector<cplx> c;

    Eigen::VectorXcd all(double e) const {
        const int n = model.size();
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
        if (!model.inside_band(e)) return out;
        const ShiftWidth sw = delta_gamma(model, e);
        if (sw.gamma == 0.0) return out;
        std::vector<double> q(n, 1.0);
        double p = 1.0;
        for (int k = 0; k < n; ++k) {
            const double d = e - model.level(k);
            p *= d;
            for (int j = 0; j < n; ++j) {
                if (j != k) q[j] *= d;
            }
        }
        double kp = 0.0;
        cplx ip = 0.0;
        for (int k = 0; k < n; ++k) {
            kp += model.coupling_sq(k) * q[k];
            ip += std::conj(model.coupling(k)) * c[k] * q[k];
        }
        const double re = p - sw.delta * kp;
        const double im = sw.gamma * kp;
        const double den = re * re + im * im;
        if (den == 0.0) return out;
        const cplx pref = sw.gamma / M_PI * ip / den;
        for (int j = 0; j < n; ++j) out[j] = pref * model.coupling(j) * q[j];
        return out;
    }
};

struct Panel {
    double a, b;
    double error;
};

}  // namespace

DecayCoefficients decay_coefficients(const ValidatedModel& m, const InitialState& initial,
                                     const std::vector<BoundState>& bound_states) {
    validate_initial_state(m, initial);
    DecayCoefficients out;
    const int n = m.size();
    const int mm = static_cast<int>(bound_states.size());
    out.R = Eigen::MatrixXcd::Zero(n, mm);
    for (int j = 0; j < mm; ++j) {
        const BoundState& b = bound_states[j];
        out.energies.push_back(b.energy);
        if (b.at_level) {
            const int l = b.level_index;
            out.R(l, j) = initial.amplitudes[l] / (1.0 - m.coupling_sq(l) * b.sigma_derivative);
            continue;
        }
        const double e = b.energy;
        const double k = k_function(m, e);
        const double dk = k_derivative(m, e);
        const cplx ival = i_function(m, initial, e);
        const double den = dk + k * k * b.sigma_derivative;
        for (int i = 0; i < n; ++i) out.R(i, j) = -m.coupling(i) * ival / ((e - m.level(i)) * den);
    }
    auto dens = std::make_shared<ScatteringDensity>(ScatteringDensity{m, initial.amplitudes});
    out.S = [dens](double e, int i) { return dens->all(e)[i]; };
    return out;
}

SurvivalEvaluator::SurvivalEvaluator(const ValidatedModel& m, const InitialState& initial,
                                     std::vector<BoundState> bound_states, double t_max,
                                     const SurvivalOptions& options)
    : bound_(std::move(bound_states)), t_max_(std::abs(t_max)) {
    if (!m.finite_band()) {
        throw Error(ErrorCode::UnsupportedBand, "dynamics requires a finite band");
    }
    coeffs_ = decay_coefficients(m, initial, bound_);
    const int n = m.size();
    const ScatteringDensity dens{m, initial.amplitudes};
    const double c = 0.5 * (m.omega_low() + m.omega_up());
    const double h = 0.5 * (m.omega_up() - m.omega_low());
    auto energy_of = [&](double th) { return c - h * std::cos(th); };

    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    // GK15 and G7 values of the Jacobian-weighted density on a theta panel
    auto panel_error = [&](double a, double b) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        Eigen::VectorXcd kr = Eigen::VectorXcd::Zero(n), ga = Eigen::VectorXcd::Zero(n);
        for (std::size_t i = 0; i < xk.size(); ++i) {
            for (int s = (i == 0 ? 1 : -1); s <= 1; s += 2) {
                const double th = mid + s * half * xk[i];
                Eigen::VectorXcd v = dens.all(energy_of(th)) * (h * std::sin(th) * half);
                kr += wk[i] * v;
                if (i % 2 == 0) ga += wg[i / 2] * v;
            }
        }
        return (kr - ga).cwiseAbs().sum();
    };

    // adaptive base partition, largest error first
    auto cmp = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
    double total = 0.0;
    const int initial_panels = 16;
    for (int i = 0; i < initial_panels; ++i) {
        double a = M_PI * i / initial_panels, b = M_PI * (i + 1) / initial_panels;
        Panel p{a, b, panel_error(a, b)};
        total += p.error;
        queue.push(p);
    }
    const std::size_t max_panels = options.max_nodes / 15;
    while (total > options.base_tolerance) {
        if (queue.size() >= max_panels) {
            std::ostringstream os;
            os << "base partition error " << total << " after " << queue.size() << " panels";
            throw Error(ErrorCode::QuadratureBudgetExceeded, os.str());
        }
        Panel p = queue.top();
        queue.pop();
        total -= p.error;
        const double mid = 0.5 * (p.a + p.b);
        Panel l{p.a, mid, panel_error(p.a, mid)};
        Panel r{mid, p.b, panel_error(mid, p.b)};
        total += l.error + r.error;
        queue.push(l);
        queue.push(r);
    }
    std::vector<std::pair<double, double>> panels;
    while (!queue.empty()) {
        panels.emplace_back(queue.top().a, queue.top().b);
        queue.pop();
    }
    std::sort(panels.begin(), panels.end());

    // oscillation control: each panel at most pi/(4 t_max) wide in energy
    std::vector<std::pair<double, double>> fine;
    const double limit = t_max_ > 0.0 ? M_PI / (4.0 * t_max_) : 2.0 * h;
    for (auto [a, b] : panels) {
        const double width = h * (std::cos(a) - std::cos(b));
        // equal-theta pieces are not equal in energy; double until all fit
        int k = std::max(1, static_cast<int>(std::ceil(width / limit)));
        for (;;) {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                double x = a + (b - a) * i / k, y = a + (b - a) * (i + 1) / k;
                ok = h * (std::cos(x) - std::cos(y)) <= limit;
            }
            if (ok) break;
            k *= 2;
        }
        for (int i = 0; i < k; ++i) fine.emplace_back(a + (b - a) * i / k, a + (b - a) * (i + 1) / k);
    }
    if (fine.size() * 15 > options.max_nodes) {
        std::ostringstream os;
        os << fine.size() * 15 << " nodes needed for t_max = " << t_max_;
        throw Error(ErrorCode::QuadratureBudgetExceeded, os.str());
    }

    std::vector<double> thetas;
    for (auto [a, b] : fine) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        panel_start_.push_back(energy_.size());
        for (std::size_t i = 0; i < xk.size(); ++i) {
            for (int s = (i == 0 ? 1 : -1); s <= 1; s += 2) {
                const double th = mid + s * half * xk[i];
                const double jac = h * std::sin(th) * half;
                thetas.push_back(th);
                energy_.push_back(energy_of(th));
                kronrod_w_.push_back(wk[i] * jac);
                gauss_w_.push_back(i % 2 == 0 ? wg[i / 2] * jac : 0.0);
            }
        }
    }
    panel_start_.push_back(energy_.size());
    g_.resize(static_cast<Eigen::Index>(energy_.size()), n);
    detail::parallel_for(energy_.size(), options.threads, [&](std::size_t j) {
        g_.row(static_cast<Eigen::Index>(j)) = dens.all(energy_[j]).transpose();
    });
}

Eigen::VectorXcd SurvivalEvaluator::bound_amplitudes(double t) const {
    const Eigen::Index mm = coeffs_.R.cols();
    Eigen::VectorXcd phase(mm);
    for (Eigen::Index j = 0; j < mm; ++j) phase[j] = std::polar(1.0, -coeffs_.energies[j] * t);
    return coeffs_.R * phase;
}

Eigen::VectorXcd SurvivalEvaluator::scattering_amplitudes(double t) const {
    Eigen::VectorXcd w(static_cast<Eigen::Index>(energy_.size()));
    for (std::size_t j = 0; j < energy_.size(); ++j) {
        w[static_cast<Eigen::Index>(j)] = kronrod_w_[j] * std::polar(1.0, -energy_[j] * t);
    }
    return g_.transpose() * w;
}

double SurvivalEvaluator::error_estimate(double t) const {
    double err = 0.0;
    for (std::size_t p = 0; p + 1 < panel_start_.size(); ++p) {
        Eigen::VectorXcd diff = Eigen::VectorXcd::Zero(g_.cols());
        for (std::size_t j = panel_start_[p]; j < panel_start_[p + 1]; ++j) {
            diff += (kronrod_w_[j] - gauss_w_[j]) * std::polar(1.0, -energy_[j] * t) *
                    g_.row(static_cast<Eigen::Index>(j)).transpose();
        }
        err += diff.cwiseAbs().sum();
    }
    return err;
}

double SurvivalEvaluator::survival(double t) const {
    return (bound_amplitudes(t) + scattering_amplitudes(t)).squaredNorm();
}

SurvivalParts SurvivalEvaluator::parts(double t) const {
    const Eigen::VectorXcd b = bound_amplitudes(t);
    const Eigen::VectorXcd s = scattering_amplitudes(t);
    SurvivalParts out;
    out.bound = b.squaredNorm();
    out.scattering = s.squaredNorm();
    out.cross = 2.0 * b.dot(s).real();
    return out;
}

SurvivalSeries survival_probability(const ValidatedModel& m, const InitialState& initial,
                                    const std::vector<double>& times,
                                    const SurvivalOptions& options) {
    validate_initial_state(m, initial);
    if (!m.finite_band()) throw Error(ErrorCode::UnsupportedBand, "dynamics requires a finite band");
    double t_max = 0.0;
    for (double t : times) t_max = std::max(t_max, std::abs(t));
    SurvivalEvaluator ev(m, initial, all_bound_states(m), t_max, options);
    SurvivalSeries out;
    out.times = times;
    out.p.resize(times.size());
    out.parts.resize(times.size());
    std::vector<double> errors(times.size());
    detail::parallel_for(times.size(), options.threads, [&](std::size_t i) {
        const Eigen::VectorXcd b = ev.bound_amplitudes(times[i]);
        const Eigen::VectorXcd s = ev.scattering_amplitudes(times[i]);
        out.p[i] = (b + s).squaredNorm();
        out.parts[i] = {b.squaredNorm(), s.squaredNorm(), 2.0 * b.dot(s).real()};
        errors[i] = ev.error_estimate(times[i]);
    });
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.max_error_estimate = std::max(out.max_error_estimate, errors[i]);
        if (errors[i] > options.budget_tolerance) {
            std::ostringstream os;
            os << "scattering integral error estimate " << errors[i] << " at t = " << times[i];
            throw Error(ErrorCode::QuadratureBudgetExceeded, os.str());
        }
    }
    return out;
}

LongTimeLimit long_time_limit(const ValidatedModel& m, const InitialState& initial,
                              const std::vector<BoundState>& bound_states) {
    const DecayCoefficients dc = decay_coefficients(m, initial, bound_states);
    LongTimeLimit out;
    const Eigen::Index mm = dc.R.cols();
    out.mean = dc.R.squaredNorm();
    for (Eigen::Index a = 0; a < mm; ++a) {
        for (Eigen::Index b = a + 1; b < mm; ++b) {
            const cplx o = dc.R.col(b).dot(dc.R.col(a));   // sum_n R_na conj(R_nb)
            out.beats.push_back({static_cast<int>(a), static_cast<int>(b),
                                 dc.energies[a] - dc.energies[b], std::abs(o), std::arg(o)});
        }
    }
    return out;
}

}  // namespace friedrichs
