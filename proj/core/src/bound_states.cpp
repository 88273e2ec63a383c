#include "friedrichs/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "friedrichs/error.hpp"
#include "roots.hpp"

namespace friedrichs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_couplings(const ValidatedModel& m) {
    for (int n = 0; n < m.size(); ++n) {
        if (m.coupling_sq(n) == 0.0)
            throw Error(ErrorCode::InvalidModel,
                        "bound-state analysis needs every level coupled (f_n != 0)");
    }
}

double secular(const ValidatedModel& m, double e) {
    return k_function(m, e) - 1.0 / self_energy(m, e);
}

int count_below(const ValidatedModel& m) {
    if (!std::isfinite(m.omega_low())) return 0;
    int c = 0;
    for (double e : m.levels()) c += e < m.omega_low();
    return c;
}

int count_above(const ValidatedModel& m) {
    if (!std::isfinite(m.omega_up())) return 0;
    int c = 0;
    for (double e : m.levels()) c += e > m.omega_up();
    return c;
}

EdgeCriterion evaluate_edge(const ValidatedModel& m, bool lower, int beyond,
                            const std::vector<double>& zeros) {
    EdgeCriterion c;
    const int n = m.size();
    c.edge = lower ? "lower" : "upper";
    c.edge_energy = lower ? m.omega_low() : m.omega_up();
    c.levels_beyond = beyond;
    // zeros[i] lies between levels i and i+1 (0-based); conventions +-inf at the ends
    if (lower) {
        c.k_zero = beyond == 0 ? -kInf : (beyond <= n - 1 ? zeros[beyond - 1] : kInf);
        c.energy_criterion = c.edge_energy > c.k_zero;
    } else {
        int idx = n - beyond;   // 1-based zero index on the branch holding omega_up
        c.k_zero = beyond == 0 ? kInf : (idx >= 1 ? zeros[idx - 1] : -kInf);
        c.energy_criterion = c.edge_energy < c.k_zero;
    }
    try {
        c.k_edge = k_function(m, c.edge_energy);
    } catch (const Error& e) {
        throw Error(ErrorCode::EdgeEvaluationFailure, std::string("K at band edge: ") + e.what());
    }
    double err_inv = 0.0;
    const auto& s = lower ? m.band().s_low : m.band().s_up;
    if (!s) {
        c.sigma_divergent = true;
        c.sigma_inverse_edge = 0.0;   // 0- below, 0+ above
    } else {
        QuadratureResult sig;
        try {
            sig = self_energy_detail(m, c.edge_energy);
        } catch (const Error& e) {
            throw Error(ErrorCode::EdgeEvaluationFailure,
                        std::string("Sigma at band edge: ") + e.what());
        }
        c.sigma_inverse_edge = 1.0 / sig.value;
        err_inv = sig.error / (sig.value * sig.value);
    }
    double diff = c.k_edge - c.sigma_inverse_edge;
    double scale = std::abs(c.k_edge) + std::abs(c.sigma_inverse_edge);
    if (std::abs(diff) <= 1e-13 * scale) {
        c.tie = true;
        c.amplitude_criterion = false;
    } else if (std::abs(diff) <= err_inv) {
        std::ostringstream os;
        os << c.edge << " edge: |K - 1/Sigma| = " << std::abs(diff)
           << " is below the quadrature error " << err_inv;
        throw Error(ErrorCode::EdgeEvaluationFailure, os.str());
    } else {
        c.amplitude_criterion = lower ? diff < 0.0 : diff > 0.0;
    }
    return c;
}

// bracket on (a, b) for a decreasing secular function; infinite ends are
// replaced by sentinels 10 * span away, doubled until the sign is right
double solve_segment(const ValidatedModel& m, double a, double b) {
    auto f = [&](double e) { return secular(m, e); };
    const double span = m.span();
    if (std::isinf(a)) {
        double dist = 10.0 * span;
        double lo = b - dist;
        int guard = 0;
        while (f(lo) <= 0.0) {
            dist *= 2.0, lo = b - dist;
            if (++guard > 60) throw Error(ErrorCode::RootNotFound, "no sign change towards -inf");
        }
        a = lo;
    }
    if (std::isinf(b)) {
        double dist = 10.0 * span;
        double hi = a + dist;
        int guard = 0;
        while (f(hi) >= 0.0) {
            dist *= 2.0, hi = a + dist;
            if (++guard > 60) throw Error(ErrorCode::RootNotFound, "no sign change towards +inf");
        }
        b = hi;
    }
    try {
        return detail::solve_decreasing(f, a, b, 1e-12 * span);
    } catch (const Error& e) {
        std::ostringstream os;
        os << "bracket (" << a << ", " << b << "): " << e.what();
        throw Error(ErrorCode::RootNotFound, os.str());
    }
}

}  // namespace

std::string to_string(BoundStateKind kind) {
    switch (kind) {
        case BoundStateKind::BelowBand: return "below";
        case BoundStateKind::AboveBand: return "above";
        case BoundStateKind::InContinuum: return "bic";
    }
    return "unknown";
}

double BoundState::discrete_norm() const {
    double s = 0.0;
    for (auto a : discrete_amplitudes) s += std::norm(a);
    return s;
}

BoundStateCensus count_bound_states(const ValidatedModel& m) {
    require_couplings(m);
    BoundStateCensus census;
    census.n_low = count_below(m);
    census.n_up = count_above(m);
    const auto zeros = k_zeros(m);
    if (std::isfinite(m.omega_low())) {
        auto c = evaluate_edge(m, true, census.n_low, zeros);
        census.m_below = census.n_low + (c.amplitude_criterion ? 1 : 0);
        if (c.amplitude_criterion && !c.energy_criterion)
            census.notes.push_back("lower edge: amplitude criterion holds without energy criterion");
        census.criteria_trace.push_back(c);
    }
    if (std::isfinite(m.omega_up())) {
        auto c = evaluate_edge(m, false, census.n_up, zeros);
        census.m_above = census.n_up + (c.amplitude_criterion ? 1 : 0);
        if (c.amplitude_criterion && !c.energy_criterion)
            census.notes.push_back("upper edge: amplitude criterion holds without energy criterion");
        census.criteria_trace.push_back(c);
    }
    for (const auto& c : census.criteria_trace) {
        if (c.tie) census.notes.push_back(c.edge + " edge: K(edge) equals 1/Sigma(edge); no root counted");
    }
    if (census.n_low + census.n_up == m.size() && census.outside() != m.size()) {
        std::ostringstream os;
        os << "all " << m.size() << " levels lie outside the band but " << census.outside()
           << " bound states are counted";
        census.notes.push_back(os.str());
    }
    census.m_bic = static_cast<int>(find_bics(m).size());
    return census;
}

BoundState make_bound_state(const ValidatedModel& m, double e, BoundStateKind kind) {
    BoundState s;
    s.energy = e;
    s.kind = kind;
    const double sigma = self_energy(m, e);
    const double dsigma = self_energy_derivative(m, e);
    const double k = k_function(m, e);
    const double dk = k_derivative(m, e);
    if (sigma == 0.0) {
        throw Error(ErrorCode::NormalizationFailure, "Sigma(E_m) = 0 for a root of K = 1/Sigma");
    }
    const double b2 = -sigma / (dk * sigma + k * dsigma);
    if (!(b2 > 0.0) || !std::isfinite(b2)) {
        std::ostringstream os;
        os << "|B|^2 = " << b2 << " at E = " << e;
        throw Error(ErrorCode::NormalizationFailure, os.str());
    }
    const double b = std::sqrt(b2);
    s.normalization = b2;
    s.sigma = sigma;
    s.sigma_derivative = dsigma;
    for (int n = 0; n < m.size(); ++n) s.discrete_amplitudes.push_back(b * m.coupling(n) / (e - m.level(n)));
    const cplx weight = b * k;
    s.continuum_profile = [m, weight, e](double w) -> cplx {
        return weight * std::sqrt(m.spectral_density(w)) / (e - w);
    };
    return s;
}

std::vector<BoundState> solve_bound_states(const ValidatedModel& m) {
    const BoundStateCensus census = count_bound_states(m);
    std::vector<BoundState> out;
    const auto& lv = m.levels();
    const int n = m.size();
    if (std::isfinite(m.omega_low())) {
        // segments (-inf, e_1), (e_1, e_2), ..., ending at omega_low
        double left = -kInf;
        for (int i = 0; i < census.n_low; ++i) {
            out.push_back(make_bound_state(m, solve_segment(m, left, lv[i]), BoundStateKind::BelowBand));
            left = lv[i];
        }
        if (census.m_below > census.n_low) {
            out.push_back(make_bound_state(m, solve_segment(m, left, m.omega_low()),
                                           BoundStateKind::BelowBand));
        }
    }
    if (std::isfinite(m.omega_up())) {
        const int first = n - census.n_up;
        double left = m.omega_up();
        if (census.m_above > census.n_up) {
            double right = census.n_up > 0 ? lv[first] : kInf;
            out.push_back(make_bound_state(m, solve_segment(m, left, right), BoundStateKind::AboveBand));
        }
        for (int i = first; i < n; ++i) {
            double right = i + 1 < n ? lv[i + 1] : kInf;
            out.push_back(make_bound_state(m, solve_segment(m, lv[i], right), BoundStateKind::AboveBand));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return out;
}

std::vector<BoundState> find_bics(const ValidatedModel& m) {
    std::vector<BoundState> out;
    for (double e0 : m.band().interior_zeros) {
        int level = -1;
        for (int n = 0; n < m.size(); ++n) {
            if (std::abs(m.level(n) - e0) <= 1e-12 * m.span()) level = n;
        }
        auto sig = self_energy_detail(m, e0);
        if (level >= 0) {
            // Sigma(E0) must vanish; compare with the absolute-kernel scale
            double scale = 0.0;
            {
                const auto& band = m.band();
                auto f = [&](double x) { return band.spectral_density(x) / std::abs(e0 - x); };
                std::function<double(double)> g = f;
                scale = integrate_tanh_sinh(g, std::max(band.omega_low, e0 - 1e6 * m.span()), e0, 1e-8).value +
                        integrate_tanh_sinh(g, e0, std::min(band.omega_up, e0 + 1e6 * m.span()), 1e-8).value;
            }
            if (std::abs(sig.value) > 1e-9 * scale + 10.0 * sig.error) continue;
            const double fm2 = m.coupling_sq(level);
            const double dsig = self_energy_derivative(m, e0);
            const double b2 = 1.0 / (1.0 - fm2 * dsig);
            BoundState s;
            s.energy = m.level(level);
            s.kind = BoundStateKind::InContinuum;
            s.normalization = b2;
            s.at_level = true;
            s.level_index = level;
            s.sigma = 0.0;
            s.sigma_derivative = dsig;
            const double b = std::sqrt(b2);
            s.discrete_amplitudes.assign(m.size(), cplx(0.0));
            s.discrete_amplitudes[level] = b;
            const cplx weight = b * std::conj(m.coupling(level));
            const double e = s.energy;
            s.continuum_profile = [m, weight, e](double w) -> cplx {
                return weight * std::sqrt(m.spectral_density(w)) / (e - w);
            };
            out.push_back(std::move(s));
            continue;
        }
        const double k = k_function(m, e0);
        if (std::abs(1.0 - k * sig.value) > 1e-9) continue;
        BoundState s = make_bound_state(m, e0, BoundStateKind::InContinuum);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<BoundState> all_bound_states(const ValidatedModel& m) {
    auto out = solve_bound_states(m);
    for (auto& b : find_bics(m)) out.push_back(std::move(b));
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return out;
}

}  // namespace friedrichs
