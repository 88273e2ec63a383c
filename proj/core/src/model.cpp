#include "friedrichs/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "friedrichs/error.hpp"

namespace friedrichs {

namespace {

void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) throw Error(code, what);
}

// sample points strictly inside the band; semi-infinite parts through a tan map
std::vector<double> band_samples(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(count);
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    for (int i = 1; i <= count; ++i) {
        double u = static_cast<double>(i) / (count + 1);
        double x;
        if (!lo_inf && !hi_inf) {
            x = lo + (hi - lo) * u;
        } else if (lo_inf && hi_inf) {
            x = std::tan(M_PI * (u - 0.5));
        } else if (lo_inf) {
            x = hi - u / (1.0 - u) * 4.0;
        } else {
            x = lo + u / (1.0 - u) * 4.0;
        }
        out.push_back(x);
    }
    return out;
}

}  // namespace

bool ValidatedModel::finite_band() const {
    return std::isfinite(omega_low()) && std::isfinite(omega_up());
}

double ValidatedModel::spectral_density(double omega) const {
    if (!(omega > omega_low() && omega < omega_up())) return 0.0;
    return model_->continuum.spectral_density(omega);
}

int ValidatedModel::interior_zero_index(double e) const {
    const auto& zeros = model_->continuum.interior_zeros;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (std::abs(zeros[i] - e) <= 1e-12 * span_) return static_cast<int>(i);
    }
    return -1;
}

ValidatedModel validate_model(FriedrichsModel model) {
    auto& d = model.discrete;
    auto& c = model.continuum;
    const std::size_t n = d.levels.size();
    require(n >= 1, ErrorCode::InvalidModel, "at least one discrete level is required");
    require(d.couplings.size() == n, ErrorCode::InvalidModel,
            "levels and couplings differ in length");
    for (std::size_t i = 0; i < n; ++i) {
        require(std::isfinite(d.levels[i]), ErrorCode::InvalidModel, "non-finite level");
        require(std::isfinite(d.couplings[i].real()) && std::isfinite(d.couplings[i].imag()),
                ErrorCode::InvalidModel, "non-finite coupling");
    }
    require(!std::isnan(c.omega_low) && !std::isnan(c.omega_up), ErrorCode::InvalidModel,
            "band edge is NaN");
    require(c.omega_low < c.omega_up, ErrorCode::EmptyBand, "omega_low must be below omega_up");
    require(static_cast<bool>(c.spectral_density), ErrorCode::InvalidModel,
            "spectral density is not set");

    double lo = d.levels.front();
    double hi = d.levels.back();
    for (double e : d.levels) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    if (std::isfinite(c.omega_low)) lo = std::min(lo, c.omega_low), hi = std::max(hi, c.omega_low);
    if (std::isfinite(c.omega_up)) lo = std::min(lo, c.omega_up), hi = std::max(hi, c.omega_up);
    double span = hi - lo;
    if (!(span > 0.0)) span = 1.0;

    for (std::size_t i = 1; i < n; ++i) {
        double gap = d.levels[i] - d.levels[i - 1];
        if (std::abs(gap) <= 1e-12 * span) {
            std::ostringstream os;
            os << "levels " << i - 1 << " and " << i << " coincide at " << d.levels[i];
            throw Error(ErrorCode::DegenerateLevels, os.str());
        }
        require(gap > 0.0, ErrorCode::InvalidModel, "levels must be strictly increasing");
    }

    for (double x : band_samples(c.omega_low, c.omega_up, 513)) {
        double j = c.spectral_density(x);
        if (std::isnan(j) || j < -1e-14) {
            std::ostringstream os;
            os << "J(" << x << ") = " << j;
            throw Error(ErrorCode::NegativeSpectralDensity, os.str());
        }
    }

    std::sort(c.interior_zeros.begin(), c.interior_zeros.end());
    for (double z : c.interior_zeros) {
        require(z > c.omega_low && z < c.omega_up, ErrorCode::InvalidModel,
                "declared zero of J lies outside the band");
    }
    require(c.interior_zero_order >= 1, ErrorCode::InvalidModel, "zero order must be positive");
    for (auto s : {c.s_low, c.s_up}) {
        if (s) require(*s > 0.0, ErrorCode::InvalidModel, "edge exponents must be positive");
    }
    if (c.dispersion) {
        const auto& k = *c.dispersion;
        require(k.k_low < k.k_up && k.omega && k.from_low && k.to_up && k.weight,
                ErrorCode::InvalidModel, "incomplete dispersion");
        require(std::isfinite(c.omega_low) && std::isfinite(c.omega_up), ErrorCode::InvalidModel,
                "dispersion requires a finite band");
    }

    ValidatedModel out;
    out.model_ = std::make_shared<const FriedrichsModel>(std::move(model));
    out.span_ = span;
    return out;
}

void validate_initial_state(const ValidatedModel& model, const InitialState& initial) {
    if (static_cast<int>(initial.amplitudes.size()) != model.size()) {
        throw Error(ErrorCode::InvalidModel, "initial state has wrong dimension");
    }
    double norm = 0.0;
    for (auto a : initial.amplitudes) norm += std::norm(a);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os << "sum |c_n|^2 = " << norm;
        throw Error(ErrorCode::UnnormalizedInitialState, os.str());
    }
}

Eigen::VectorXcd to_vector(const std::vector<cplx>& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

}  // namespace friedrichs
