// model.hpp — Friedrichs model data: discrete levels, couplings, continuum band
//
// Units: hbar = 1, energies in a user-chosen base unit, times in inverse energy.
// Only the products |f_n|^2 J(omega) enter any observable, so f_n carries
// energy^{1/2} and J = |g|^2 rho is taken dimensionless.

#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace friedrichs {

using cplx = std::complex<double>;

struct DiscreteSpectrum {
    std::vector<double> levels;    // epsilon_n, strictly increasing
    std::vector<cplx> couplings;   // f_n
};

// Optional parametrisation of a finite band by a wave number k in [k_low, k_up],
// omega(k) increasing.  Integrals over the band are done in k, which removes
// inverse square-root edge singularities of van Hove type.
struct Dispersion {
    double k_low = 0.0;
    double k_up = 0.0;
    std::function<double(double)> omega;
    // omega(k) - omega_low and omega_up - omega(k), evaluated without cancellation
    std::function<double(double)> from_low;
    std::function<double(double)> to_up;
    // J(omega(k)) * omega'(k)
    std::function<double(double)> weight;
};

struct ContinuumBand {
    double omega_low = 0.0;   // may be -infinity
    double omega_up = 0.0;    // may be +infinity
    std::function<double(double)> spectral_density;   // J(omega) >= 0 inside the band
    // power-law exponent of J at each finite edge; nullopt marks a divergent
    // edge, where Sigma(edge) is infinite
    std::optional<double> s_low;
    std::optional<double> s_up;
    std::vector<double> interior_zeros;   // exact zeros of J inside the band
    int interior_zero_order = 2;          // J ~ (omega - zero)^order
    std::optional<Dispersion> dispersion;
    // optional factored form J = |g|^2 rho
    std::function<double(double)> density;
    std::function<cplx(double)> form_factor;
};

// Closed forms supplied by built-in models.  Real-axis Sigma outside the band
// and at interior zeros, its derivative there, and (Delta, Gamma) inside.
struct AnalyticOverrides {
    std::function<double(double)> self_energy;
    std::function<double(double)> self_energy_derivative;
    std::function<std::pair<double, double>(double)> shift_width;
};

struct FriedrichsModel {
    DiscreteSpectrum discrete;
    ContinuumBand continuum;
    std::optional<AnalyticOverrides> overrides;
};

struct InitialState {
    std::vector<cplx> amplitudes;
};

// Immutable, validated model handle.  Cheap to copy.
class ValidatedModel {
public:
    const FriedrichsModel& model() const { return *model_; }
    const ContinuumBand& band() const { return model_->continuum; }
    int size() const { return static_cast<int>(model_->discrete.levels.size()); }
    const std::vector<double>& levels() const { return model_->discrete.levels; }
    const std::vector<cplx>& couplings() const { return model_->discrete.couplings; }
    double level(int n) const { return model_->discrete.levels[n]; }
    cplx coupling(int n) const { return model_->discrete.couplings[n]; }
    double coupling_sq(int n) const { return std::norm(model_->discrete.couplings[n]); }

    double omega_low() const { return model_->continuum.omega_low; }
    double omega_up() const { return model_->continuum.omega_up; }
    bool finite_band() const;
    bool inside_band(double e) const { return e > omega_low() && e < omega_up(); }
    double spectral_density(double omega) const;
    bool has_overrides() const { return model_->overrides.has_value(); }

    // width of the interval spanned by the levels and the finite band edges
    double span() const { return span_; }
    // tolerance for coincidences with a pole: 1e-13 * span
    double pole_tolerance() const { return 1e-13 * span_; }

    // index of the declared interior zero equal to e within 1e-12 * span, or -1
    int interior_zero_index(double e) const;

private:
    friend ValidatedModel validate_model(FriedrichsModel model);
    std::shared_ptr<const FriedrichsModel> model_;
    double span_ = 1.0;
};

ValidatedModel validate_model(FriedrichsModel model);
// idempotent: returns the handle unchanged
inline ValidatedModel validate_model(const ValidatedModel& model) { return model; }

// throws UnnormalizedInitialState if the norm deviates from 1 by more than 1e-12
void validate_initial_state(const ValidatedModel& model, const InitialState& initial);

Eigen::VectorXcd to_vector(const std::vector<cplx>& v);

}  // namespace friedrichs
