// dynamics.hpp — exact survival probability: bound-state sum plus scattering integral

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "friedrichs/bound_states.hpp"
#include "friedrichs/model.hpp"

namespace friedrichs {

struct DecayCoefficients {
    std::vector<double> energies;   // E_m of the bound states
    Eigen::MatrixXcd R;             // N x M, R(n, m)
    // scattering weight density S_n(E) for E inside the band
    std::function<cplx(double e, int n)> S;
};

DecayCoefficients decay_coefficients(const ValidatedModel& model, const InitialState& initial,
                                     const std::vector<BoundState>& bound_states);

struct SurvivalParts {
    double bound = 0.0;        // sum_n |bound amplitude|^2
    double scattering = 0.0;   // sum_n |scattering amplitude|^2
    double cross = 0.0;        // interference of the two
};

struct SurvivalSeries {
    std::vector<double> times;
    std::vector<double> p;
    std::vector<SurvivalParts> parts;
    double max_error_estimate = 0.0;
};

struct SurvivalOptions {
    // target for the non-oscillatory base partition of the scattering integral
    double base_tolerance = 1e-9;
    // per-time error estimate above which QuadratureBudgetExceeded is thrown
    double budget_tolerance = 1e-5;
    std::size_t max_nodes = 2'000'000;
    unsigned threads = 1;
};

// Fixed Gauss-Kronrod node set over the band, valid for |t| <= t_max.  The
// band is mapped by E = c - h cos(theta); panels are refined adaptively for
// the integrand and then split until each spans at most pi/(4 t_max) in energy.
class SurvivalEvaluator {
public:
    SurvivalEvaluator(const ValidatedModel& model, const InitialState& initial,
                      std::vector<BoundState> bound_states, double t_max,
                      const SurvivalOptions& options = {});

    Eigen::VectorXcd bound_amplitudes(double t) const;
    Eigen::VectorXcd scattering_amplitudes(double t) const;
    // embedded Gauss-7 error estimate of the scattering amplitudes at t
    double error_estimate(double t) const;

    double survival(double t) const;
    SurvivalParts parts(double t) const;

    const DecayCoefficients& coefficients() const { return coeffs_; }
    const std::vector<BoundState>& bound_states() const { return bound_; }
    std::size_t node_count() const { return energy_.size(); }
    double t_max() const { return t_max_; }

private:
    DecayCoefficients coeffs_;
    std::vector<BoundState> bound_;
    double t_max_ = 0.0;
    std::vector<double> energy_;
    std::vector<double> kronrod_w_;
    std::vector<double> gauss_w_;
    std::vector<std::size_t> panel_start_;
    Eigen::MatrixXcd g_;   // nodes x N, S_n(E_j) times the Jacobian
};

SurvivalSeries survival_probability(const ValidatedModel& model, const InitialState& initial,
                                    const std::vector<double>& times,
                                    const SurvivalOptions& options = {});

struct Beat {
    int m = 0;
    int m2 = 0;
    double frequency = 0.0;   // E_m - E_m2
    double amplitude = 0.0;   // |sum_n R_nm conj(R_nm2)|
    double phase = 0.0;       // arg of the same sum
};

// p(t) -> mean + sum over beats of 2 amplitude cos(frequency t - phase)
struct LongTimeLimit {
    double mean = 0.0;
    std::vector<Beat> beats;
};

LongTimeLimit long_time_limit(const ValidatedModel& model, const InitialState& initial,
                              const std::vector<BoundState>& bound_states);

}  // namespace friedrichs
