// oracles.hpp — independent reference computations used by the tests
//
// Nothing here calls the quadrature, root finding or closed forms under test.

#pragma once

#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "friedrichs/model.hpp"

namespace friedrichs::testing {

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n
struct GaussRule {
    std::vector<double> x, w;
};
GaussRule gauss_legendre(int n);

// composite Gauss-Legendre on [a, b]
double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 64,
                    int order = 20);

// integral over a finite band [a, b] after omega = c - h cos(theta); removes
// square-root edge behaviour (both vanishing and van Hove divergent)
double integrate_band(const std::function<double(double)>& f, double a, double b,
                      int panels = 128, int order = 20);

// Families with closed-form self-energy outside the band
struct ClosedBand {
    std::string name;
    double low = 0.0, high = 0.0;
    std::function<double(double)> J;
    std::function<double(double)> sigma;         // E outside [low, high]
    std::function<double(double)> sigma_prime;
    bool divergent_edges = false;
    double edge_exponent = 0.0;
};

// J = j0 on [a, b]; logarithmic Sigma, divergent at the edges
ClosedBand flat_band(double a, double b, double j0);
// J = 2w sqrt(r^2 - x^2) / (pi r^2), x = omega - c
ClosedBand semicircle_band(double c, double r, double w);
// J = 3w (1 - x^2) / (4h), x = (omega - c) / h
ClosedBand parabolic_band(double c, double h, double w);

// FriedrichsModel from a closed band (no overrides, no dispersion)
FriedrichsModel model_from(const ClosedBand& band, const std::vector<double>& levels,
                           const std::vector<std::complex<double>>& couplings);

// sign changes of det[E - diag(eps) - Sigma(E) f f^dagger] on a grid outside
// the band, clustered towards the edges
struct DetScanCount {
    int below = 0;
    int above = 0;
};
DetScanCount det_scan(const ClosedBand& band, const std::vector<double>& levels,
                      const std::vector<std::complex<double>>& couplings, int grid_points);

// random model with N levels and couplings for the given band
struct RandomModel {
    std::vector<double> levels;
    std::vector<std::complex<double>> couplings;
};
RandomModel random_model(std::mt19937_64& rng, int n, double low, double high, bool complex_f);

// |DFT| of a real series sampled at spacing dt, angular frequencies k * 2 pi / (n dt)
struct Spectrum {
    std::vector<double> omega, magnitude;
};
Spectrum dft(const std::vector<double>& samples, double dt);

// e^{-iHt} psi via dense eigen-decomposition of a Hermitian matrix
Eigen::VectorXcd evolve_hermitian(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi, double t);

// exp(a) by scaling and squaring of a truncated Taylor series; any square matrix
Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a);

}  // namespace friedrichs::testing
