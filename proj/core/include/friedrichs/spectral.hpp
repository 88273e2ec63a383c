// spectral.hpp — self-energy, shift/width and the rational kernels K, K', I

#pragma once

#include <complex>
#include <vector>

#include "friedrichs/model.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs {

// Auto uses the model's closed forms when present; Quadrature ignores them.
enum class Evaluation { Auto, Quadrature };

// Sigma(E) = int J(w)/(E - w) dw for E outside the open band, at a finite
// edge with convergent exponent, or at a declared zero of J.
QuadratureResult self_energy_detail(const ValidatedModel& model, double e,
                                    Evaluation how = Evaluation::Auto);
double self_energy(const ValidatedModel& model, double e, Evaluation how = Evaluation::Auto);

// Sigma'(E) = -int J(w)/(E - w)^2 dw, same domain; at edges the exponent must
// exceed 1 and at interior zeros J must vanish at least quadratically.
QuadratureResult self_energy_derivative_detail(const ValidatedModel& model, double e,
                                               Evaluation how = Evaluation::Auto);
double self_energy_derivative(const ValidatedModel& model, double e,
                              Evaluation how = Evaluation::Auto);

struct ShiftWidth {
    double delta = 0.0;   // principal-value shift
    double gamma = 0.0;   // pi J(E)
    double error = 0.0;   // quadrature error estimate on delta
};

// Boundary value Sigma(E + i0) = delta - i gamma for E strictly inside the band.
ShiftWidth delta_gamma(const ValidatedModel& model, double e, Evaluation how = Evaluation::Auto);

// K(z) = sum |f_n|^2/(z - eps_n), K'(z) and I(z) = sum conj(f_n) c_n/(z - eps_n).
// PoleHit when |z - eps_n| < 1e-13 * span.
cplx k_function(const ValidatedModel& model, cplx z);
cplx k_derivative(const ValidatedModel& model, cplx z);
cplx i_function(const ValidatedModel& model, const InitialState& initial, cplx z);
double k_function(const ValidatedModel& model, double e);
double k_derivative(const ValidatedModel& model, double e);

// The N-1 real zeros of K, one in each (eps_n, eps_{n+1}).
std::vector<double> k_zeros(const ValidatedModel& model);

}  // namespace friedrichs
