// quadrature.hpp — adaptive quadrature wrappers returning value and error estimate

#pragma once

#include <functional>

namespace friedrichs {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

// Integrand receiving x and its signed distance xc to the nearer endpoint
// (xc = a - x in the left half, b - x in the right half), so that integrands
// singular at an endpoint can be evaluated without cancellation.
using EndpointIntegrand = std::function<double(double x, double xc)>;

// Double-exponential rule on a finite interval; tolerates integrable endpoint
// singularities.  Throws QuadratureFailure on non-finite results.
QuadratureResult integrate_tanh_sinh(const EndpointIntegrand& f, double a, double b,
                                     double rel_tol = 1e-12);

// Same rule on intervals with one or both endpoints infinite (or finite).
QuadratureResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol = 1e-12);

// Adaptive 15-point Gauss-Kronrod on a finite interval.
QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol = 1e-12, unsigned max_depth = 20);

}  // namespace friedrichs
