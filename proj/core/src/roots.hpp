// roots.hpp — bracketed solver for strictly decreasing functions

#pragma once

#include <functional>

namespace friedrichs::detail {

// Root of f on the open interval (a, b), where f(a+) > 0 > f(b-).  The
// endpoints are never evaluated (they may be poles).  Bisection shrinks the
// bracket to 1e-3 of its width, then TOMS 748 finishes to |b - a| <= tol.
double solve_decreasing(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace friedrichs::detail
