#include "roots.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "friedrichs/error.hpp"

namespace friedrichs::detail {

double solve_decreasing(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) throw Error(ErrorCode::RootNotFound, "empty bracket");
    double lo = a, hi = b;
    double flo = 0.0, fhi = 0.0;
    bool have_lo = false, have_hi = false;
    const double width = b - a;
    for (int it = 0; it < 400; ++it) {
        if (have_lo && have_hi && hi - lo <= 1e-3 * width) break;
        if (hi - lo <= tol) return 0.5 * (lo + hi);
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::isnan(fm)) throw Error(ErrorCode::RootNotFound, "function returned NaN");
        if (fm == 0.0) return mid;
        if (fm > 0.0) {
            lo = mid, flo = fm, have_lo = true;
        } else {
            hi = mid, fhi = fm, have_hi = true;
        }
    }
    if (!(have_lo && have_hi)) {
        std::ostringstream os;
        os << "bisection on (" << a << ", " << b << ") never changed sign";
        throw Error(ErrorCode::RootNotFound, os.str());
    }
    std::uintmax_t max_iter = 200;
    auto done = [tol](double x, double y) { return std::abs(y - x) <= tol; };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, max_iter);
    return 0.5 * (r.first + r.second);
}

}  // namespace friedrichs::detail
