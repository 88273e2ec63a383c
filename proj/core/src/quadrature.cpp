#include "friedrichs/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "friedrichs/error.hpp"

namespace friedrichs {

namespace {

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
    thread_local boost::math::quadrature::tanh_sinh<double> rule(12);
    return rule;
}

QuadratureResult checked(double value, double error, double a, double b) {
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << "non-finite integral on [" << a << ", " << b << "]";
        throw Error(ErrorCode::QuadratureFailure, os.str());
    }
    return {value, error};
}

[[noreturn]] void rethrow(const std::exception& ex, double a, double b) {
    std::ostringstream os;
    os << "on [" << a << ", " << b << "]: " << ex.what();
    throw Error(ErrorCode::QuadratureFailure, os.str());
}

}  // namespace

QuadratureResult integrate_tanh_sinh(const EndpointIntegrand& f, double a, double b,
                                     double rel_tol) {
    if (a == b) return {};
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        auto g = [&](double x, double xc) { return f(x, xc); };
        value = tanh_sinh_rule().integrate(g, a, b, rel_tol, &error, &l1);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        rethrow(ex, a, b);
    }
    return checked(value, error, a, b);
}

QuadratureResult integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol) {
    if (a == b) return {};
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        auto g = [&](double x) { return f(x); };
        value = tanh_sinh_rule().integrate(g, a, b, rel_tol, &error, &l1);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        rethrow(ex, a, b);
    }
    return checked(value, error, a, b);
}

QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol, unsigned max_depth) {
    if (a == b) return {};
    double error = 0.0;
    double value = 0.0;
    try {
        auto g = [&](double x) { return f(x); };
        value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, a, b, max_depth,
                                                                              rel_tol, &error);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& ex) {
        rethrow(ex, a, b);
    }
    return checked(value, error, a, b);
}

}  // namespace friedrichs
