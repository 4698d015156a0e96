#include "quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

namespace percolab::detail {

namespace {

void check(double value, double error, double magnitude, double tol, const char* rule) {
    if (!std::isfinite(value) || error > std::max(tol, tol * magnitude) * 1e3) {
        throw std::runtime_error(std::string("quadrature failed to converge (") + rule + ")");
    }
}

}  // namespace

double integrate_finite(const Integrand& f, double a, double b, double tol) {
    boost::math::quadrature::tanh_sinh<double> rule;
    double error = 0, l1 = 0;
    const double value = rule.integrate(f, a, b, tol, &error, &l1);
    check(value, error, l1, tol, "tanh-sinh");
    return value;
}

double integrate_to_infinity(const Integrand& f, double a, double tol) {
    boost::math::quadrature::exp_sinh<double> rule;
    double error = 0, l1 = 0;
    const double value = rule.integrate([&](double x) { return f(x + a); }, tol, &error, &l1);
    check(value, error, l1, tol, "exp-sinh");
    return value;
}

double integrate_smooth(const Integrand& f, double a, double b, double tol) {
    double error = 0, l1 = 0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &error, &l1);
    check(value, error, l1, tol, "Gauss-Kronrod");
    return value;
}

}  // namespace percolab::detail
