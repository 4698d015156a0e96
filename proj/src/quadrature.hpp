#pragma once

#include <functional>

namespace percolab::detail {

using Integrand = std::function<double(double)>;

// Double-exponential rules from Boost.Math; they tolerate integrable endpoint
// singularities. Throw std::runtime_error if the error estimate exceeds tol.
double integrate_finite(const Integrand& f, double a, double b, double tol = 1e-13);
double integrate_to_infinity(const Integrand& f, double a, double tol = 1e-13);
// Adaptive Gauss-Kronrod for smooth integrands on [a, b].
double integrate_smooth(const Integrand& f, double a, double b, double tol = 1e-13);

}  // namespace percolab::detail
