#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "percolab/limit.hpp"
#include "quadrature.hpp"

namespace percolab {

double a_alpha(double tau) {
    if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("a_alpha needs tau in (2, 3)");
    const double s = tau - 1.0;  // exponent 1/alpha, in (1, 2)
    // [0,1]: z^{1-s} integrates to 1/(2-s); the remainder (1 - e^{-z} - z) z^{-s} is bounded.
    const double head = 1.0 / (2.0 - s) + detail::integrate_finite(
                                              [s](double z) {
                                                  if (z < 1e-4) return z * (z / 6.0 - 0.5) * std::pow(z, 1.0 - s);
                                                  return (-std::expm1(-z) - z) * std::pow(z, -s);
                                              }, 0.0,
                                              1.0);
    // [1,inf): z^{-s} integrates to 1/(s-1); subtract the exponentially damped part.
    const double tail =
        1.0 / (s - 1.0) - detail::integrate_to_infinity([s](double z) { return std::exp(-z) * std::pow(z, -s); }, 1.0);
    return head + tail;
}

double lambda_c(double tau, double c_f, double mu) {
    if (!(c_f > 0.0) || !(mu > 0.0)) throw std::invalid_argument("lambda_c needs c_F, mu > 0");
    const double inv_alpha = tau - 1.0;
    return 0.5 * std::pow(c_f, -inv_alpha) * std::sqrt((3.0 - tau) * std::pow(mu, inv_alpha) / a_alpha(tau));
}

namespace {

void check_params(const TinyGiantParams& p) {
    if (!(p.tau > 2.0 && p.tau < 3.0)) throw std::invalid_argument("tiny giant needs tau in (2, 3)");
    if (!(p.c_f > 0.0) || !(p.mu > 0.0) || !(p.lambda >= 0.0)) throw std::invalid_argument("tiny giant: bad parameters");
}

// (1 - e^{-z}) / z, continuous at 0.
double phi(double z) { return z < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z; }

struct PairIntegrand {
    double alpha, cu, cv, p;

    // Theta_u(x) Theta_v(x) on x in [0, 1].
    double head(double x) const {
        const double y = std::pow(x, -alpha);
        return -std::expm1(-cu * y) * -std::expm1(-cv * y);
    }
    // x = s^{-p} maps [1, inf) to (0, 1]; with p = 1/(2 alpha - 1) the Jacobian
    // cancels the x^{-2 alpha} decay exactly.
    double tail(double s) const {
        const double y = std::pow(s, p * alpha);
        return p * cu * phi(cu * y) * cv * phi(cv * y);
    }
};

PairIntegrand pair_integrand(const TinyGiantParams& prm, std::size_t u, std::size_t v) {
    if (u == 0 || v == 0) throw std::invalid_argument("lambda_uv uses 1-based vertices");
    const double alpha = 1.0 / (prm.tau - 1.0);
    auto c = [&](std::size_t w) { return prm.c_f * prm.c_f * std::pow(static_cast<double>(w), -alpha) / prm.mu; };
    return {alpha, c(u), c(v), 1.0 / (2.0 * alpha - 1.0)};
}

}  // namespace

double lambda_uv(const TinyGiantParams& prm, std::size_t u, std::size_t v) {
    check_params(prm);
    const PairIntegrand f = pair_integrand(prm, u, v);
    if (prm.lambda == 0.0) return 0.0;
    const double head = detail::integrate_finite([&](double x) { return f.head(x); }, 0.0, 1.0, 1e-12);
    const double tail = detail::integrate_finite([&](double s) { return f.tail(s); }, 0.0, 1.0, 1e-12);
    return prm.lambda * prm.lambda * (head + tail);
}

double lambda_uv_midpoint(const TinyGiantParams& prm, std::size_t u, std::size_t v, std::size_t panels) {
    check_params(prm);
    const PairIntegrand f = pair_integrand(prm, u, v);
    const double h = 1.0 / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * h;
        sum += f.head(x) + f.tail(x);
    }
    return prm.lambda * prm.lambda * sum * h;
}

MultiGraph tiny_giant_graph(const TinyGiantParams& prm, std::size_t V, Rng& rng) {
    check_params(prm);
    if (V == 0) throw std::invalid_argument("tiny_giant_graph needs V >= 1");
    std::vector<Edge> edges;
    if (prm.lambda > 0.0) {
        for (std::size_t u = 1; u <= V; ++u) {
            for (std::size_t v = u + 1; v <= V; ++v) {
                const double rate = lambda_uv(prm, u, v);
                if (!(rate > 0.0)) continue;
                std::poisson_distribution<std::uint32_t> pois(rate);
                for (std::uint32_t k = pois(rng); k > 0; --k) {
                    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
                }
            }
        }
    }
    return MultiGraph(V, std::move(edges));
}

RhoSolution rho_fixed_point(double a, const TinyGiantParams& prm, std::size_t grid_size, double tol,
                            std::size_t max_iter) {
    check_params(prm);
    if (!(a > 0.0) || grid_size < 2) throw std::invalid_argument("rho_fixed_point needs a > 0 and grid_size >= 2");
    const double alpha = 1.0 / (prm.tau - 1.0);
    const double c = prm.c_f * prm.c_f / prm.mu;
    auto kappa = [&](double u, double v) { return -std::expm1(-c * std::pow(u * v, -alpha)); };

    const std::size_t G = grid_size;
    const double u_min = std::min(a, 1.0) * 1e-6;
    const double h = std::log(a / u_min) / static_cast<double>(G - 1);
    RhoSolution sol;
    sol.u.resize(G);
    std::vector<double> w(G);
    for (std::size_t i = 0; i < G; ++i) {
        sol.u[i] = u_min * std::exp(h * static_cast<double>(i));
        w[i] = h * sol.u[i] * ((i == 0 || i + 1 == G) ? 0.5 : 1.0);
    }
    // Trapezoid in log u on [u_min, a]; (0, u_min) carries rho(u_min).
    std::vector<double> K(G * G), head(G);
    for (std::size_t i = 0; i < G; ++i) {
        for (std::size_t j = 0; j < G; ++j) K[i * G + j] = kappa(sol.u[i], sol.u[j]) * w[j];
        head[i] = u_min * kappa(sol.u[i], 0.5 * u_min);
    }
    sol.rho.assign(G, 1.0);
    std::vector<double> next(G);
    if (prm.lambda == 0.0) {
        std::fill(sol.rho.begin(), sol.rho.end(), 0.0);
    } else {
        for (sol.iterations = 1; sol.iterations <= max_iter; ++sol.iterations) {
            double change = 0.0;
            for (std::size_t i = 0; i < G; ++i) {
                double acc = head[i] * sol.rho[0];
                const double* row = &K[i * G];
                for (std::size_t j = 0; j < G; ++j) acc += row[j] * sol.rho[j];
                next[i] = -std::expm1(-prm.lambda * acc);
                change = std::max(change, std::abs(next[i] - sol.rho[i]));
            }
            sol.rho.swap(next);
            if (change < tol) break;
        }
        if (sol.iterations > max_iter) throw std::runtime_error("rho_fixed_point: iteration cap reached");
    }
    double z = prm.c_f * std::pow(u_min, 1.0 - alpha) / (1.0 - alpha) * sol.rho[0];
    for (std::size_t i = 0; i < G; ++i) z += prm.c_f * std::pow(sol.u[i], -alpha) * sol.rho[i] * w[i];
    sol.zeta = prm.lambda * z;
    return sol;
}

double zeta(double a, const TinyGiantParams& prm, std::size_t grid_size, double tol) {
    return rho_fixed_point(a, prm, grid_size, tol).zeta;
}

ZetaLimit zeta_limit(const TinyGiantParams& prm, double tol, double a_max, std::size_t grid_size) {
    check_params(prm);
    // For large a the missing mass behaves like C a^{1 - 2 alpha}; with a growing
    // by 4 each step, one Richardson step removes that term.
    const double alpha = 1.0 / (prm.tau - 1.0);
    const double r = std::pow(4.0, 1.0 - 2.0 * alpha);
    ZetaLimit out;
    double previous_raw = 0.0, previous = 0.0;
    bool first = true;
    for (double a = 1.0; a <= a_max; a *= 4.0) {
        const double z = zeta(a, prm, grid_size);
        const double extrapolated = first ? z : z + (z - previous_raw) * r / (1.0 - r);
        out.zeta = extrapolated;
        out.a = a;
        if (!first && previous > 0.0 && std::abs(extrapolated - previous) <= tol * extrapolated) {
            out.converged = true;
            return out;
        }
        previous_raw = z;
        previous = extrapolated;
        first = false;
    }
    // Still zero at the largest truncation: no giant at this lambda.
    out.converged = out.zeta < 1e-9;  // residue of the iteration tolerance
    return out;
}

}  // namespace percolab
