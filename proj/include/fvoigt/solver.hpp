#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvoigt/alpha_kernel.hpp"
#include "fvoigt/gamma.hpp"
#include "fvoigt/problem.hpp"
#include "fvoigt/trajectory.hpp"

namespace fvoigt {

namespace detail {

// Exact step weights for convolution against the alpha-exponential kernel:
// W_m is the kernel mass over ((m-1)h, mh], so a forcing taken as piecewise
// constant on step cells integrates without further quadrature error.
inline std::vector<double> kernel_step_weights(double alpha, double lambda, double h,
                                               std::size_t steps, double tol) {
    std::vector<double> w(steps + 1, 0.0);
    double prev = 0.0;
    for (std::size_t m = 1; m <= steps; ++m) {
        const double cur = kernel_integral(alpha, lambda, static_cast<double>(m) * h, tol);
        w[m] = cur - prev;
        prev = cur;
    }
    return w;
}

inline void check_march_params(const char* name, double horizon, std::size_t steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error(std::string(name) + ": horizon must be positive");
    if (steps < 1) throw std::domain_error(std::string(name) + ": steps must be positive");
}

// Number of grid cells needed to cover the history interval [-v, 0].
inline std::size_t history_cells(double v, double h) {
    const double cells = v / h;
    auto m = static_cast<std::size_t>(std::ceil(cells - 1e-9));
    if (m < 1) m = 1;
    return m;
}

// History sample at a grid node t <= 0. Nodes sit on multiples of h, so at
// most the first one can fall below -v; that one is filled by extending the
// first chord of psi linearly, keeping the stored grid uniform.
inline double history_node(const ProblemSpec& p, double t, double v, double h) {
    if (t >= -v) return history_eval(p, t);
    const double b = std::min(-v + h, 0.0);
    const double fa = history_eval(p, -v);
    const double fb = history_eval(p, b);
    return fa + (t + v) * (fb - fa) / (b + v);
}

}  // namespace detail

/// Solution of the linear problem by midpoint forcing against exact kernel
/// step weights. Valid for alpha in (0, 1]; the grid starts at zero.
inline Trajectory solve_linear_closed(double alpha, double lambda,
                                      const std::function<double(double)>& phi, double horizon,
                                      std::size_t steps, double tol = 1e-10) {
    detail::check_kernel_params("solve_linear_closed", alpha, lambda);
    detail::check_march_params("solve_linear_closed", horizon, steps);
    if (!phi) throw std::domain_error("solve_linear_closed: missing forcing function");

    const double h = horizon / static_cast<double>(steps);
    const auto w = detail::kernel_step_weights(alpha, lambda, h, steps, tol);

    std::vector<double> f(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        f[k] = phi((static_cast<double>(k) + 0.5) * h);
        if (!std::isfinite(f[k]))
            throw std::domain_error("solve_linear_closed: non-finite forcing at step " +
                                    std::to_string(k + 1));
    }

    Trajectory out;
    out.start = 0.0;
    out.step = h;
    out.values.assign(steps + 1, 0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < i; ++k) acc += f[k] * w[i - k];
        out.values[i] = acc;
    }
    return out;
}

/// Solution of the linear problem read as a Volterra integral equation,
/// discretized by the product rectangle rule with right endpoints and an
/// implicit diagonal solve. Deliberately shares nothing with the kernel
/// route past the gamma function.
inline Trajectory solve_linear_volterra(double alpha, double lambda,
                                        const std::function<double(double)>& phi, double horizon,
                                        std::size_t steps) {
    detail::check_kernel_params("solve_linear_volterra", alpha, lambda);
    detail::check_march_params("solve_linear_volterra", horizon, steps);
    if (!phi) throw std::domain_error("solve_linear_volterra: missing forcing function");

    const double h = horizon / static_cast<double>(steps);
    const double ga = gamma_function(alpha + 1.0);

    // c[m] carries the fractional integral of 1 over the cell m steps back.
    std::vector<double> c(steps + 1, 0.0);
    double prev = 0.0;
    for (std::size_t m = 1; m <= steps; ++m) {
        const double cur = std::pow(static_cast<double>(m) * h, alpha);
        c[m] = (cur - prev) / ga;
        prev = cur;
    }

    std::vector<double> f(steps + 1, 0.0);
    for (std::size_t k = 1; k <= steps; ++k) {
        f[k] = phi(static_cast<double>(k) * h);
        if (!std::isfinite(f[k]))
            throw std::domain_error("solve_linear_volterra: non-finite forcing at step " +
                                    std::to_string(k));
    }

    Trajectory out;
    out.start = 0.0;
    out.step = h;
    out.values.assign(steps + 1, 0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k < i; ++k) acc += c[i - k + 1] * (f[k] - lambda * out.values[k]);
        acc += c[1] * f[i];
        out.values[i] = acc / (1.0 + lambda * c[1]);
    }
    return out;
}

struct DelaySolveResult {
    Trajectory x;  // grid spans the covered history prefix and [0, horizon]
    bool unique_guaranteed = false;
};

/// Marches the delay problem forward with midpoint forcing and exact kernel
/// step weights. Delayed arguments that land at or before zero read the
/// history directly; later ones interpolate the computed samples. When the
/// half step reaches past the shortest delay the current step feeds back
/// into its own forcing, and a short fixed-point sweep resolves it.
///
/// A failed contraction condition does not stop the march; the result only
/// loses its uniqueness guarantee.
inline DelaySolveResult solve_delay(const ProblemSpec& p, std::size_t steps, double tol = 1e-10,
                                    const std::function<double(double)>& extra_forcing = {}) {
    p.validate();
    detail::check_march_params("solve_delay", p.horizon, steps);

    const double h = p.horizon / static_cast<double>(steps);
    const double v = p.max_delay();
    const std::size_t m0 = detail::history_cells(v, h);
    const auto w = detail::kernel_step_weights(p.alpha, p.lambda, h, steps, tol);

    Trajectory out;
    out.step = h;
    out.start = -static_cast<double>(m0) * h;
    out.values.assign(m0 + steps + 1, 0.0);
    for (std::size_t k = 0; k < m0; ++k)
        out.values[k] = detail::history_node(p, out.start + static_cast<double>(k) * h, v, h);

    const bool same_step = 0.5 * h > p.min_delay();
    std::vector<double> forcing(steps, 0.0);

    // Linear interpolation over history plus computed samples, with the
    // still-provisional newest value patched in.
    auto delayed_value = [&](double t, std::size_t i, double provisional) {
        if (t <= 0.0) return history_eval(p, t);
        const double u = t / h;
        auto j = static_cast<std::size_t>(u);
        if (j >= i) j = i - 1;
        const double theta = u - static_cast<double>(j);
        const double left = out.values[m0 + j];
        const double right = (j + 1 == i) ? provisional : out.values[m0 + j + 1];
        return left + theta * (right - left);
    };

    for (std::size_t i = 1; i <= steps; ++i) {
        const double s = (static_cast<double>(i) - 0.5) * h;
        double tail = 0.0;
        for (std::size_t k = 0; k + 1 < i; ++k) tail += forcing[k] * w[i - k];

        double guess = out.values[m0 + i - 1];
        double f = 0.0;
        for (int sweep = 0; sweep < 50; ++sweep) {
            f = extra_forcing ? extra_forcing(s) : 0.0;
            for (const auto& term : p.terms)
                f += term.coefficient(s) * term.nonlinearity(delayed_value(s - term.delay, i, guess));
            if (!std::isfinite(f))
                throw std::runtime_error("solve_delay: non-finite forcing at step " +
                                         std::to_string(i));
            const double xi = tail + f * w[1];
            if (!same_step || std::fabs(xi - guess) <= 1e-12 * (1.0 + std::fabs(xi))) {
                guess = xi;
                break;
            }
            guess = xi;
        }
        forcing[i - 1] = f;
        out.values[m0 + i] = guess;
    }

    DelaySolveResult res;
    res.x = std::move(out);
    res.unique_guaranteed = p.contraction_lhs() < p.contraction_rhs();
    return res;
}

/// One application of the solution operator to a full-grid trajectory:
/// the history prefix is kept, the forward part is rebuilt from the
/// delayed reads of the input. The input grid must match the one
/// solve_delay would use for the same step count.
inline Trajectory apply_delay_operator(const ProblemSpec& p, const Trajectory& x,
                                       std::size_t steps, double tol = 1e-10,
                                       const std::function<double(double)>& extra_forcing = {}) {
    p.validate();
    detail::check_march_params("apply_delay_operator", p.horizon, steps);
    const double h = p.horizon / static_cast<double>(steps);
    const std::size_t m0 = detail::history_cells(p.max_delay(), h);
    if (x.values.size() != m0 + steps + 1 || std::fabs(x.step - h) > 1e-12 * h ||
        std::fabs(x.start + static_cast<double>(m0) * h) > 1e-9 * (1.0 + p.max_delay()))
        throw std::invalid_argument("apply_delay_operator: trajectory grid does not match");

    const auto w = detail::kernel_step_weights(p.alpha, p.lambda, h, steps, tol);

    std::vector<double> f(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double s = (static_cast<double>(k) + 0.5) * h;
        double acc = extra_forcing ? extra_forcing(s) : 0.0;
        for (const auto& term : p.terms) {
            const double arg = s - term.delay;
            const double xv = (arg <= 0.0) ? history_eval(p, arg) : x.eval(arg);
            acc += term.coefficient(s) * term.nonlinearity(xv);
        }
        if (!std::isfinite(acc))
            throw std::runtime_error("apply_delay_operator: non-finite forcing at step " +
                                     std::to_string(k + 1));
        f[k] = acc;
    }

    Trajectory out = x;
    for (std::size_t i = 1; i <= steps; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < i; ++k) acc += f[k] * w[i - k];
        out.values[m0 + i] = acc;
    }
    out.values[m0] = 0.0;
    return out;
}

struct PicardResult {
    std::vector<Trajectory> iterates;  // starts with the seed
    std::vector<double> distances;     // sup gaps between consecutive iterates
    std::vector<double> ratios;        // contraction ratios; 0 where the gap vanished
};

/// Picard iteration from the flat seed (history on [-v, 0], zero forward).
/// Observed sup-gap ratios between consecutive iterates sit alongside the
/// iterates themselves; a vanished gap reports a ratio of zero rather than
/// dividing by it.
inline PicardResult picard_iterate(const ProblemSpec& p, std::size_t steps,
                                   std::size_t iterations, double tol = 1e-10) {
    p.validate();
    detail::check_march_params("picard_iterate", p.horizon, steps);

    const double h = p.horizon / static_cast<double>(steps);
    const double v = p.max_delay();
    const std::size_t m0 = detail::history_cells(v, h);

    Trajectory seed;
    seed.step = h;
    seed.start = -static_cast<double>(m0) * h;
    seed.values.assign(m0 + steps + 1, 0.0);
    for (std::size_t k = 0; k < m0; ++k)
        seed.values[k] = detail::history_node(p, seed.start + static_cast<double>(k) * h, v, h);

    PicardResult res;
    res.iterates.push_back(seed);
    double scale = 1.0;
    for (std::size_t m = 0; m < iterations; ++m) {
        Trajectory next = apply_delay_operator(p, res.iterates.back(), steps, tol);
        res.distances.push_back(sup_distance(next, res.iterates.back()));
        scale = std::max(scale, sup_norm(next));
        res.iterates.push_back(std::move(next));
    }
    for (std::size_t m = 0; m + 1 < res.distances.size(); ++m) {
        const double d = res.distances[m];
        res.ratios.push_back(d <= 1e-13 * scale ? 0.0 : res.distances[m + 1] / d);
    }
    return res;
}

/// Iterates the linear Volterra operator x -> I^alpha(phi) - lambda I^alpha(x)
/// from zero, with the same product rectangle rule as solve_linear_volterra.
/// For constant forcing the iterates reproduce the partial sums of the
/// series solution exactly, up to the quadrature of phi itself.
inline std::vector<Trajectory> successive_linear(double alpha, double lambda,
                                                 const std::function<double(double)>& phi,
                                                 double horizon, std::size_t steps,
                                                 std::size_t iterations) {
    detail::check_kernel_params("successive_linear", alpha, lambda);
    detail::check_march_params("successive_linear", horizon, steps);
    if (!phi) throw std::domain_error("successive_linear: missing forcing function");

    const double h = horizon / static_cast<double>(steps);
    const double ga = gamma_function(alpha + 1.0);
    std::vector<double> c(steps + 1, 0.0);
    double prev = 0.0;
    for (std::size_t m = 1; m <= steps; ++m) {
        const double cur = std::pow(static_cast<double>(m) * h, alpha);
        c[m] = (cur - prev) / ga;
        prev = cur;
    }
    std::vector<double> f(steps + 1, 0.0);
    for (std::size_t k = 1; k <= steps; ++k) f[k] = phi(static_cast<double>(k) * h);

    auto frac_integral = [&](const std::vector<double>& g, std::size_t i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= i; ++k) acc += c[i - k + 1] * g[k];
        return acc;
    };

    std::vector<Trajectory> iterates;
    Trajectory cur;
    cur.start = 0.0;
    cur.step = h;
    cur.values.assign(steps + 1, 0.0);
    iterates.push_back(cur);
    for (std::size_t m = 0; m < iterations; ++m) {
        Trajectory next = cur;
        for (std::size_t i = 1; i <= steps; ++i)
            next.values[i] =
                frac_integral(f, i) - lambda * frac_integral(iterates.back().values, i);
        iterates.push_back(next);
    }
    return iterates;
}

}  // namespace fvoigt
