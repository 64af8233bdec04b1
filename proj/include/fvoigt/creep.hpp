#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fvoigt/alpha_kernel.hpp"
#include "fvoigt/mittag_leffler.hpp"
#include "fvoigt/trajectory.hpp"

namespace fvoigt {

/// Spring-and-dashpot parameters of a Voigt element. The dashpot acts
/// through a derivative of order alpha; alpha = 1 recovers the classical
/// element.
struct Material {
    double modulus = 1.0;    // spring stiffness E
    double viscosity = 1.0;  // dashpot coefficient eta
    double alpha = 1.0;

    void validate() const {
        if (!(modulus > 0.0) || !std::isfinite(modulus))
            throw std::domain_error("material: modulus must be positive");
        if (!(viscosity > 0.0) || !std::isfinite(viscosity))
            throw std::domain_error("material: viscosity must be positive");
        if (!(alpha > 0.0) || alpha > 1.0)
            throw std::domain_error("material: alpha must lie in (0, 1]");
    }

    /// Rate constant lambda = E/eta of the relaxation kernel.
    double rate() const { return modulus / viscosity; }
};

/// Creep compliance of the classical Voigt element under a unit stress
/// step: (1/E)(1 - e^(-t E/eta)).
inline double classical_creep(const Material& m, double t) {
    m.validate();
    if (!(t >= 0.0)) throw std::domain_error("classical_creep: t must be nonnegative");
    return -std::expm1(-m.rate() * t) / m.modulus;
}

/// Creep compliance of the fractional element: (1/E)(1 - E_alpha(-lambda t^alpha)).
inline double fractional_creep(const Material& m, double t, double tol = 1e-10) {
    m.validate();
    if (!(t >= 0.0)) throw std::domain_error("fractional_creep: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double x = m.rate() * std::pow(t, m.alpha);
    return (1.0 - mittag_leffler_one(m.alpha, -x, tol)) / m.modulus;
}

/// Same compliance computed through the kernel integral instead of the
/// order-one function. Useful as a cross-check; below lambda t^alpha = 1
/// the two take genuinely different evaluation routes.
inline double fractional_creep_raw(const Material& m, double t, double tol = 1e-10) {
    m.validate();
    return kernel_integral(m.alpha, m.rate(), t, tol) / m.viscosity;
}

/// Strain response to a smooth stress history on a uniform grid over
/// [0, horizon], via the convolution of the relaxation kernel with the
/// stress. Integration by parts moves the kernel singularity into the
/// kernel integral K:
///
///   eta eps(t) = sigma(0) K(t) + integral of K(t - s) sigma'(s) ds over [0, t]
///
/// The stress derivative is taken by second-order finite differences and
/// the integral by the trapezoid rule, so the result carries O(h^2) and
/// kernel-singularity errors; it is a reference curve, not a spectral one.
inline Trajectory strain_from_stress(const Material& m,
                                     const std::function<double(double)>& stress,
                                     double horizon, std::size_t steps, double tol = 1e-10) {
    m.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("strain_from_stress: horizon must be positive");
    if (steps < 2) throw std::domain_error("strain_from_stress: need at least 2 steps");

    const double h = horizon / static_cast<double>(steps);
    const std::size_t n = steps + 1;

    std::vector<double> kern(n);
    kern[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        kern[i] = kernel_integral(m.alpha, m.rate(), static_cast<double>(i) * h, tol);

    std::vector<double> sig(n), dsig(n);
    for (std::size_t i = 0; i < n; ++i) sig[i] = stress(static_cast<double>(i) * h);
    dsig[0] = (-3.0 * sig[0] + 4.0 * sig[1] - sig[2]) / (2.0 * h);
    dsig[n - 1] = (3.0 * sig[n - 1] - 4.0 * sig[n - 2] + sig[n - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) dsig[i] = (sig[i + 1] - sig[i - 1]) / (2.0 * h);

    Trajectory out;
    out.start = 0.0;
    out.step = h;
    out.values.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.5 * kern[i] * dsig[0];  // j = i endpoint vanishes with K(0) = 0
        for (std::size_t j = 1; j < i; ++j) acc += kern[i - j] * dsig[j];
        out.values[i] = (sig[0] * kern[i] + h * acc) / m.viscosity;
    }
    return out;
}

enum class MonotoneKind {
    completely_monotone,  // signs of divided differences alternate starting negative
    bernstein             // nonnegative with a completely monotone derivative
};

struct MonotonicityReport {
    int max_order = 0;
    std::vector<bool> order_ok;
    double worst_violation = 0.0;
    bool passed = false;
};

/// Checks the divided-difference sign pattern of f on the given nodes up
/// to the requested order. A completely monotone function has
/// (-1)^n f[t_0,...,t_n] >= 0 on every increasing window; a Bernstein
/// function flips the pattern by one order. Violations beyond the slack
/// fail the order they occur in.
inline MonotonicityReport monotonicity_probe(const std::function<double(double)>& f,
                                             const std::vector<double>& nodes, int max_order,
                                             MonotoneKind kind, double slack = 1e-9) {
    if (max_order < 1) throw std::domain_error("monotonicity_probe: max_order must be >= 1");
    if (nodes.size() < static_cast<std::size_t>(max_order) + 1)
        throw std::domain_error("monotonicity_probe: not enough nodes for the requested order");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::domain_error("monotonicity_probe: nodes must be strictly increasing");

    std::vector<double> fv(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) fv[i] = f(nodes[i]);

    MonotonicityReport rep;
    rep.max_order = max_order;
    rep.order_ok.assign(static_cast<std::size_t>(max_order), true);
    for (int order = 1; order <= max_order; ++order) {
        for (std::size_t i = 0; i + order < nodes.size(); ++i) {
            std::vector<double> d(fv.begin() + i, fv.begin() + i + order + 1);
            for (int level = 1; level <= order; ++level)
                for (int j = 0; j + level <= order; ++j)
                    d[j] = (d[j + 1] - d[j]) / (nodes[i + j + level] - nodes[i + j]);
            const int parity = (kind == MonotoneKind::completely_monotone) ? order : order + 1;
            const double signed_value = (parity % 2 == 0) ? d[0] : -d[0];
            if (signed_value < -rep.worst_violation) rep.worst_violation = -signed_value;
            if (signed_value < -slack) rep.order_ok[order - 1] = false;
        }
    }
    rep.passed = true;
    for (bool ok : rep.order_ok) rep.passed = rep.passed && ok;
    return rep;
}

}  // namespace fvoigt
