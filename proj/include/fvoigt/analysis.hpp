#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "fvoigt/problem.hpp"
#include "fvoigt/solver.hpp"
#include "fvoigt/trajectory.hpp"

namespace fvoigt {

/// Outcome of the contraction test T^alpha sum B_j l_j < Gamma(alpha + 1).
/// The stability and dependence coefficients only exist when the test
/// passes, so they are optional rather than sentinel values.
struct ConditionReport {
    double contraction_lhs = 0.0;
    double contraction_rhs = 0.0;
    double margin = 0.0;
    bool unique_solution = false;
    std::optional<double> ulam_k;
    std::optional<double> dependence_coeff;
};

inline ConditionReport contraction_check(const ProblemSpec& p) {
    p.validate();
    ConditionReport r;
    r.contraction_lhs = p.contraction_lhs();
    r.contraction_rhs = p.contraction_rhs();
    r.margin = r.contraction_rhs - r.contraction_lhs;
    r.unique_solution = r.contraction_lhs < r.contraction_rhs;
    if (r.unique_solution) {
        r.ulam_k = std::pow(p.horizon, p.alpha) / r.margin;
        r.dependence_coeff = r.contraction_lhs / r.margin;
    }
    return r;
}

struct DependenceReport {
    double history_gap = 0.0;  // sup |psi1 - psi2| on [-v, 0]
    double measured = 0.0;     // sup solution gap on [0, horizon]
    double bound = 0.0;        // dependence coefficient times the history gap
    double slack = 0.0;        // discretization allowance, ten grid steps
    bool passed = false;
};

/// Solves the problem under both histories and checks the measured solution
/// gap against the continuous dependence bound. Without a passing
/// contraction test the bound does not exist, so the check refuses.
inline DependenceReport verify_dependence(const ProblemSpec& p,
                                          const std::function<double(double)>& psi2,
                                          std::size_t steps, double tol = 1e-10) {
    p.validate();
    if (!psi2) throw std::invalid_argument("verify_dependence: missing second history");
    if (std::fabs(psi2(0.0)) > 1e-12)
        throw std::invalid_argument("verify_dependence: second history must vanish at 0");
    const ConditionReport cond = contraction_check(p);
    if (!cond.unique_solution)
        throw std::invalid_argument(
            "verify_dependence: contraction condition fails, no bound to verify");

    ProblemSpec q = p;
    q.history = psi2;
    const Trajectory x1 = solve_delay(p, steps, tol).x;
    const Trajectory x2 = solve_delay(q, steps, tol).x;

    DependenceReport r;
    const double v = p.max_delay();
    for (int i = 0; i <= 4096; ++i) {
        const double t = -v + v * static_cast<double>(i) / 4096;
        r.history_gap = std::max(r.history_gap, std::fabs(history_eval(p, t) - history_eval(q, t)));
    }

    const std::size_t m0 = x1.values.size() - steps - 1;
    for (std::size_t i = m0; i < x1.values.size(); ++i)
        r.measured = std::max(r.measured, std::fabs(x1.values[i] - x2.values[i]));

    r.bound = *cond.dependence_coeff * r.history_gap;
    r.slack = 10.0 * p.horizon / static_cast<double>(steps);
    r.passed = r.measured <= r.bound + r.slack;
    return r;
}

struct UlamReport {
    double epsilon = 0.0;
    double measured = 0.0;      // sup gap between perturbed and exact solutions
    double bound = 0.0;         // stability constant times epsilon
    double slack = 0.0;         // discretization allowance, ten grid steps
    double defect = 0.0;        // sup gap of the perturbed solution under the operator
    double defect_bound = 0.0;  // T^alpha / Gamma(alpha + 1) times epsilon, plus slack
    bool passed = false;
    bool defect_ok = false;
};

/// Solves the problem with and without the perturbing forcing h and checks
/// the stability bound measured <= K epsilon. The perturbation must
/// actually stay within its declared budget on the grid; a violation is an
/// input error, not a failed verification.
inline UlamReport verify_ulam(const ProblemSpec& p, double epsilon,
                              const std::function<double(double)>& perturbation,
                              std::size_t steps, double tol = 1e-10) {
    p.validate();
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("verify_ulam: epsilon must be positive");
    if (!perturbation) throw std::invalid_argument("verify_ulam: missing perturbation");
    const ConditionReport cond = contraction_check(p);
    if (!cond.unique_solution)
        throw std::invalid_argument("verify_ulam: contraction condition fails, no bound to verify");

    const double h = p.horizon / static_cast<double>(steps);
    for (std::size_t i = 0; i <= 2 * steps; ++i) {
        const double s = 0.5 * h * static_cast<double>(i);
        if (!(std::fabs(perturbation(s)) <= epsilon * (1.0 + 1e-9) + 1e-15))
            throw std::invalid_argument("verify_ulam: perturbation exceeds epsilon on the grid");
    }

    const Trajectory y = solve_delay(p, steps, tol).x;
    const Trajectory yeps = solve_delay(p, steps, tol, perturbation).x;

    UlamReport r;
    r.epsilon = epsilon;
    const std::size_t m0 = y.values.size() - steps - 1;
    for (std::size_t i = m0; i < y.values.size(); ++i)
        r.measured = std::max(r.measured, std::fabs(y.values[i] - yeps.values[i]));
    r.bound = *cond.ulam_k * epsilon;
    r.slack = 10.0 * h;
    r.passed = r.measured <= r.bound + r.slack;

    const Trajectory mapped = apply_delay_operator(p, yeps, steps, tol);
    for (std::size_t i = m0; i < yeps.values.size(); ++i)
        r.defect = std::max(r.defect, std::fabs(yeps.values[i] - mapped.values[i]));
    r.defect_bound =
        std::pow(p.horizon, p.alpha) / gamma_function(p.alpha + 1.0) * epsilon + r.slack;
    r.defect_ok = r.defect <= r.defect_bound;
    return r;
}

/// Largest slope over adjacent sample pairs of g on [lo, hi]. A sampled
/// scan only ever sees a lower bound for the true constant, so the value
/// is advisory: good for catching a declared constant that is clearly too
/// small, useless for certifying one.
inline double lipschitz_estimate(const std::function<double(double)>& g, double lo, double hi,
                                 std::size_t samples = 4096) {
    if (!g) throw std::domain_error("lipschitz_estimate: missing function");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::domain_error("lipschitz_estimate: need a finite interval with lo < hi");
    if (samples < 2) throw std::domain_error("lipschitz_estimate: need at least two samples");
    const double dx = (hi - lo) / static_cast<double>(samples - 1);
    double best = 0.0;
    double prev = g(lo);
    if (!std::isfinite(prev)) throw std::domain_error("lipschitz_estimate: non-finite sample value");
    for (std::size_t i = 1; i < samples; ++i) {
        const double y = g(lo + dx * static_cast<double>(i));
        if (!std::isfinite(y))
            throw std::domain_error("lipschitz_estimate: non-finite sample value");
        best = std::max(best, std::fabs(y - prev) / dx);
        prev = y;
    }
    return best;
}

}  // namespace fvoigt
