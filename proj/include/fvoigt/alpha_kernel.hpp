#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fvoigt/mittag_leffler.hpp"

namespace fvoigt {

namespace detail {

inline void check_kernel_params(const char* who, double alpha, double lambda) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1]");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error(std::string(who) + ": lambda must be positive and finite");
}

}  // namespace detail

/// Relaxation kernel t^(alpha-1) E_{alpha,alpha}(-lambda t^alpha).
///
/// For alpha = 1 this is the plain decaying exponential e^(-lambda t).
/// For alpha < 1 the kernel blows up like t^(alpha-1) as t -> 0+, so
/// t = 0 is rejected in that case.
inline double alpha_exponential(double alpha, double lambda, double t, double tol = 1e-10) {
    detail::check_kernel_params("alpha_exponential", alpha, lambda);
    if (!(t >= 0.0)) throw std::domain_error("alpha_exponential: t must be nonnegative");
    if (t == 0.0) {
        if (alpha < 1.0)
            throw std::domain_error("alpha_exponential: singular at t = 0 for alpha < 1");
        return 1.0;
    }
    const double x = lambda * std::pow(t, alpha);
    return std::pow(t, alpha - 1.0) * mittag_leffler_value(alpha, alpha, -x, tol);
}

/// Integral of the relaxation kernel over [0, t]. Starts at 0, increases
/// monotonically and saturates at 1/lambda.
///
/// Two equivalent closed forms are used: t^alpha E_{alpha,alpha+1}(-x)
/// while x = lambda t^alpha is small, and (1 - E_{alpha,1}(-x))/lambda
/// once x >= 1. Each avoids the cancellation the other suffers in its
/// own regime.
inline double kernel_integral(double alpha, double lambda, double t, double tol = 1e-10) {
    detail::check_kernel_params("kernel_integral", alpha, lambda);
    if (!(t >= 0.0)) throw std::domain_error("kernel_integral: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double x = lambda * std::pow(t, alpha);
    if (x < 1.0) return std::pow(t, alpha) * mittag_leffler_value(alpha, alpha + 1.0, -x, tol);
    return (1.0 - mittag_leffler_one(alpha, -x, tol)) / lambda;
}

}  // namespace fvoigt
