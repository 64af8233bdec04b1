#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fvoigt {

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// sin(pi * x) with exact zeros at integer x.
///
/// The argument is reduced to [-0.5, 0.5] before calling std::sin, so the
/// result stays accurate for large |x| where sin(pi * x) computed directly
/// would lose most of its digits to the pi multiplication.
[[nodiscard]] inline double sin_pi(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double r = std::remainder(x, 2.0);  // r in [-1, 1], x - r an even integer
    if (r > 0.5) r = 1.0 - r;
    else if (r < -0.5) r = -1.0 - r;
    if (r == 0.0) return 0.0;
    return std::sin(pi * r);
}

namespace detail {

// Lanczos rational approximation for double precision, g = 6.024680040776729583740234375,
// 13 terms. Relative error of the sum is below 2e-16 for arguments with
// real part >= 0.5; the coefficients absorb the sqrt(2*pi) factor.
inline double lanczos_sum(double z) {
    static const double num[13] = {
        23531376880.410759688572007674451636754734846804940,
        42919803642.649098768957899047001988850926355848959,
        35711959237.355668049440185451547166705960488635843,
        17921034426.037209699919755754458931112671403265390,
        6039542586.3520280050642916443072979210699388420708,
        1439720407.3117216736632230727949123939715485786772,
        248874557.86205415651146038641322942321632125127801,
        31426415.585400194380614231628318205362874684987640,
        2876370.6289353724412254090516208496135991145378768,
        186056.26539522349504029498971604569928220784236328,
        8071.6720023658162106380029022722506138218516325024,
        210.82427775157934587250973392071336271166969580291,
        2.5066282746310002701649081771338373386264310793408,
    };
    static const double den[13] = {
        0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
        13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
    };
    double p = num[12];
    double q = den[12];
    if (z <= 1e10) {
        for (int i = 11; i >= 0; --i) {
            p = p * z + num[i];
            q = q * z + den[i];
        }
    } else {
        // Evaluate in 1/z to avoid overflow of the plain polynomials.
        const double inv = 1.0 / z;
        p = num[0];
        q = den[0];
        for (int i = 1; i < 13; ++i) {
            p = p * inv + num[i];
            q = q * inv + den[i];
        }
    }
    return p / q;
}

inline constexpr double lanczos_g = 6.024680040776729583740234375;

}  // namespace detail

/// Gamma function on the real line.
///
/// Uses the Lanczos approximation above for x >= 0.5 and the reflection
/// formula below that. Poles (x a non-positive integer) raise a domain error.
/// Relative accuracy is a few ulp, comfortably below 1e-13.
[[nodiscard]] inline double gamma_function(double x);

/// log(Gamma(x)) for x > 0. Does not overflow until x is astronomically large.
[[nodiscard]] inline double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: argument must be finite and positive");
    if (x < 0.5) {
        // log Gamma(x) = log(pi / sin(pi x)) - log Gamma(1 - x) on (0, 0.5)
        return std::log(pi / sin_pi(x)) - log_gamma(1.0 - x);
    }
    const double zgh = x + detail::lanczos_g - 0.5;
    return std::log(detail::lanczos_sum(x)) + (x - 0.5) * std::log(zgh) - zgh;
}

inline double gamma_function(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("gamma_function: argument must be finite");
    if (x >= 0.5) {
        // pow(zgh, x - 0.5) alone overflows near x = 146 although Gamma(x)
        // stays representable up to 171.6, so apply the power in two halves.
        const double zgh = x + detail::lanczos_g - 0.5;
        const double half = std::pow(zgh, (x - 0.5) / 2.0);
        return detail::lanczos_sum(x) * half * std::exp(-zgh) * half;
    }
    const double s = sin_pi(x);
    if (s == 0.0)
        throw std::domain_error("gamma_function: pole at non-positive integer argument");
    return pi / (s * gamma_function(1.0 - x));
}

/// 1 / Gamma(x), finite on the whole real line. Returns exactly 0 at the
/// poles of Gamma, which is what alternating reciprocal-gamma series need.
[[nodiscard]] inline double reciprocal_gamma(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("reciprocal_gamma: argument must be finite");
    if (x >= 0.5) {
        if (x > 140.0) return std::exp(-log_gamma(x));  // underflows smoothly to 0
        return 1.0 / gamma_function(x);
    }
    const double s = sin_pi(x);
    if (s == 0.0) return 0.0;
    // 1/Gamma(x) = sin(pi x) * Gamma(1 - x) / pi; go through logs when
    // Gamma(1 - x) alone would overflow.
    const double y = 1.0 - x;
    if (y > 171.7) {
        const double mag = log_gamma(y) + std::log(std::fabs(s) / pi);
        const double v = std::exp(mag);
        return s > 0.0 ? v : -v;
    }
    return s * gamma_function(y) / pi;
}

namespace detail {

/// Sign and log magnitude of 1/Gamma(x); is_zero marks the poles of Gamma.
/// Used where 1/Gamma(x) itself would overflow (deep negative x).
struct LogReciprocalGamma {
    double log_abs;
    int sign;
    bool is_zero;
};

inline LogReciprocalGamma log_reciprocal_gamma(double x) {
    if (x >= 0.5) return {-log_gamma(x), 1, false};
    const double s = sin_pi(x);
    if (s == 0.0) return {-std::numeric_limits<double>::infinity(), 0, true};
    return {log_gamma(1.0 - x) + std::log(std::fabs(s) / pi), s > 0.0 ? 1 : -1, false};
}

}  // namespace detail

}  // namespace fvoigt
