#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "fvoigt/gamma.hpp"

namespace fvoigt {

/// Arguments for a two-parameter Mittag-Leffler evaluation E_{alpha,beta}(z).
///
/// Accuracy is promised (see MlResult::guaranteed) for 0 < alpha <= 1,
/// beta >= alpha and real z; outside that region the evaluator still returns
/// its best effort but never claims the tolerance was met.
struct MlArgs {
    double alpha;
    double beta;
    double z;
    double tol = 1e-10;
};

enum class MlMethod { series, asymptotic };

struct MlResult {
    double value;
    double error_bound;  ///< estimated absolute error of value
    bool guaranteed;     ///< error_bound <= tol and args inside the promised region
    MlMethod method;
};

namespace detail {

inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;

inline long double sin_pi_l(long double x) {
    long double r = std::remainder(x, 2.0L);
    if (r > 0.5L) r = 1.0L - r;
    else if (r < -0.5L) r = -1.0L - r;
    if (r == 0.0L) return 0.0L;
    return std::sin(pi_l * r);
}

/// 1/Gamma in extended precision; 0 at the poles. The series accumulates a
/// few hundred of these, and keeping the per-term error near 1e-18 instead of
/// 1e-15 is what makes the summation usable close to the regime boundary.
inline long double reciprocal_gamma_l(long double u) {
    if (u >= 0.5L) {
        if (u < 1700.0L) return 1.0L / std::tgamma(u);
        return std::exp(-std::lgamma(u));  // underflows to 0
    }
    const long double s = sin_pi_l(u);
    if (s == 0.0L) return 0.0L;
    const long double y = 1.0L - u;
    if (y < 1700.0L) return s * std::tgamma(y) / pi_l;
    const long double lg = std::lgamma(y) + std::log(std::fabs(s) / pi_l);
    const long double v = std::exp(lg);
    return s > 0.0L ? v : -v;
}

/// Compensated (Kahan-Babuska-Neumaier) accumulator.
struct NeumaierSum {
    long double s = 0.0L;
    long double c = 0.0L;
    void add(long double v) {
        const long double t = s + v;
        if (std::fabs(s) >= std::fabs(v)) c += (s - t) + v;
        else c += (v - t) + s;
        s = t;
    }
    [[nodiscard]] long double total() const { return s + c; }
};

struct SeriesEval {
    double value = 0.0;
    double error_bound = std::numeric_limits<double>::infinity();
    int terms = 0;
    bool converged = false;
};

/// Power series sum_{n>=0} z^n / Gamma(alpha n + beta).
///
/// Terms are built and accumulated in long double. The returned error bound
/// is the sum of a geometric tail bound (valid once Gamma(alpha n + beta) is
/// on its increasing branch, where the term ratios are provably decreasing)
/// and a rounding floor proportional to the sum of term magnitudes. For
/// z < 0 that floor is what eventually forces the switch to the asymptotic
/// expansion: the alternating terms grow to exp(|z|^(1/alpha)) before they
/// decay, and everything past the floor is cancellation noise.
inline SeriesEval ml_series(double alpha, double beta, double z, double tol,
                            int max_terms = 100000) {
    SeriesEval out;
    const long double a = alpha;
    const long double b = beta;
    const long double zl = z;

    NeumaierSum sum;
    long double zpow = 1.0L;      // z^n
    long double sum_abs = 0.0L;   // sum of |t_n|
    long double prev_mag = -1.0L;
    long double tail = std::numeric_limits<long double>::infinity();

    int n = 0;
    for (; n < max_terms; ++n) {
        const long double u = a * n + b;
        const long double t = zpow * reciprocal_gamma_l(u);
        sum.add(t);
        const long double mag = std::fabs(t);
        sum_abs += mag;

        // Geometric tail bound: once u + a >= 2 the ratio |t_{n+1}/t_n| =
        // |z| Gamma(u)/Gamma(u+a) decreases in n, so the first ratio below 1
        // dominates the whole remainder.
        if (u >= 2.0L && prev_mag > 0.0L && mag < prev_mag) {
            const long double q = mag / prev_mag;
            tail = mag * q / (1.0L - q);
            if (tail <= 0.25L * static_cast<long double>(tol)) {
                ++n;
                break;
            }
        }
        prev_mag = mag;

        zpow *= zl;
        if (std::fabs(zpow) > 1e4900L) {  // series hopeless, bail out
            out.value = static_cast<double>(sum.total());
            out.terms = n + 1;
            return out;
        }
    }

    const long double roundoff = sum_abs * (static_cast<long double>(n) + 8.0L) * 5.4e-20L;
    out.value = static_cast<double>(sum.total());
    out.terms = n;
    out.converged = std::isfinite(static_cast<double>(tail));
    if (out.converged)
        out.error_bound = static_cast<double>(tail + roundoff);
    return out;
}

struct AsymptoticEval {
    double value = 0.0;
    double error_bound = std::numeric_limits<double>::infinity();
    int terms = 0;
};

/// Inverse-power expansion on the deep negative axis, z = -x with x > 0:
///
///   E_{alpha,beta}(-x) ~ sum_{k>=1} (-1)^(k+1) x^(-k) / Gamma(beta - alpha k)
///
/// truncated at the smallest term. The error estimate is that first omitted
/// term, plus an exponentially small oscillatory contribution that exists
/// only for alpha >= 1 (at alpha = 1 it is exactly exp(-x)).
inline AsymptoticEval ml_asymptotic_neg(double alpha, double beta, double x, double tol,
                                        int max_terms = 400) {
    AsymptoticEval out;
    const double log_x = std::log(x);
    const double log_pi = std::log(pi);
    NeumaierSum sum;
    double prev_env = std::numeric_limits<double>::infinity();
    double est = std::numeric_limits<double>::infinity();

    // Truncation control runs on a smooth envelope of the term magnitude:
    // below the reflection point the sine factor of 1/Gamma is capped at one.
    // The raw magnitude dips to zero near every Gamma pole, and trusting it
    // would fake convergence while the neighbouring terms are still large.
    int k = 1;
    for (; k <= max_terms; ++k) {
        const double arg = beta - alpha * k;
        const auto lrg = log_reciprocal_gamma(arg);
        const double env_log = (arg >= 0.5)
                                   ? -k * log_x + lrg.log_abs
                                   : -k * log_x + std::lgamma(1.0 - arg) - log_pi;
        if (env_log > 700.0) {  // diverged past double range
            est = std::numeric_limits<double>::infinity();
            break;
        }
        const double env = std::exp(env_log);
        if (env >= prev_env) {  // divergence onset: stop before this term
            est = env;
            break;
        }
        if (!lrg.is_zero) {
            const double mag = std::exp(-k * log_x + lrg.log_abs);
            sum.add(((k % 2 == 1) ? 1.0 : -1.0) * lrg.sign * mag);
        }
        prev_env = env;
        if (env <= 0.02 * tol) {
            est = env;
            ++k;
            break;
        }
    }
    if (!std::isfinite(est) && prev_env < std::numeric_limits<double>::infinity())
        est = prev_env;
    // The first omitted term only estimates the remainder; near the
    // divergence onset the true remainder runs up to about twice it, so
    // claim four times the envelope.
    est *= 4.0;

    if (alpha >= 1.0) {
        const double rate = std::pow(x, 1.0 / alpha) * std::fabs(std::cos(pi / alpha));
        const double prefactor = std::max(1.0, std::pow(x, (1.0 - beta) / alpha));
        est += 2.0 * prefactor * std::exp(-std::min(rate, 745.0));
    }

    out.value = static_cast<double>(sum.total());
    out.error_bound = est;
    out.terms = k - 1;
    return out;
}

/// Predicted natural log of the largest series term for z = -x; the series
/// is pointless (or would overflow long double) when this is large.
inline double ml_series_log_peak(double alpha, double beta, double x) {
    if (x <= 1.0) return 0.0;
    const double log_ustar = std::log(x) / alpha;
    if (log_ustar > 12.0) return std::numeric_limits<double>::infinity();
    const double ustar = std::exp(log_ustar);
    const double nstar = std::max(0.0, (ustar - beta) / alpha);
    return nstar * std::log(x) - static_cast<double>(std::lgamma(ustar + beta));
}

}  // namespace detail

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
///
/// Dispatches between the power series and the negative-axis asymptotic
/// expansion, choosing whichever route carries the smaller error estimate.
/// There is a narrow band of arguments (small alpha, moderate |z|) where
/// neither route reaches a tight tolerance; the result is then still the
/// better of the two but comes back with guaranteed = false.
[[nodiscard]] inline MlResult mittag_leffler(const MlArgs& args) {
    const double alpha = args.alpha, beta = args.beta, z = args.z, tol = args.tol;
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(z))
        throw std::domain_error("mittag_leffler: arguments must be finite");
    if (alpha <= 0.0)
        throw std::domain_error("mittag_leffler: alpha must be positive");
    if (!(tol > 0.0))
        throw std::domain_error("mittag_leffler: tol must be positive");

    const bool in_domain = alpha <= 1.0 && beta >= alpha;

    if (z == 0.0) {
        const double v = reciprocal_gamma(beta);
        const double err = 4e-16 * std::fabs(v) + 1e-300;
        return {v, err, in_domain && err <= tol, MlMethod::series};
    }

    const bool asym_applies = z < 0.0 && alpha < 2.0 && -z >= 1.0;
    const double series_peak =
        z < 0.0 ? detail::ml_series_log_peak(alpha, beta, -z) : 0.0;
    const bool series_applies = series_peak < 4000.0;

    detail::SeriesEval ser;
    if (series_applies) ser = detail::ml_series(alpha, beta, z, tol);

    detail::AsymptoticEval asy;
    bool have_asy = false;
    if (asym_applies) {
        asy = detail::ml_asymptotic_neg(alpha, beta, -z, tol);
        have_asy = true;
    }

    const bool series_wins =
        series_applies && (!have_asy || ser.error_bound <= asy.error_bound);
    MlResult out;
    if (series_wins) {
        out = {ser.value, ser.error_bound, false, MlMethod::series};
    } else if (have_asy) {
        out = {asy.value, asy.error_bound, false, MlMethod::asymptotic};
    } else {
        out = {ser.value, ser.error_bound, false, MlMethod::series};
    }
    out.guaranteed = in_domain && out.error_bound <= tol;
    return out;
}

/// Value-only convenience wrapper.
[[nodiscard]] inline double mittag_leffler_value(double alpha, double beta, double z,
                                                 double tol = 1e-10) {
    return mittag_leffler({alpha, beta, z, tol}).value;
}

/// Classical one-parameter function E_alpha(z) = E_{alpha,1}(z).
[[nodiscard]] inline double mittag_leffler_one(double alpha, double z, double tol = 1e-10) {
    return mittag_leffler({alpha, 1.0, z, tol}).value;
}

}  // namespace fvoigt
