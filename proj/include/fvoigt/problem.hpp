#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvoigt/gamma.hpp"

namespace fvoigt {

/// One Boltzmann superposition summand b(t) g(x(t - delay)).
struct DelayTerm {
    std::function<double(double)> coefficient;   // b, continuous on [0, horizon]
    std::function<double(double)> nonlinearity;  // g
    double lipschitz = 0.0;
    double delay = 0.0;
    double coefficient_sup = -1.0;  // sup |b|; negative means sample for it
};

/// Nonlinear multi-delay creep problem on [0, horizon]: a Caputo
/// derivative of order alpha, linear restoring term lambda, forcing
/// sum_j b_j(t) g_j(x(t - tau_j)), and history psi on [-v, 0] where
/// v is the largest delay. The history must vanish at zero.
struct ProblemSpec {
    double alpha = 0.5;
    double lambda = 1.0;
    double horizon = 1.0;
    std::vector<DelayTerm> terms;
    std::function<double(double)> history;

    double max_delay() const {
        double v = 0.0;
        for (const auto& term : terms) v = std::max(v, term.delay);
        return v;
    }

    double min_delay() const {
        double v = std::numeric_limits<double>::infinity();
        for (const auto& term : terms) v = std::min(v, term.delay);
        return v;
    }

    /// Resolved bound B_j = sup |b_j| over [0, horizon]: the declared value
    /// when one was supplied, otherwise the max over a dense sample grid.
    double term_sup(std::size_t j) const {
        const auto& term = terms.at(j);
        if (term.coefficient_sup >= 0.0) return term.coefficient_sup;
        double m = 0.0;
        const int samples = 2049;
        for (int i = 0; i < samples; ++i) {
            const double t = horizon * static_cast<double>(i) / (samples - 1);
            m = std::max(m, std::fabs(term.coefficient(t)));
        }
        return m;
    }

    /// Left side of the contraction condition: T^alpha sum_j B_j l_j.
    double contraction_lhs() const {
        double s = 0.0;
        for (std::size_t j = 0; j < terms.size(); ++j) s += term_sup(j) * terms[j].lipschitz;
        return std::pow(horizon, alpha) * s;
    }

    /// Right side of the contraction condition: Gamma(alpha + 1).
    double contraction_rhs() const { return gamma_function(alpha + 1.0); }

    void validate() const;
    std::vector<std::string> lint() const;
};

/// History value psi(t) for t in [-v, 0]; t = 0 returns exactly 0.
inline double history_eval(const ProblemSpec& p, double t) {
    const double v = p.max_delay();
    if (!(t >= -v - 1e-12 * (1.0 + v)) || !(t <= 1e-12))
        throw std::domain_error("history_eval: t outside [-v, 0]");
    if (t >= 0.0) return 0.0;
    return p.history(std::max(t, -v));
}

inline void ProblemSpec::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("problem: alpha must lie in (0, 1)");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("problem: lambda must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::domain_error("problem: horizon must be positive");
    if (terms.empty()) throw std::domain_error("problem: at least one delay term required");
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const auto& term = terms[j];
        const std::string where = "problem term " + std::to_string(j + 1);
        if (!term.coefficient) throw std::domain_error(where + ": missing coefficient function");
        if (!term.nonlinearity) throw std::domain_error(where + ": missing nonlinearity");
        if (!(term.lipschitz > 0.0) || !std::isfinite(term.lipschitz))
            throw std::domain_error(where + ": lipschitz constant must be positive");
        if (!(term.delay > 0.0) || !(term.delay <= horizon))
            throw std::domain_error(where + ": delay must lie in (0, horizon]");
    }
    if (!history) throw std::domain_error("problem: missing history function");
    if (std::fabs(history(0.0)) > 1e-12)
        throw std::domain_error("problem: history must vanish at 0");

    // Dense screen for jumps in the history: a single step carrying more
    // than a percent of the total range, far above the typical step, is
    // not something a continuous psi produces at this resolution.
    const double v = max_delay();
    const int samples = 4096;
    std::vector<double> vals(samples + 1);
    for (int i = 0; i <= samples; ++i) vals[i] = history(-v + v * static_cast<double>(i) / samples);
    double lo = vals[0], hi = vals[0];
    std::vector<double> steps(samples);
    for (int i = 0; i < samples; ++i) {
        if (!std::isfinite(vals[i + 1])) throw std::domain_error("problem: history is not finite");
        lo = std::min(lo, vals[i + 1]);
        hi = std::max(hi, vals[i + 1]);
        steps[i] = std::fabs(vals[i + 1] - vals[i]);
    }
    std::nth_element(steps.begin(), steps.begin() + samples / 2, steps.end());
    const double median = steps[samples / 2];
    double max_step = 0.0;
    for (int i = 0; i < samples; ++i)
        max_step = std::max(max_step, std::fabs(vals[i + 1] - vals[i]));
    if (max_step > 0.01 * (hi - lo) && max_step > 20.0 * median)
        throw std::domain_error("problem: history appears discontinuous");
}

inline std::vector<std::string> ProblemSpec::lint() const {
    std::vector<std::string> notes;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const auto& term = terms[j];
        const std::string where = "term " + std::to_string(j + 1);

        if (term.nonlinearity && term.nonlinearity(0.0) == 0.0)
            notes.push_back(where + ": g(0) = 0, the forcing has a trivial equilibrium");

        if (term.coefficient_sup >= 0.0) {
            double sampled = 0.0;
            for (int i = 0; i <= 512; ++i)
                sampled = std::max(
                    sampled, std::fabs(term.coefficient(horizon * static_cast<double>(i) / 512)));
            if (sampled > term.coefficient_sup + 1e-9)
                notes.push_back(where + ": sampled |b| exceeds the declared b_sup");
        }

        // Advisory slope scan over a window around the history scale; the
        // declared constant stays authoritative either way.
        double scale = 1.0;
        if (history) {
            const double v = max_delay();
            for (int i = 0; i <= 64; ++i)
                scale = std::max(scale, std::fabs(history(-v + v * static_cast<double>(i) / 64)));
        }
        const double lo = -1.0 - 2.0 * scale, hi = 1.0 + 2.0 * scale;
        double slope = 0.0;
        double prev = term.nonlinearity(lo);
        const int n = 2000;
        for (int i = 1; i <= n; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / n;
            const double y = term.nonlinearity(x);
            slope = std::max(slope, std::fabs(y - prev) / ((hi - lo) / n));
            prev = y;
        }
        if (slope > term.lipschitz + 1e-9)
            notes.push_back(where + ": sampled Lipschitz slope " + std::to_string(slope) +
                            " exceeds the declared constant");

        // Same jump screen as for the history, applied to b.
        const int samples = 2048;
        double blo = term.coefficient(0.0), bhi = blo, bmax_step = 0.0;
        std::vector<double> bsteps(samples);
        double bprev = blo;
        for (int i = 1; i <= samples; ++i) {
            const double y = term.coefficient(horizon * static_cast<double>(i) / samples);
            blo = std::min(blo, y);
            bhi = std::max(bhi, y);
            bsteps[static_cast<std::size_t>(i - 1)] = std::fabs(y - bprev);
            bmax_step = std::max(bmax_step, std::fabs(y - bprev));
            bprev = y;
        }
        std::nth_element(bsteps.begin(), bsteps.begin() + samples / 2, bsteps.end());
        if (bmax_step > 0.01 * (bhi - blo) && bmax_step > 20.0 * bsteps[samples / 2])
            notes.push_back(where + ": coefficient appears discontinuous");
    }
    return notes;
}

}  // namespace fvoigt
