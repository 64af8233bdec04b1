#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvoigt {

/// Samples of a scalar function on a uniform time grid.
struct Trajectory {
    double start = 0.0;
    double step = 0.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t i) const { return start + static_cast<double>(i) * step; }
    double end() const { return values.empty() ? start : time_at(values.size() - 1); }

    /// Linear interpolation between stored samples. Arguments up to a
    /// hair outside [start, end] are clamped; anything further is refused.
    double eval(double t) const {
        if (values.empty()) throw std::domain_error("trajectory: no samples");
        if (values.size() == 1 || step <= 0.0) {
            if (std::fabs(t - start) > 1e-9 * (1.0 + std::fabs(start)))
                throw std::domain_error("trajectory: t outside the stored range");
            return values.front();
        }
        const double slack = 1e-6 * step;
        if (t < start - slack || t > end() + slack)
            throw std::domain_error("trajectory: t outside the stored range");
        double u = (t - start) / step;
        u = std::min(std::max(u, 0.0), static_cast<double>(values.size() - 1));
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= values.size() - 1) i = values.size() - 2;
        const double theta = u - static_cast<double>(i);
        return values[i] + theta * (values[i + 1] - values[i]);
    }
};

inline double sup_norm(const Trajectory& a) {
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::fabs(v));
    return m;
}

/// Largest pointwise gap between two trajectories on the same grid.
inline double sup_distance(const Trajectory& a, const Trajectory& b) {
    if (a.values.size() != b.values.size() || std::fabs(a.start - b.start) > 1e-12 ||
        std::fabs(a.step - b.step) > 1e-12 * (1.0 + std::fabs(a.step)))
        throw std::invalid_argument("sup_distance: trajectories live on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    return m;
}

namespace detail {

inline std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Trajectory& a, const char* value_header = "x") {
    os << "t," << value_header << "\n";
    for (std::size_t i = 0; i < a.values.size(); ++i)
        os << detail::format_g12(a.time_at(i)) << "," << detail::format_g12(a.values[i]) << "\n";
}

}  // namespace fvoigt
