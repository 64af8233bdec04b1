#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fvoigt/creep.hpp"
#include "fvoigt/erfc.hpp"
#include "support/oracles.hpp"

using namespace fvoigt;

TEST_CASE("material parameters are validated", "[creep]") {
    CHECK_THROWS_AS(classical_creep({0.0, 1.0, 0.5}, 1.0), std::domain_error);
    CHECK_THROWS_AS(classical_creep({1.0, -1.0, 0.5}, 1.0), std::domain_error);
    CHECK_THROWS_AS(fractional_creep({1.0, 1.0, 1.5}, 1.0), std::domain_error);
    CHECK_THROWS_AS(fractional_creep({1.0, 1.0, 0.5}, -1.0), std::domain_error);
    CHECK(fractional_creep({1.0, 1.0, 0.5}, 0.0) == 0.0);
}

TEST_CASE("order one creep reduces to the classical element", "[creep]") {
    const Material m{2.0, 3.0, 1.0};
    for (double t = 0.0; t <= 6.0; t += 0.5) {
        INFO("t = " << t);
        CHECK_THAT(fractional_creep(m, t, 1e-12),
                   Catch::Matchers::WithinAbs(classical_creep(m, t), 1e-11));
    }
}

TEST_CASE("kernel route and order-one route agree", "[creep]") {
    for (double alpha : {0.4, 0.7, 1.0}) {
        const Material m{2.0, 3.0, alpha};
        for (double t = 0.1; t <= 5.0; t *= 1.6) {
            INFO("alpha " << alpha << " t " << t);
            CHECK_THAT(fractional_creep_raw(m, t, 1e-12),
                       Catch::Matchers::WithinAbs(fractional_creep(m, t, 1e-12), 1e-9));
        }
    }
}

TEST_CASE("half-order creep has the erfc closed form", "[creep]") {
    // With E = eta = 1 and alpha = 1/2 the compliance is 1 - e^t erfc(sqrt(t)).
    const Material m{1.0, 1.0, 0.5};
    for (double t : {0.04, 0.25, 1.0, 2.25, 4.0}) {
        const double expect = 1.0 - std::exp(t) * erfc_reference(std::sqrt(t));
        INFO("t = " << t);
        CHECK_THAT(fractional_creep(m, t, 1e-12), Catch::Matchers::WithinAbs(expect, 1e-9));
    }
}

TEST_CASE("creep rises from zero toward 1/E", "[creep]") {
    const Material m{4.0, 1.5, 0.35};
    double prev = -1.0;
    for (double t = 0.01; t <= 1e6; t *= 3.0) {
        const double j = fractional_creep(m, t);
        INFO("t = " << t);
        CHECK(j > prev);
        CHECK(j < 1.0 / m.modulus);
        prev = j;
    }
    // lambda t^alpha >= 1e3 pushes the compliance within a tenth of a
    // percent of its plateau.
    const double t_sat = std::pow(1e3 / m.rate(), 1.0 / m.alpha);
    CHECK_THAT(fractional_creep(m, t_sat) * m.modulus, Catch::Matchers::WithinAbs(1.0, 1e-3));
}

TEST_CASE("strain under constant stress is the scaled kernel integral", "[creep]") {
    const Material m{2.0, 1.0, 0.6};
    const auto tr = strain_from_stress(m, [](double) { return 3.0; }, 2.0, 64);
    REQUIRE(tr.size() == 65);
    CHECK(tr.start == 0.0);
    CHECK_THAT(tr.step, Catch::Matchers::WithinAbs(2.0 / 64.0, 1e-15));
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double t = tr.time_at(i);
        const double expect = 3.0 * kernel_integral(m.alpha, m.rate(), t) / m.viscosity;
        INFO("i = " << i);
        CHECK_THAT(tr.values[i], Catch::Matchers::WithinAbs(expect, 1e-12));
    }
}

TEST_CASE("strain under a ramp matches the order-one closed form", "[creep]") {
    // alpha = 1, E = eta = 1, sigma(s) = s gives eps(t) = t - 1 + e^(-t).
    const Material m{1.0, 1.0, 1.0};
    const auto tr = strain_from_stress(m, [](double s) { return s; }, 3.0, 512);
    for (std::size_t i = 0; i < tr.size(); i += 32) {
        const double t = tr.time_at(i);
        INFO("t = " << t);
        CHECK_THAT(tr.values[i],
                   Catch::Matchers::WithinAbs(t - 1.0 + std::exp(-t), 1e-5));
    }
}

TEST_CASE("strain handles a fractional order with smooth stress", "[creep]") {
    // Cross-checked against the convolution done by direct quadrature.
    const Material m{1.0, 2.0, 0.5};
    const auto tr = strain_from_stress(m, [](double s) { return std::sin(s); }, 1.0, 256);
    for (double t : {0.25, 0.5, 1.0}) {
        const double direct = oracle::adaptive_simpson(
            [&](double s) {
                return std::cos(s) * kernel_integral(m.alpha, m.rate(), t - s, 1e-12);
            },
            0.0, t, 1e-10);
        INFO("t = " << t);
        CHECK_THAT(tr.eval(t), Catch::Matchers::WithinAbs(direct / m.viscosity, 5e-5));
    }
}

TEST_CASE("monotonicity probe classifies standard shapes", "[creep]") {
    std::vector<double> nodes;
    for (int j = 0; j < 40; ++j) nodes.push_back(0.05 * std::pow(1.25, j));

    const auto decay = monotonicity_probe([](double t) { return std::exp(-t); }, nodes, 4,
                                          MonotoneKind::completely_monotone);
    CHECK(decay.passed);
    CHECK(decay.worst_violation <= 1e-9);

    const Material m{1.0, 1.0, 0.5};
    const auto creep = monotonicity_probe([&](double t) { return fractional_creep(m, t, 1e-12); },
                                          nodes, 4, MonotoneKind::bernstein);
    CHECK(creep.passed);

    const auto wave = monotonicity_probe([](double t) { return std::sin(t); }, nodes, 4,
                                         MonotoneKind::completely_monotone);
    CHECK_FALSE(wave.passed);
    CHECK(wave.worst_violation > 1e-3);

    const auto convex = monotonicity_probe([](double t) { return t * t; }, nodes, 3,
                                           MonotoneKind::bernstein);
    CHECK(convex.order_ok[0]);        // increasing
    CHECK_FALSE(convex.order_ok[1]);  // but convex, so order two fails
}

TEST_CASE("monotonicity probe validates its inputs", "[creep]") {
    const auto f = [](double t) { return t; };
    CHECK_THROWS_AS(monotonicity_probe(f, {0.0, 1.0}, 0, MonotoneKind::bernstein),
                    std::domain_error);
    CHECK_THROWS_AS(monotonicity_probe(f, {0.0, 1.0}, 2, MonotoneKind::bernstein),
                    std::domain_error);
    CHECK_THROWS_AS(monotonicity_probe(f, {0.0, 1.0, 0.5}, 1, MonotoneKind::bernstein),
                    std::domain_error);
}
