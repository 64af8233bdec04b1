#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fvoigt/alpha_kernel.hpp"
#include "fvoigt/gamma.hpp"
#include "support/oracles.hpp"

using namespace fvoigt;

TEST_CASE("kernel functions validate their arguments", "[kernel]") {
    CHECK_THROWS_AS(alpha_exponential(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(alpha_exponential(1.2, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(alpha_exponential(0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(alpha_exponential(0.5, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(alpha_exponential(0.5, 1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(alpha_exponential(0.5, 1.0, 0.0), std::domain_error);
    CHECK(alpha_exponential(1.0, 3.0, 0.0) == 1.0);
    CHECK_THROWS_AS(kernel_integral(0.5, 1.0, -1.0), std::domain_error);
    CHECK(kernel_integral(0.5, 1.0, 0.0) == 0.0);
}

TEST_CASE("order one reduces to the plain exponential", "[kernel]") {
    for (double lambda : {0.5, 1.0, 2.5}) {
        for (double t = 0.25; t <= 4.0; t += 0.25) {
            INFO("lambda " << lambda << " t " << t);
            CHECK_THAT(alpha_exponential(1.0, lambda, t, 1e-13),
                       Catch::Matchers::WithinAbs(std::exp(-lambda * t), 1e-11));
            CHECK_THAT(kernel_integral(1.0, lambda, t, 1e-13),
                       Catch::Matchers::WithinAbs(-std::expm1(-lambda * t) / lambda, 1e-11));
        }
    }
}

TEST_CASE("kernel follows its leading singular term as t -> 0", "[kernel]") {
    const double alpha = 0.5;
    for (double t : {1e-12, 1e-10, 1e-8}) {
        const double leading = std::pow(t, alpha - 1.0) / gamma_function(alpha);
        INFO("t = " << t);
        CHECK_THAT(alpha_exponential(alpha, 1.0, t) / leading,
                   Catch::Matchers::WithinAbs(1.0, 1e-3));
    }
}

TEST_CASE("kernel integral matches direct quadrature of the kernel", "[kernel]") {
    for (double alpha : {0.3, 0.5, 0.7, 1.0}) {
        for (double lambda : {0.5, 2.0}) {
            for (double t : {0.5, 1.0, 3.0}) {
                INFO("alpha " << alpha << " lambda " << lambda << " t " << t);
                const auto kernel_at = [&](double s) {
                    return alpha_exponential(alpha, lambda, s, 1e-12);
                };
                CHECK_THAT(kernel_integral(alpha, lambda, t, 1e-12),
                           Catch::Matchers::WithinAbs(
                               oracle::kernel_integral_quadrature(alpha, lambda, t, kernel_at),
                               1e-9));
            }
        }
    }
}

TEST_CASE("kernel integral increases and saturates at 1/lambda", "[kernel]") {
    const double alpha = 0.6, lambda = 2.0;
    double prev = 0.0;
    for (double t = 0.1; t <= 1e4; t *= 2.0) {
        const double k = kernel_integral(alpha, lambda, t);
        INFO("t = " << t);
        CHECK(k > prev);
        CHECK(k < 1.0 / lambda);
        prev = k;
    }
    CHECK_THAT(kernel_integral(alpha, lambda, 1e8), Catch::Matchers::WithinAbs(0.5, 1e-3));
}

TEST_CASE("both closed forms of the integral agree at the switch point", "[kernel]") {
    for (double alpha : {0.4, 0.8}) {
        for (double lambda : {0.5, 1.0, 3.0}) {
            const double tstar = std::pow(1.0 / lambda, 1.0 / alpha);  // lambda t^alpha = 1
            for (double t : {0.5 * tstar, tstar, 1.5 * tstar}) {
                const double x = lambda * std::pow(t, alpha);
                const double direct =
                    std::pow(t, alpha) * mittag_leffler_value(alpha, alpha + 1.0, -x, 1e-12);
                const double via_one = (1.0 - mittag_leffler_one(alpha, -x, 1e-12)) / lambda;
                INFO("alpha " << alpha << " lambda " << lambda << " t " << t);
                CHECK_THAT(direct, Catch::Matchers::WithinAbs(via_one, 1e-10));
            }
        }
    }
}
