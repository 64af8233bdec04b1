#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fvoigt/erfc.hpp"
#include "fvoigt/mittag_leffler.hpp"
#include "support/oracles.hpp"

using namespace fvoigt;

TEST_CASE("mittag_leffler validates its arguments", "[mlf]") {
    CHECK_THROWS_AS(mittag_leffler({0.0, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({-0.5, 1.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({0.5, 1.0, std::nan("")}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({0.5, std::numeric_limits<double>::infinity(), 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({0.5, 1.0, 1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({0.5, 1.0, 1.0, -1e-10}), std::domain_error);
}

TEST_CASE("value at zero is 1/Gamma(beta)", "[mlf]") {
    for (double beta : {0.3, 0.7, 1.0, 1.3, 1.5, 2.0, 3.25, 6.0}) {
        INFO("beta = " << beta);
        const auto r = mittag_leffler({0.7, beta, 0.0});
        CHECK_THAT(r.value, Catch::Matchers::WithinAbs(1.0 / std::tgamma(beta), 1e-12));
    }
}

TEST_CASE("E_{1,1} reduces to the exponential", "[mlf]") {
    for (double z = -5.0; z <= 5.0; z += 0.25) {
        INFO("z = " << z);
        const auto r = mittag_leffler({1.0, 1.0, z});
        CHECK_THAT(r.value, Catch::Matchers::WithinAbs(std::exp(z), 1e-10));
        CHECK(r.guaranteed);
    }
}

TEST_CASE("E_{2,1} reduces to cosh(sqrt(z)) for positive z", "[mlf]") {
    for (double z = 0.25; z <= 9.0; z += 0.25) {
        INFO("z = " << z);
        const auto r = mittag_leffler({2.0, 1.0, z});
        CHECK_THAT(r.value, Catch::Matchers::WithinAbs(std::cosh(std::sqrt(z)), 1e-9));
        CHECK_FALSE(r.guaranteed);  // alpha = 2 sits outside the promised region
    }
}

TEST_CASE("E_{1,2} reduces to (e^z - 1)/z", "[mlf]") {
    for (double z : {-4.0, -1.0, -0.5, 0.5, 2.0, 4.5}) {
        INFO("z = " << z);
        CHECK_THAT(mittag_leffler_value(1.0, 2.0, z, 1e-13),
                   Catch::Matchers::WithinAbs(std::expm1(z) / z, 1e-11));
    }
}

TEST_CASE("half-order identity E_{1/2,1}(-x) = exp(x^2) erfc(x)", "[mlf]") {
    // Sweeps from the series regime deep into the asymptotic regime.
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0,
                     10.0, 15.0, 20.0, 25.0}) {
        const double z = -x;
        const double expect = std::exp(x * x) * erfc_reference(x);
        const auto r = mittag_leffler({0.5, 1.0, z, 1e-9});
        INFO("x = " << x << " z = " << z << " method "
                    << (r.method == MlMethod::series ? "series" : "asymptotic"));
        CHECK_THAT(r.value, Catch::Matchers::WithinAbs(expect, 1e-8));
        CHECK(r.guaranteed);
        CHECK(std::fabs(r.value - expect) <= r.error_bound + 1e-13);
    }
}

TEST_CASE("frozen reference value at alpha = 1/2, z = -1", "[mlf]") {
    const auto r = mittag_leffler({0.5, 1.0, -1.0, 1e-14});
    CHECK_THAT(r.value, Catch::Matchers::WithinAbs(0.42758357615580700, 5e-13));
    CHECK(r.method == MlMethod::series);
}

TEST_CASE("series agrees with the plain-summation oracle", "[mlf]") {
    for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
        for (double beta : {std::max(alpha, 0.5), 1.0, 1.5, 2.5}) {
            for (double z : {-2.0, -1.0, -0.25, 0.5, 1.75}) {
                INFO("alpha " << alpha << " beta " << beta << " z " << z);
                CHECK_THAT(mittag_leffler_value(alpha, beta, z, 1e-14),
                           Catch::Matchers::WithinAbs(
                               oracle::ml_series_plain(alpha, beta, z), 1e-12));
            }
        }
    }
}

TEST_CASE("negative-axis values stay within the uniform bound", "[mlf]") {
    // 0 <= E_{alpha,beta}(-t) <= 1/Gamma(beta) for 0 < alpha <= 1, beta >= alpha.
    for (double alpha = 0.1; alpha <= 1.0; alpha += 0.1) {
        for (double db : {0.0, 0.2, 0.5, 1.0, 2.0}) {
            const double beta = alpha + db;
            for (double t = 1e-3; t <= 1e4; t *= 10.0) {
                INFO("alpha " << alpha << " beta " << beta << " t " << t);
                const double v = mittag_leffler_value(alpha, beta, -t);
                CHECK(v >= -1e-10);
                CHECK(v <= 1.0 / std::tgamma(beta) + 1e-10);
            }
        }
    }
}

TEST_CASE("complete monotonicity at probe level on a geometric ladder", "[mlf]") {
    // Divided differences of a completely monotone function alternate in sign
    // on any increasing node set: (-1)^n f[t_0..t_n] >= 0.
    for (double alpha : {0.4, 0.7, 1.0}) {
        for (double beta : {alpha, 1.0, 1.8}) {
            std::vector<double> t;
            std::vector<double> f;
            for (int j = 0; j < 24; ++j) {
                t.push_back(0.01 * std::pow(1.7, j));
                f.push_back(mittag_leffler_value(alpha, beta, -t.back(), 1e-12));
            }
            for (int order = 1; order <= 4; ++order) {
                for (std::size_t i = 0; i + order < t.size(); ++i) {
                    std::vector<double> ts(t.begin() + i, t.begin() + i + order + 1);
                    std::vector<double> fs(f.begin() + i, f.begin() + i + order + 1);
                    const double dd = oracle::divided_difference(ts, fs);
                    INFO("alpha " << alpha << " beta " << beta << " order " << order
                                  << " window " << i);
                    CHECK((order % 2 == 0 ? dd : -dd) >= -1e-9);
                }
            }
        }
    }
}

TEST_CASE("series and asymptotic evaluations agree near the crossover", "[mlf]") {
    // At 1e-7 both routes certify on a shared band of arguments for every
    // pair below; the long-double series dies of roundoff before the
    // asymptotic tail reaches 1e-10, so the overlap only exists at looser
    // tolerances. Wherever both claim the tolerance the values must agree,
    // and the claimed bounds must mutually cover the observed gap.
    const double tol = 1e-7;
    for (auto [alpha, beta] : std::vector<std::pair<double, double>>{
             {0.5, 1.0}, {0.5, 1.5}, {0.7, 1.2}, {0.9, 0.9}, {1.0, 1.0}, {0.6, 0.6}}) {
        bool overlap_seen = false;
        for (double x = 1.5; x <= 80.0; x *= 1.1) {
            const auto ser = detail::ml_series(alpha, beta, -x, tol);
            const auto asy = detail::ml_asymptotic_neg(alpha, beta, x, tol);
            if (!ser.converged || !std::isfinite(asy.error_bound)) continue;
            INFO("alpha " << alpha << " beta " << beta << " x " << x);
            CHECK(std::fabs(ser.value - asy.value) <=
                  ser.error_bound + asy.error_bound + 1e-15);
            if (ser.error_bound <= tol && asy.error_bound <= tol) {
                overlap_seen = true;
                CHECK_THAT(ser.value, Catch::Matchers::WithinAbs(asy.value, 2.0 * tol));
            }
        }
        INFO("alpha " << alpha << " beta " << beta);
        CHECK(overlap_seen);
    }
}

TEST_CASE("route selection switches from series to asymptotic", "[mlf]") {
    CHECK(mittag_leffler({0.5, 1.0, -1.0}).method == MlMethod::series);
    CHECK(mittag_leffler({0.5, 1.0, -400.0}).method == MlMethod::asymptotic);
    CHECK(mittag_leffler({0.5, 0.5, -1e6}).method == MlMethod::asymptotic);
}

TEST_CASE("results outside the promised region are flagged", "[mlf]") {
    CHECK_FALSE(mittag_leffler({1.5, 1.0, -2.0}).guaranteed);   // alpha > 1
    CHECK_FALSE(mittag_leffler({0.5, 0.25, -1.0}).guaranteed);  // beta < alpha
    CHECK(mittag_leffler({0.5, 0.5, -2.0}).guaranteed);
}

TEST_CASE("the evaluator reports when a tight tolerance is unreachable", "[mlf]") {
    // Small alpha at moderate negative z sits between the two regimes: the
    // series is drowned by cancellation noise and the asymptotic tail has not
    // collapsed yet. The result must be honest about that.
    const auto r = mittag_leffler({0.25, 1.0, -2.1, 1e-12});
    CHECK_FALSE(r.guaranteed);
    CHECK(r.error_bound > 1e-12);
    // A loose tolerance is reachable at the same point.
    const auto loose = mittag_leffler({0.25, 1.0, -2.1, 1e-4});
    CHECK(loose.guaranteed);
    CHECK_THAT(loose.value, Catch::Matchers::WithinAbs(r.value, 1e-4));
}
