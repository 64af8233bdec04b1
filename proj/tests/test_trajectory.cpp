#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fvoigt/trajectory.hpp"

using namespace fvoigt;

TEST_CASE("trajectory interpolates linearly between samples", "[trajectory]") {
    Trajectory a{1.0, 0.5, {0.0, 1.0, 4.0, 9.0}};
    CHECK(a.size() == 4);
    CHECK(a.time_at(2) == 2.0);
    CHECK(a.end() == 2.5);
    CHECK(a.eval(1.0) == 0.0);
    CHECK(a.eval(2.5) == 9.0);
    CHECK_THAT(a.eval(1.25), Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(a.eval(2.25), Catch::Matchers::WithinAbs(6.5, 1e-15));
}

TEST_CASE("trajectory refuses arguments outside its range", "[trajectory]") {
    Trajectory a{0.0, 0.25, {1.0, 2.0, 3.0}};
    CHECK_THROWS_AS(a.eval(-0.1), std::domain_error);
    CHECK_THROWS_AS(a.eval(0.51), std::domain_error);
    CHECK(a.eval(0.5 + 1e-13) == 3.0);  // clamped hairline overshoot
    CHECK_THROWS_AS(Trajectory{}.eval(0.0), std::domain_error);
}

TEST_CASE("sup norms and distances", "[trajectory]") {
    Trajectory a{0.0, 1.0, {1.0, -3.0, 2.0}};
    Trajectory b{0.0, 1.0, {0.5, -1.0, 2.0}};
    CHECK(sup_norm(a) == 3.0);
    CHECK(sup_distance(a, b) == 2.0);
    Trajectory c{0.0, 0.5, {0.5, -1.0, 2.0}};
    CHECK_THROWS_AS(sup_distance(a, c), std::invalid_argument);
    Trajectory d{0.0, 1.0, {0.5, -1.0}};
    CHECK_THROWS_AS(sup_distance(a, d), std::invalid_argument);
}

TEST_CASE("csv output uses twelve significant digits", "[trajectory]") {
    Trajectory a{0.0, 0.5, {0.36787944117144233, 1.0 / 3.0}};
    std::ostringstream os;
    write_csv(os, a, "x");
    CHECK(os.str() == "t,x\n0,0.367879441171\n0.5,0.333333333333\n");
}
