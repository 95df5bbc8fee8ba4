#include "doctest.h"
#include "vcnls/expr.hpp"

#include <cmath>

using namespace vcnls;

TEST_SUITE("expr") {

TEST_CASE("evaluation of reference expressions") {
    auto f = parse_time_expression("sin(t)^2 - cos(t)");
    CHECK(f.value(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f.value(1.0) ==
          doctest::Approx(std::sin(1.0) * std::sin(1.0) - std::cos(1.0))
              .epsilon(1e-15));

    auto g = parse_time_expression("(2+coth(t))*exp(2*sinh(t))*tanh(t)");
    CHECK(g.value(1.0) == doctest::Approx(26.467715102775594161).epsilon(1e-13));
}

TEST_CASE("analytic derivative matches finite differences") {
    const char* exprs[] = {
        "sin(t)^2 - cos(t)",
        "exp(3*(1-cos(t)))",
        "t^2*exp(2*t^2)",
        "1/(2-t)",
        "tanh(t)*sech(t) + t^3/7",
        "sqrt(1 + t^2)",
    };
    for (const char* e : exprs) {
        auto f = parse_time_expression(e);
        for (double t : {0.3, 0.9, 1.7}) {
            double h = 1e-5;
            double fd = (f.value(t - 2 * h) - 8 * f.value(t - h) + 8 * f.value(t + h) -
                         f.value(t + 2 * h)) /
                        (12 * h);
            CHECK(f.deriv(t) ==
                  doctest::Approx(fd).epsilon(1e-8).scale(std::abs(fd) + 1.0));
        }
    }
}

TEST_CASE("second derivative of sin is -sin") {
    auto f = parse_time_expression("sin(t)");
    for (double t : {0.0, 0.5, 2.0})
        CHECK(f.deriv2(t) == doctest::Approx(-std::sin(t)).epsilon(1e-14));
}

TEST_CASE("parse errors carry a position") {
    for (const char* bad : {"2*", "sin(", "foo(t)", "1 + * 2", "(1+2", "t t"}) {
        try {
            parse_time_expression(bad);
            FAIL_CHECK("expected parse_error for: " << bad);
        } catch (const parse_error& e) {
            CHECK(e.offset() <= std::string(bad).size());
        }
    }
}

TEST_CASE("zero detection and rendering round trip") {
    CHECK(parse_time_expression("0").is_identically_zero());
    CHECK(!parse_time_expression("t").is_identically_zero());
    CHECK(TimeFunction().is_identically_zero());

    auto f = parse_time_expression("(1 + t)^2 / cosh(t)");
    auto g = parse_time_expression(f.render());
    for (double t : {-1.0, 0.0, 0.7, 3.0})
        CHECK(g.value(t) == doctest::Approx(f.value(t)).epsilon(1e-15));
}

TEST_CASE("callable-backed functions fall back to numeric derivatives") {
    auto f = TimeFunction::from_callables([](double t) { return t * t * t; });
    CHECK(f.value(2.0) == doctest::Approx(8.0));
    CHECK(f.deriv(2.0) == doctest::Approx(12.0).epsilon(1e-7));
}

}  // TEST_SUITE
