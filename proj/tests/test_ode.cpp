#include "doctest.h"
#include "vcnls/ode.hpp"

#include <cmath>

using namespace vcnls;

TEST_SUITE("ode") {

TEST_CASE("dense output of y' = y tracks exp") {
    OdeRhs<double> rhs = [](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy = {y[0]};
    };
    auto sol = integrate_dense<double>(rhs, {1.0}, 0.0, 2.0, {});
    for (double t : {0.0, 0.37, 1.3, 2.0})
        CHECK(sol.eval_component(t, 0) ==
              doctest::Approx(std::exp(t)).epsilon(1e-10));
}

TEST_CASE("harmonic oscillator round trip") {
    OdeRhs<double> rhs = [](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy = {y[1], -y[0]};
    };
    const double pi = 3.14159265358979323846;
    auto sol = integrate_dense<double>(rhs, {1.0, 0.0}, 0.0, 2.0 * pi, {});
    CHECK(sol.eval_component(pi, 0) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(sol.eval_component(pi, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(sol.eval_component(2.0 * pi, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("dense derivative is consistent with the rhs") {
    OdeRhs<double> rhs = [](double t, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy = {std::cos(t) * y[0]};
    };
    auto sol = integrate_dense<double>(rhs, {1.0}, 0.0, 3.0, {});
    for (double t : {0.5, 1.5, 2.5}) {
        double v = sol.eval_component(t, 0);
        CHECK(sol.eval_component_derivative(t, 0) ==
              doctest::Approx(std::cos(t) * v).epsilon(1e-9));
    }
}

TEST_CASE("observer can stop the integration") {
    OdeRhs<double> rhs = [](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy = {y[0]};
    };
    std::vector<double> y0 = {1.0};
    double t_seen = 0.0;
    auto obs = [&](double t, const std::vector<double>& y) {
        t_seen = t;
        return y[0] < 5.0;
    };
    integrate_dense<double>(rhs, y0, 0.0, 10.0, {}, obs, false);
    // stops shortly after y = 5, i.e. near t = ln 5
    CHECK(t_seen >= std::log(5.0) - 1e-12);
    CHECK(t_seen < std::log(5.0) + 0.1);
}

TEST_CASE("two-sided dense output covers both time directions") {
    OdeRhs<double> rhs = [](double, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy = {y[0]};
    };
    TwoSidedDense<double> sol(rhs, {1.0}, 0.0, -2.0, 3.0, {});
    for (double t : {-2.0, -0.5, 0.0, 1.2, 3.0})
        CHECK(sol.component(t, 0) == doctest::Approx(std::exp(t)).epsilon(1e-10));
    CHECK(sol.component_derivative(1.0, 0) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-9));
}

TEST_CASE("complex scalar integration") {
    using C = std::complex<double>;
    OdeRhs<C> rhs = [](double, const std::vector<C>& y, std::vector<C>& dy) {
        dy = {C(0.0, 1.0) * y[0]};
    };
    auto sol = integrate_dense<C>(rhs, {C(1.0, 0.0)}, 0.0, 2.0, {});
    auto v = sol.eval_component(1.5, 0);
    CHECK(v.real() == doctest::Approx(std::cos(1.5)).epsilon(1e-10));
    CHECK(v.imag() == doctest::Approx(std::sin(1.5)).epsilon(1e-10));
}

}  // TEST_SUITE
