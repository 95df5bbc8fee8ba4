#include "doctest.h"
#include "vcnls/riccati.hpp"
#include "vcnls/seeds.hpp"
#include "vcnls/validate.hpp"

#include <cmath>
#include <memory>
#include <random>

using namespace vcnls;

namespace {

std::shared_ptr<CharacteristicBasis> free_particle_basis() {
    auto sc = load_scenario("example1");
    return std::make_shared<CharacteristicBasis>(sc.coefficients, 0.0, 8.0);
}

}  // namespace

TEST_SUITE("riccati") {

TEST_CASE("free-particle kernel closed forms") {
    auto basis = free_particle_basis();
    RiccatiKernel k(basis);
    for (double t : {0.2, 0.9, 2.5, 6.0}) {
        CHECK(k.alpha0(t) == doctest::Approx(1.0 / (2.0 * t)).epsilon(1e-11));
        CHECK(k.beta0(t) == doctest::Approx(-1.0 / t).epsilon(1e-11));
        CHECK(k.gamma0(t) == doctest::Approx(1.0 / (2.0 * t)).epsilon(1e-11));
        // no f or g: the sourced kernel components vanish identically
        CHECK(k.delta0(t) == doctest::Approx(0.0).scale(1.0));
        CHECK(k.eps0_safe(t) == doctest::Approx(0.0).scale(1.0));
        CHECK(k.kappa0_safe(t) == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("free-particle multiparameter closed forms") {
    auto basis = free_particle_basis();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        PhaseInit in;
        in.alpha = 0.3 * U(rng);
        in.beta = 1.0 + 0.5 * U(rng);
        in.gamma = U(rng);
        in.delta = U(rng);
        in.eps = U(rng);
        in.kappa = U(rng);
        RiccatiSolution sol(basis, in);
        for (double t : {0.0, 0.4, 1.3, 3.0}) {
            double mr = 2.0 * in.alpha * t + 1.0;
            CHECK(sol.mu_reg(t) == doctest::Approx(mr).epsilon(1e-11));
            CHECK(sol.alpha(t) == doctest::Approx(in.alpha / mr).epsilon(1e-11));
            CHECK(sol.beta(t) == doctest::Approx(in.beta / mr).epsilon(1e-11));
            // scenario sign parameter is -1
            double g_expect = -(in.gamma - in.beta * in.beta * t / (2.0 * mr));
            CHECK(sol.gamma(t) == doctest::Approx(g_expect).epsilon(1e-11));
            CHECK(sol.delta(t) == doctest::Approx(in.delta / mr).epsilon(1e-11));
            CHECK(sol.eps(t) ==
                  doctest::Approx(in.eps - in.beta * in.delta * t / mr).epsilon(1e-11));
            CHECK(sol.kappa_linear(t) ==
                  doctest::Approx(in.kappa - in.delta * in.delta * t / (2.0 * mr))
                      .epsilon(1e-11));
        }
    }
}

TEST_CASE("free-particle closed forms satisfy the phase system exactly") {
    // substitute the closed forms with hand derivatives; residuals are pure
    // roundoff
    double a = 0.5;
    for (double a0 : {-0.25, 0.1, 0.4}) {
        for (double t : {0.3, 1.1, 2.7}) {
            double mr = 2.0 * a0 * t + 1.0;
            double al = a0 / mr;
            double dal = -2.0 * a0 * a0 / (mr * mr);
            CHECK(std::abs(dal + 4.0 * a * al * al) <= 1e-14);
            double be = 1.0 / mr;
            double dbe = -2.0 * a0 / (mr * mr);
            CHECK(std::abs(dbe + 4.0 * a * al * be) <= 1e-14);
        }
    }
}

TEST_CASE("beta times mu follows the transport weight") {
    for (const char* nm : {"example1", "sch1", "bending_bright"}) {
        auto sc = load_scenario(nm);
        auto basis = std::make_shared<CharacteristicBasis>(
            CharacteristicBasis::for_scenario(sc));
        PhaseInit in;
        in.alpha = 0.35;
        in.beta = 1.4;
        in.mu = 0.8;
        RiccatiSolution sol(basis, in);
        for (int i = 0; i <= 40; ++i) {
            double t = sc.t_min + (sc.t_max - sc.t_min) * i / 40.0;
            double lhs = sol.beta(t) * sol.mu(t);
            double rhs = in.beta * in.mu * basis->w(t);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8).scale(std::abs(rhs)));
        }
    }
}

TEST_CASE("system residual over random draws") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-2.0, 2.0), Ub(0.5, 2.0);
    const char* names[] = {"example1", "sch1", "bending_bright", "bending_dark"};
    for (int k = 0; k < 64; ++k) {
        auto sc = load_scenario(names[k % 4]);
        auto basis = std::make_shared<CharacteristicBasis>(
            CharacteristicBasis::for_scenario(sc));
        PhaseInit in;
        in.alpha = U(rng);
        in.beta = Ub(rng);
        in.gamma = U(rng);
        in.delta = U(rng);
        in.eps = U(rng);
        in.kappa = U(rng);
        RiccatiSolution sol(basis, in);
        auto rep = system_residual_riccati(sol, sc.t_min + 0.01, sc.t_max - 0.01,
                                           160, 1e-7);
        CAPTURE(names[k % 4]);
        CAPTURE(rep.worst_equation);
        CAPTURE(rep.worst_t);
        CHECK(rep.max_abs <= 1e-7);
    }
}

TEST_CASE("nonlinear phase accumulates h/mu^s + G") {
    TimeFunction h = TimeFunction::constant(-2.0);
    TimeFunction G = TimeFunction::constant(0.5);
    NonlinearPhase nl(h, G, 1.0, [](double) { return 1.0; }, -1.0, 3.0);
    for (double t : {-1.0, 0.0, 1.7, 3.0})
        CHECK(nl.value(t) == doctest::Approx(-1.5 * t).epsilon(1e-11));
}

}  // TEST_SUITE

TEST_SUITE("gauge") {

TEST_CASE("periodically modulated set is admissible with lambda = -3") {
    auto sc = load_scenario("sch1");
    GaugeSolution gs(sc.coefficients, sc.t_min, sc.t_max);
    const auto& d = gs.diagnostics();
    CHECK(d.max_compatibility_residual <= 1e-10);
    CHECK(d.max_a_mismatch <= 1e-10);
    CHECK(d.lambda == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(d.admissible(1e-8));
    for (double t : {0.0, 1.0, 4.0}) {
        CHECK(gs.mu(t) ==
              doctest::Approx(std::exp(3.0 * (1.0 - std::cos(t)))).epsilon(1e-10));
        CHECK(gs.alpha(t) == doctest::Approx(std::sin(t) / 4.0).epsilon(1e-12));
        CHECK(gs.delta(t) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(gs.kappa(t) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("chirped Gaussian set matches the Dawson-function phase") {
    auto sc = load_scenario("sch2");
    OdeOptions o;
    o.rtol = o.atol = 1e-14;
    GaugeSolution gs(sc.coefficients, sc.t_min, sc.t_max, 1.0, 0.0, o);
    const auto& d = gs.diagnostics();
    CHECK(d.max_compatibility_residual <= 1e-10);
    CHECK(d.lambda == doctest::Approx(-8.0).epsilon(1e-10));
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double t = 2.0 * i / 200.0;
        double closed = std::exp(2.0 * t * t) *
                        (2.0 * t - std::sqrt(2.0) * dawson(std::sqrt(2.0) * t)) / 8.0;
        worst = std::max(worst, std::abs(gs.kappa(t) - closed));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("incompatible coefficients are reported, not accepted") {
    auto sc = load_scenario("sch1");
    sc.coefficients.b = TimeFunction::constant(1.0);  // violates opt1
    GaugeSolution gs(sc.coefficients, 0.0, 2.0);
    CHECK(gs.diagnostics().max_compatibility_residual > 1e-3);
    CHECK(!gs.diagnostics().admissible(1e-8));
}

}  // TEST_SUITE
