#include "doctest.h"
#include "vcnls/simulate.hpp"
#include "vcnls/transforms.hpp"

#include <cmath>

using namespace vcnls;

namespace {

CoefficientSet bright_nls() {
    CoefficientSet cf;
    cf.a = TimeFunction::constant(0.5);
    cf.h = TimeFunction::constant(-1.0);
    return cf;
}

ExactSolution1D travelling_bright() {
    ExactSolution1D ex;
    ex.name = "bright_nls";
    ex.value = [](double t, double x) {
        double v = 1.0;
        return std::polar(1.0 / std::cosh(x - v * t),
                          v * x - (v * v - 1.0) * t / 2.0);
    };
    return ex;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("method of lines tracks the bright soliton, fourth order in space") {
    auto cf = bright_nls();
    auto ex = travelling_bright();
    OdeOptions tight;
    tight.rtol = tight.atol = 1e-10;
    tight.max_step = 0.05;
    double prev = 0.0;
    for (int N : {128, 256}) {
        SimGrid g;
        g.x_min = -15;
        g.x_max = 15;
        g.n = N;
        auto res = simulate_mol(cf, g, sample_initial(ex, 0.0, g), 0.0, {0.5},
                                {}, tight);
        CHECK(res.steps > 0);
        double e = l2_error(res.frames.back().psi, ex, 0.5, g);
        if (prev > 0.0) CHECK(std::log2(prev / e) >= 3.7);
        prev = e;
    }
    CHECK(prev <= 1e-4);
}

TEST_CASE("zero data stays zero") {
    auto cf = bright_nls();
    SimGrid g;
    g.x_min = -10;
    g.x_max = 10;
    g.n = 128;
    std::vector<cplx> psi0(g.n, cplx(0.0, 0.0));
    auto res = simulate_mol(cf, g, psi0, 0.0, {0.3}, {}, {});
    for (const auto& v : res.frames.back().psi) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("simulated mass follows the transport law") {
    auto sc = load_scenario("sch1");
    auto ex = exact_periodic_sech(-2.0, 0.0);
    SimGrid g;
    g.x_min = -20;
    g.x_max = 20;
    g.n = 512;
    auto psi0 = sample_initial(ex, 0.0, g);
    double m0 = mass(psi0, g.dx());
    OdeOptions o;
    o.rtol = o.atol = 1e-9;
    o.max_step = 0.05;
    auto res = simulate_mol(sc.coefficients, g, psi0, 0.0, {0.25, 0.5, 0.75, 1.0},
                            {}, o);
    for (const auto& fr : res.frames) {
        double expect = m0 * std::exp(-3.0 * (1.0 - std::cos(fr.t)));
        CHECK(std::abs(mass(fr.psi, g.dx()) - expect) / expect <= 1e-5);
    }
}

TEST_CASE("split-step and method of lines agree") {
    auto cf = bright_nls();
    ExactSolution1D ex;
    ex.value = [](double t, double x) {
        return std::polar(1.0 / std::cosh(x - t), x);
    };
    SimGrid g;
    g.x_min = -15;
    g.x_max = 15;
    g.n = 1024;
    auto p0 = sample_initial(ex, 0.0, g);
    OdeOptions o;
    o.rtol = o.atol = 1e-10;
    o.max_step = 0.02;
    auto rm = simulate_mol(cf, g, p0, 0.0, {0.25}, {}, o);
    SplitStepOptions so;
    so.dt = 2e-4;
    auto rs = simulate_split_step(cf, g, p0, 0.0, {0.25}, {}, so);
    double d = 0.0;
    for (int j = 0; j < g.n; ++j)
        d = std::max(d, std::abs(rm.frames.back().psi[j] - rs.frames.back().psi[j]));
    CHECK(d <= 1e-6);
}

TEST_CASE("split-step refuses convection terms") {
    auto cf = bright_nls();
    cf.c = TimeFunction::constant(1.0);
    SimGrid g;
    g.x_min = -5;
    g.x_max = 5;
    g.n = 64;
    std::vector<cplx> p0(g.n, cplx(0.1, 0.0));
    CHECK_THROWS(simulate_split_step(cf, g, p0, 0.0, {0.1}, {}, {}));
}

TEST_CASE("linear free evolution is time reversible") {
    CoefficientSet cf;
    cf.a = TimeFunction::constant(0.5);
    ExactSolution1D ex;
    ex.value = [](double t, double x) {
        return std::polar(1.0 / std::cosh(x - t), x);
    };
    SimGrid g;
    g.x_min = -15;
    g.x_max = 15;
    g.n = 512;
    auto q0 = sample_initial(ex, 0.0, g);
    OdeOptions tr;
    tr.rtol = tr.atol = 1e-12;
    tr.max_step = 0.02;
    auto fwd = simulate_mol(cf, g, q0, 0.0, {0.5}, {}, tr);
    auto bwd = simulate_mol(cf, g, fwd.frames.back().psi, 0.5, {0.0}, {}, tr);
    double r = 0.0;
    for (int j = 0; j < g.n; ++j)
        r = std::max(r, std::abs(bwd.frames.back().psi[j] - q0[j]));
    CHECK(r <= 1e-8);
}

TEST_CASE("bending dark soliton with exact boundary data") {
    auto sc = load_scenario("bending_dark");
    auto ex = exact_bending_dark(2.0, 0, 0, 0, 0);
    SimGrid g;
    g.x_min = -10;
    g.x_max = 10;
    g.n = 1024;
    auto psi0 = sample_initial(ex, 0.5, g);
    OdeOptions o;
    o.rtol = o.atol = 1e-10;
    o.max_step = 0.02;
    auto bc = [&ex](double t, double x) { return ex.value(t, x); };
    auto res = simulate_mol(sc.coefficients, g, psi0, 0.5, {1.0}, {}, o, bc);
    double linf = 0.0;
    for (int j = 0; j < g.n; ++j)
        linf = std::max(linf,
                        std::abs(res.frames.back().psi[j] - ex.value(1.0, g.x(j))));
    CHECK(linf <= 5e-4);
}

}  // TEST_SUITE
