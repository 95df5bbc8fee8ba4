#pragma once

// Numerical verification of constructed solutions:
//   * pde_residual_1d / pde_residual_2d: plug an explicit solution back into
//     i psi_t = -a psi_xx + (b x^2 - f x + G) psi - i c x psi_x - i d psi
//               + i g psi_x + h |psi|^{2s} psi
//     with 8th-order centered differences and a per-point step chosen from
//     the local oscillation rate, and report the worst normalized residual.
//   * system_residual_riccati / system_residual_ermakov: differentiate the
//     phase evaluators (6th-order differences) and check the coupled ODEs.
//   * seed_residual: check the autonomous profile equation
//     i chi_tau - l0 chi_xixi + l0 lambda |chi|^{2s} chi = 0.
//   * mass_law_check: ||psi(t)||_2^2 = ||psi(0)||_2^2 / w(t).

#include <string>

#include "ermakov.hpp"
#include "transforms.hpp"

namespace vcnls {

// -- finite-difference kernels ------------------------------------------------

// 8th-order first derivative on offsets +-1..4
template <class F>
auto fd_d1_8(F&& f, double t, double h) -> decltype(f(t)) {
    static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    decltype(f(t)) s{};
    for (int i = 1; i <= 4; ++i) s += c[i - 1] * (f(t + i * h) - f(t - i * h));
    return s / h;
}

// 8th-order second derivative on offsets 0, +-1..4
template <class F>
auto fd_d2_8(F&& f, double t, double h) -> decltype(f(t)) {
    static const double c0 = -205.0 / 72.0;
    static const double c[4] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
    decltype(f(t)) s = c0 * f(t);
    for (int i = 1; i <= 4; ++i) s += c[i - 1] * (f(t + i * h) + f(t - i * h));
    return s / (h * h);
}

// 6th-order first derivative on offsets +-1..3
template <class F>
auto fd_d1_6(F&& f, double t, double h) -> decltype(f(t)) {
    static const double c[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    decltype(f(t)) s{};
    for (int i = 1; i <= 3; ++i) s += c[i - 1] * (f(t + i * h) - f(t - i * h));
    return s / h;
}

namespace detail {

// Local oscillation rate of f near t, from both the first and the second
// logarithmic derivative: a chirped phase can have f'/f ~ 0 at a stationary
// point while still oscillating on the scale 1/sqrt(|f''/f|).  The first
// probe is tiny so a fast-rotating phase cannot alias to a slow one.
template <class F>
double local_rate(F&& f, double t, double lo, double hi) {
    auto probe = [&](double hh, double& r1, double& r2) {
        if (t - lo < hh) hh = std::max(t - lo, 1e-12);
        if (hi - t < hh) hh = std::max(hi - t, 1e-12);
        auto fm = f(t - hh);
        auto fp = f(t + hh);
        auto f0 = f(t);
        double den = std::max({std::abs(f0), std::abs(fp), std::abs(fm), 1e-300});
        r1 = std::abs(fp - fm) / (2.0 * hh * den);
        r2 = std::sqrt(std::abs(fp - 2.0 * f0 + fm) / (hh * hh * den));
    };
    double r1, r2;
    probe(1e-6, r1, r2);  // r2 unusable at this step size (roundoff)
    double rate = r1;
    if (rate < 1e2) {  // no aliasing risk: re-probe wider for the curvature
        probe(1e-4, r1, r2);
        rate = std::max({rate, r1, r2});
    }
    return std::max(rate, 1e-6);
}

// step targeting truncation ~1e-9: theta = rate * h ~ 0.058 for 8th order
inline double adaptive_step(double rate, double lo_margin, double hi_margin) {
    double h = 0.058 / rate;
    h = std::min(h, 1e-2);
    h = std::max(h, 1e-7);
    // keep the 4-wide stencil inside the evaluable window
    double margin = std::min(lo_margin, hi_margin) / 4.0625;
    if (margin > 1e-12) h = std::min(h, margin);
    return h;
}

// Derivatives with step-halving until two consecutive stencils agree, which
// bounds the truncation error without a priori knowledge of f's scales.
// Halving reduces truncation ~2^8x but grows roundoff (~2x for d1, ~4x for
// d2), so the inter-step diff is V-shaped; once it starts growing we are past
// the crossover and further halving only adds noise — stop and keep the
// estimate at the smallest diff seen.
template <class F>
auto refined_d1(F&& f, double t, double h, double tol) -> decltype(f(t)) {
    auto prev = fd_d1_8(f, t, h);
    auto best = prev;
    double best_diff = 1e300;
    for (int k = 0; k < 8; ++k) {
        h *= 0.5;
        auto cur = fd_d1_8(f, t, h);
        double diff = std::abs(cur - prev);
        if (diff <= tol) return cur;
        if (diff < best_diff) {
            best = cur;
            best_diff = diff;
        } else if (diff > 2.0 * best_diff) {
            break;  // roundoff regime
        }
        prev = cur;
    }
    return best;
}

template <class F>
auto refined_d2(F&& f, double t, double h, double tol) -> decltype(f(t)) {
    auto prev = fd_d2_8(f, t, h);
    auto best = prev;
    double best_diff = 1e300;
    for (int k = 0; k < 8; ++k) {
        h *= 0.5;
        auto cur = fd_d2_8(f, t, h);
        double diff = std::abs(cur - prev);
        if (diff <= tol) return cur;
        if (diff < best_diff) {
            best = cur;
            best_diff = diff;
        } else if (diff > 2.0 * best_diff) {
            break;  // roundoff regime
        }
        prev = cur;
    }
    return best;
}

}  // namespace detail

struct GridSpec1D {
    double t_min = 0.0, t_max = 1.0;
    int nt = 201;
    double x_min = -10.0, x_max = 10.0;
    int nx = 401;
    // window on which the solution is evaluable in t (defaults: unrestricted)
    double eval_t_min = -1e300, eval_t_max = 1e300;
};

struct GridSpec2D {
    double t_min = 0.0, t_max = 1.0;
    int nt = 41;
    double x_min = -6.0, x_max = 6.0;
    int nx = 81;
    double y_min = -6.0, y_max = 6.0;
    int ny = 81;
    double eval_t_min = -1e300, eval_t_max = 1e300;
};

struct ResidualReport {
    double max_abs = 0.0;  // normalized by max(1, sup |psi| on the grid)
    double rms = 0.0;
    double scale = 1.0;    // the normalization actually used
    double worst_t = 0.0, worst_x = 0.0, worst_y = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

inline ResidualReport pde_residual_1d(const ExactSolution1D& sol,
                                      const CoefficientSet& cf, const GridSpec1D& g,
                                      double threshold = 1e-6) {
    ResidualReport rep;
    rep.threshold = threshold;

    // first sweep: amplitude scale
    double amp = 0.0;
    for (int i = 0; i < g.nt; ++i) {
        double t = g.t_min + (g.t_max - g.t_min) * i / std::max(1, g.nt - 1);
        for (int j = 0; j < g.nx; ++j) {
            double x = g.x_min + (g.x_max - g.x_min) * j / std::max(1, g.nx - 1);
            amp = std::max(amp, std::abs(sol.value(t, x)));
        }
    }
    rep.scale = std::max(1.0, amp);

    double sum_sq = 0.0;
    std::size_t count = 0;
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < g.nt; ++i) {
        double t = g.t_min + (g.t_max - g.t_min) * i / std::max(1, g.nt - 1);
        for (int j = 0; j < g.nx; ++j) {
            double x = g.x_min + (g.x_max - g.x_min) * j / std::max(1, g.nx - 1);
            auto psi = sol.value(t, x);
            if (std::abs(psi) < 1e-14 * rep.scale) {  // residual below noise anyway
                ++count;
                continue;
            }
            auto in_t = [&sol, x](double tt) { return sol.value(tt, x); };
            auto in_x = [&sol, t](double xx) { return sol.value(t, xx); };

            double rt = detail::local_rate(in_t, t, g.eval_t_min, g.eval_t_max);
            double rx = detail::local_rate(in_x, x, -1e300, 1e300);
            double ht = detail::adaptive_step(rt, t - g.eval_t_min, g.eval_t_max - t);
            double hx = detail::adaptive_step(rx, 1e300, 1e300);
            double tol = 5e-9 * rep.scale;

            auto psi_t = detail::refined_d1(in_t, t, ht, tol);
            auto psi_x = detail::refined_d1(in_x, x, hx, tol);
            auto psi_xx = detail::refined_d2(in_x, x, hx, tol);

            double a = cf.a.value(t), b = cf.b.value(t), c = cf.c.value(t);
            double d = cf.d.value(t), f = cf.f.value(t), gg = cf.g.value(t);
            double h = cf.h.value(t), G = cf.G.value(t);
            double mod2s = std::pow(std::abs(psi), 2.0 * sol.s);

            auto R = I * psi_t + a * psi_xx - (b * x * x - f * x + G) * psi +
                     I * c * x * psi_x + I * d * psi - I * gg * psi_x -
                     h * mod2s * psi;
            double r = std::abs(R) / rep.scale;
            sum_sq += r * r;
            ++count;
            if (r > rep.max_abs) {
                rep.max_abs = r;
                rep.worst_t = t;
                rep.worst_x = x;
            }
        }
    }
    rep.rms = count ? std::sqrt(sum_sq / count) : 0.0;
    rep.passed = rep.max_abs <= threshold;
    return rep;
}

// 2D isotropic form: i psi_t = -a laplacian(psi) + b (x^2+y^2) psi
//                    + h |psi|^{2s} psi     (c = d = f = g = G = 0)
inline ResidualReport pde_residual_2d(const ExactSolution2D& sol,
                                      const CoefficientSet& cf, const GridSpec2D& g,
                                      double threshold = 1e-6) {
    ResidualReport rep;
    rep.threshold = threshold;

    double amp = 0.0;
    for (int i = 0; i < g.nt; ++i) {
        double t = g.t_min + (g.t_max - g.t_min) * i / std::max(1, g.nt - 1);
        for (int j = 0; j < g.nx; ++j) {
            double x = g.x_min + (g.x_max - g.x_min) * j / std::max(1, g.nx - 1);
            for (int k = 0; k < g.ny; ++k) {
                double y = g.y_min + (g.y_max - g.y_min) * k / std::max(1, g.ny - 1);
                amp = std::max(amp, std::abs(sol.value(t, x, y)));
            }
        }
    }
    rep.scale = std::max(1.0, amp);

    double sum_sq = 0.0;
    std::size_t count = 0;
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < g.nt; ++i) {
        double t = g.t_min + (g.t_max - g.t_min) * i / std::max(1, g.nt - 1);
        for (int j = 0; j < g.nx; ++j) {
            double x = g.x_min + (g.x_max - g.x_min) * j / std::max(1, g.nx - 1);
            for (int k = 0; k < g.ny; ++k) {
                double y = g.y_min + (g.y_max - g.y_min) * k / std::max(1, g.ny - 1);
                auto psi = sol.value(t, x, y);
                if (std::abs(psi) < 1e-14 * rep.scale) {
                    ++count;
                    continue;
                }
                auto in_t = [&sol, x, y](double tt) { return sol.value(tt, x, y); };
                auto in_x = [&sol, t, y](double xx) { return sol.value(t, xx, y); };
                auto in_y = [&sol, t, x](double yy) { return sol.value(t, x, yy); };

                double rt = detail::local_rate(in_t, t, g.eval_t_min, g.eval_t_max);
                double rx = detail::local_rate(in_x, x, -1e300, 1e300);
                double ry = detail::local_rate(in_y, y, -1e300, 1e300);
                double ht =
                    detail::adaptive_step(rt, t - g.eval_t_min, g.eval_t_max - t);
                double hx = detail::adaptive_step(rx, 1e300, 1e300);
                double hy = detail::adaptive_step(ry, 1e300, 1e300);
                double tol = 5e-9 * rep.scale;

                auto psi_t = detail::refined_d1(in_t, t, ht, tol);
                auto lap = detail::refined_d2(in_x, x, hx, tol) +
                           detail::refined_d2(in_y, y, hy, tol);

                double a = cf.a.value(t), b = cf.b.value(t), h = cf.h.value(t);
                double mod2s = std::pow(std::abs(psi), 2.0 * sol.s);
                auto R = I * psi_t + a * lap - b * (x * x + y * y) * psi -
                         h * mod2s * psi;
                double r = std::abs(R) / rep.scale;
                sum_sq += r * r;
                ++count;
                if (r > rep.max_abs) {
                    rep.max_abs = r;
                    rep.worst_t = t;
                    rep.worst_x = x;
                    rep.worst_y = y;
                }
            }
        }
    }
    rep.rms = count ? std::sqrt(sum_sq / count) : 0.0;
    rep.passed = rep.max_abs <= threshold;
    return rep;
}

// -- phase-system residuals ---------------------------------------------------

struct SystemResidualReport {
    double max_abs = 0.0;
    std::string worst_equation;
    double worst_t = 0.0;
    int skipped = 0;  // sample points too close to a pole of alpha
    bool passed = false;
};

namespace detail {

inline void track(SystemResidualReport& rep, double r, const char* eq, double t) {
    if (r > rep.max_abs) {
        rep.max_abs = r;
        rep.worst_equation = eq;
        rep.worst_t = t;
    }
}

// Pole clearance: a denominator v with local slope dv has its nearest zero at
// distance ~ |v|/|dv|; finite differencing near that pole amplifies the
// truncation error like h^6/d^8, so demand the zero be at least ~0.2 away (in
// t).  The +1 keeps the test meaningful where both v and dv are small (flat
// near-zero stretch).
inline bool pole_clear(double v, double dv) {
    return std::abs(v) > 0.2 * (std::abs(dv) + 1.0);
}

}  // namespace detail

inline SystemResidualReport system_residual_riccati(const RiccatiSolution& sol,
                                                    double t_lo, double t_hi,
                                                    int samples = 200,
                                                    double threshold = 1e-7,
                                                    double fd_h = 1e-3) {
    SystemResidualReport rep;
    const auto& cf = sol.coefficients();
    const auto& basis = sol.kernel().basis();
    // the kernel quadrature route (delta/eps/kappa) also divides by mu_0 and
    // mu_0', but only contributes when f or g is present
    const bool kernel_active =
        !(cf.f.is_identically_zero() && cf.g.is_identically_zero());
    for (int i = 0; i <= samples; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / samples;
        // skip sample points whose stencil straddles (or nears) a pole
        bool clear = true;
        for (int k = -3; k <= 3 && clear; ++k) {
            double tk = t + k * fd_h;
            clear = detail::pole_clear(sol.mu_reg(tk), sol.dmu_reg(tk));
            if (clear && kernel_active) {
                double m0 = basis.mu0(tk), dm0 = basis.dmu0(tk);
                double ddm0 = characteristic_tau(cf, tk) * dm0 -
                              4.0 * characteristic_sigma(cf, tk) * m0;
                clear = detail::pole_clear(m0, dm0) && detail::pole_clear(dm0, ddm0);
            }
        }
        if (!clear) {
            ++rep.skipped;
            continue;
        }
        double a = cf.a.value(t), b = cf.b.value(t), c = cf.c.value(t);
        double f = cf.f.value(t), g = cf.g.value(t);
        double al = sol.alpha(t), be = sol.beta(t), de = sol.delta(t);
        double ep_d = fd_d1_6([&sol](double z) { return sol.eps(z); }, t, fd_h);
        double al_d = fd_d1_6([&sol](double z) { return sol.alpha(z); }, t, fd_h);
        double be_d = fd_d1_6([&sol](double z) { return sol.beta(z); }, t, fd_h);
        double ga_d = fd_d1_6([&sol](double z) { return sol.gamma(z); }, t, fd_h);
        double de_d = fd_d1_6([&sol](double z) { return sol.delta(z); }, t, fd_h);
        double ka_d =
            fd_d1_6([&sol](double z) { return sol.kappa_linear(z); }, t, fd_h);

        detail::track(rep, std::abs(al_d + b + 2.0 * c * al + 4.0 * a * al * al),
                      "alpha", t);
        detail::track(rep, std::abs(be_d + (c + 4.0 * a * al) * be), "beta", t);
        detail::track(rep, std::abs(ga_d + cf.l0 * a * be * be), "gamma", t);
        detail::track(rep,
                      std::abs(de_d + (c + 4.0 * a * al) * de - f - 2.0 * al * g),
                      "delta", t);
        detail::track(rep, std::abs(ep_d - (g - 2.0 * a * de) * be), "eps", t);
        detail::track(rep, std::abs(ka_d - g * de + a * de * de), "kappa", t);
    }
    rep.passed = rep.max_abs <= threshold;
    return rep;
}

inline SystemResidualReport system_residual_ermakov(const ErmakovSolution& sol,
                                                    double t_lo, double t_hi,
                                                    int samples = 200,
                                                    double threshold = 1e-7,
                                                    double fd_h = 1e-3) {
    SystemResidualReport rep;
    const auto& cf = sol.coefficients();
    double c0 = sol.c0();
    for (int i = 0; i <= samples; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / samples;
        bool clear = true;
        for (int k = -3; k <= 3; ++k)
            if (std::abs(sol.q(t + k * fd_h)) < 2.5e-3) clear = false;
        if (!clear) {
            ++rep.skipped;
            continue;
        }
        double a = cf.a.value(t), b = cf.b.value(t), c = cf.c.value(t);
        double f = cf.f.value(t), g = cf.g.value(t);
        double al = sol.alpha(t), be = sol.beta(t), de = sol.delta(t);
        double ep = sol.eps(t);
        double al_d = fd_d1_6([&sol](double z) { return sol.alpha(z); }, t, fd_h);
        double be_d = fd_d1_6([&sol](double z) { return sol.beta(z); }, t, fd_h);
        double ga_d = fd_d1_6([&sol](double z) { return sol.gamma(z); }, t, fd_h);
        double de_d = fd_d1_6([&sol](double z) { return sol.delta(z); }, t, fd_h);
        double ep_d = fd_d1_6([&sol](double z) { return sol.eps(z); }, t, fd_h);
        double ka_d = fd_d1_6([&sol](double z) { return sol.kappa(z); }, t, fd_h);

        double b2 = be * be;
        detail::track(rep,
                      std::abs(al_d + b + 2.0 * c * al + 4.0 * a * al * al -
                               c0 * a * b2 * b2),
                      "alpha", t);
        detail::track(rep, std::abs(be_d + (c + 4.0 * a * al) * be), "beta", t);
        detail::track(rep, std::abs(ga_d + a * b2), "gamma", t);
        detail::track(rep,
                      std::abs(de_d + (c + 4.0 * a * al) * de - f - 2.0 * al * g -
                               2.0 * c0 * a * b2 * be * ep),
                      "delta", t);
        detail::track(rep, std::abs(ep_d - (g - 2.0 * a * de) * be), "eps", t);
        detail::track(rep,
                      std::abs(ka_d - g * de + a * de * de - c0 * a * b2 * ep * ep),
                      "kappa", t);
    }
    rep.passed = rep.max_abs <= threshold;
    return rep;
}

// -- autonomous seed equation ---------------------------------------------------

// i chi_tau - l0 chi_xixi + l0 lambda |chi|^{2s} chi = 0 on a (tau, xi) grid
inline ResidualReport seed_residual(const Seed& seed, double tau_lo, double tau_hi,
                                    double xi_lo, double xi_hi, int n = 41,
                                    double fd_h = 1e-3, double threshold = 1e-6) {
    ResidualReport rep;
    rep.threshold = threshold;
    rep.scale = 1.0;
    const std::complex<double> I(0.0, 1.0);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < n; ++i) {
        double tau = tau_lo + (tau_hi - tau_lo) * i / std::max(1, n - 1);
        for (int j = 0; j < n; ++j) {
            double xi = xi_lo + (xi_hi - xi_lo) * j / std::max(1, n - 1);
            auto chi = seed.chi(xi, tau);
            auto chi_tau = fd_d1_8(
                [&seed, xi](double z) { return seed.chi(xi, z); }, tau, fd_h);
            auto chi_xx = fd_d2_8(
                [&seed, tau](double z) { return seed.chi(z, tau); }, xi, fd_h);
            double mod2s = std::pow(std::abs(chi), 2.0 * seed.s);
            auto R = I * chi_tau - double(seed.l0) * chi_xx +
                     double(seed.l0) * seed.lambda * mod2s * chi;
            double r = std::abs(R);
            sum_sq += r * r;
            ++count;
            if (r > rep.max_abs) {
                rep.max_abs = r;
                rep.worst_t = tau;
                rep.worst_x = xi;
            }
        }
    }
    rep.rms = count ? std::sqrt(sum_sq / count) : 0.0;
    rep.passed = rep.max_abs <= threshold;
    return rep;
}

// -- mass transport law ---------------------------------------------------------

struct MassLawReport {
    double max_rel_error = 0.0;
    double worst_t = 0.0;
    bool passed = false;
};

// ||psi(t)||_2^2 * w(t) should be conserved, w = exp(-int (c - 2d)).
inline MassLawReport mass_law_check(const ExactSolution1D& sol,
                                    const CharacteristicBasis& basis, double t_lo,
                                    double t_hi, int nt = 40, double x_lo = -30.0,
                                    double x_hi = 30.0, int nx = 4001,
                                    double threshold = 1e-6) {
    MassLawReport rep;
    auto mass = [&](double t) {
        // composite Simpson (nx odd)
        int m = nx % 2 == 0 ? nx + 1 : nx;
        double hh = (x_hi - x_lo) / (m - 1);
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            double x = x_lo + j * hh;
            double v = std::norm(sol.value(t, x));
            double wgt = (j == 0 || j == m - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            s += wgt * v;
        }
        return s * hh / 3.0;
    };
    double ref = mass(t_lo) * basis.w(t_lo);
    for (int i = 0; i <= nt; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / nt;
        double val = mass(t) * basis.w(t);
        double rel = std::abs(val - ref) / std::abs(ref);
        if (rel > rep.max_rel_error) {
            rep.max_rel_error = rel;
            rep.worst_t = t;
        }
    }
    rep.passed = rep.max_rel_error <= threshold;
    return rep;
}

}  // namespace vcnls
