#pragma once

// Finite-time blow-up prediction: the solution amplitude carries the factor
// mu(t)^{-1/2} (1D) or mu(t)^{-1} (2D), so blow-up happens at the first
// positive root of mu_reg(t) = mu(t)/mu(0) = 2 mu_0(t) (alpha(0) + gamma_0(t)).

#include <optional>

#include "riccati.hpp"

namespace vcnls {

struct BlowupReport {
    bool blows_up = false;
    double t_star = 0.0;         // first positive root of mu_reg
    double slope_at_root = 0.0;  // mu_reg'(T*)
    double scan_limit = 0.0;     // end of the searched window
};

namespace detail {

template <class Fn>
double refine_root(const Fn& f, double ta, double tb, double fa) {
    // plain bisection to machine-level relative accuracy
    for (int i = 0; i < 200; ++i) {
        double tm = 0.5 * (ta + tb);
        if (tm == ta || tm == tb) break;
        double fm = f(tm);
        if (fm == 0.0) return tm;
        if ((fa < 0.0) == (fm < 0.0)) {
            ta = tm;
            fa = fm;
        } else {
            tb = tm;
        }
    }
    return 0.5 * (ta + tb);
}

}  // namespace detail

inline BlowupReport predict_blowup(const RiccatiSolution& sol,
                                   std::optional<double> t_limit = std::nullopt) {
    BlowupReport rep;
    const auto& basis = sol.kernel().basis();
    rep.scan_limit = t_limit.value_or(basis.t_max());
    auto f = [&sol](double t) { return sol.mu_reg(t); };

    // scan on the integrator's own nodes, subdivided a little for safety
    auto nodes = basis.dense().nodes();
    double prev_t = 0.0, prev_f = f(0.0);  // mu_reg(0) = 1
    for (double tn : nodes) {
        if (tn <= 0.0) continue;
        if (tn > rep.scan_limit) tn = rep.scan_limit;
        for (int j = 1; j <= 4; ++j) {
            double t = prev_t + (tn - prev_t) * j / 4.0;
            double ft = f(t);
            if ((prev_f < 0.0) != (ft < 0.0) || ft == 0.0) {
                rep.blows_up = true;
                rep.t_star = ft == 0.0 ? t : detail::refine_root(f, prev_t, t, prev_f);
                rep.slope_at_root = sol.dmu_reg(rep.t_star);
                return rep;
            }
            prev_t = t;
            prev_f = ft;
        }
        if (tn >= rep.scan_limit) break;
    }
    return rep;
}

// gamma_0^{-1}(-alpha(0)): independent location of the same root through the
// kernel gamma_0, usable as a cross-check away from the zeros of mu_0
inline std::optional<double> blowup_from_gamma0(const RiccatiSolution& sol,
                                                double t_lo, double t_hi) {
    const auto& k = sol.kernel();
    double target = -sol.initial().alpha;
    auto f = [&k, target](double t) { return k.gamma0(t) - target; };
    double fa = f(t_lo);
    const int n = 512;
    for (int i = 1; i <= n; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / n;
        double ft = f(t);
        if ((fa < 0.0) != (ft < 0.0))
            return detail::refine_root(f, t_lo + (t_hi - t_lo) * (i - 1) / n, t, fa);
        fa = ft;
    }
    return std::nullopt;
}

// sup-norm envelope |psi(t)|_inf ~ A0 / mu_reg(t)^{dim/2}
inline double amplitude_envelope(const RiccatiSolution& sol, double t, int dimension,
                                 double amplitude_at_zero = 1.0) {
    return amplitude_at_zero / std::pow(std::abs(sol.mu_reg(t)), dimension / 2.0);
}

}  // namespace vcnls
