#pragma once

// Direct numerical simulation of
//   i psi_t = -a psi_xx + (b x^2 - f x + G) psi - i c x psi_x - i d psi
//             + i g psi_x + h |psi|^{2s} psi
// on a periodic grid, used to cross-check the constructed solutions:
//   * simulate_mol: method of lines, 4th-order centered differences in space,
//     adaptive 5th-order Runge-Kutta in time (handles every coefficient).
//   * simulate_split_step: Strang splitting with an FFT kinetic step; only for
//     c = g = 0, but robust near blow-up where the phase rotates fast.
// Both support an amplitude-growth stop condition for blow-up runs.

#include <complex>

#include "coeffs.hpp"
#include "ode.hpp"
#include "transforms.hpp"

namespace vcnls {

using cplx = std::complex<double>;

struct SimGrid {
    double x_min = -15.0, x_max = 15.0;
    int n = 512;  // number of cells; grid points x_j = x_min + j dx, j < n
    double dx() const { return (x_max - x_min) / n; }
    double x(int j) const { return x_min + j * dx(); }
};

struct SimFrame {
    double t = 0.0;
    std::vector<cplx> psi;
};

struct StopCondition {
    // stop when sup|psi| >= amplitude_factor * sup|psi(0)| (0 disables)
    double amplitude_factor = 0.0;
};

struct SimResult {
    SimGrid grid;
    std::vector<SimFrame> frames;
    bool stopped_early = false;
    double t_stop = 0.0;
    std::string stop_reason;
    std::size_t steps = 0;
};

inline double sup_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double mass(const std::vector<cplx>& v, double dx) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s * dx;
}

inline double l2_error(const std::vector<cplx>& v, const ExactSolution1D& exact,
                       double t, const SimGrid& g) {
    double s = 0.0;
    for (int j = 0; j < g.n; ++j) s += std::norm(v[j] - exact.value(t, g.x(j)));
    return std::sqrt(s * g.dx());
}

inline std::vector<cplx> sample_initial(const ExactSolution1D& exact, double t,
                                        const SimGrid& g) {
    std::vector<cplx> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = exact.value(t, g.x(j));
    return v;
}

// -- method of lines ------------------------------------------------------------

// Boundary treatment: periodic wrap by default; when `boundary` is supplied
// the stencil's outside neighbors take its values instead (Dirichlet data,
// e.g. the exact solution for non-decaying dark-soliton backgrounds).
inline SimResult simulate_mol(
    const CoefficientSet& cf, const SimGrid& grid, std::vector<cplx> psi0, double t0,
    const std::vector<double>& snapshot_times, StopCondition stop = {},
    OdeOptions opts = {}, std::function<cplx(double t, double x)> boundary = nullptr) {
    SimResult res;
    res.grid = grid;
    const int n = grid.n;
    const double dx = grid.dx();
    const double inv12dx = 1.0 / (12.0 * dx);
    const double inv12dx2 = 1.0 / (12.0 * dx * dx);
    const cplx I(0.0, 1.0);
    const double s = cf.s;

    OdeRhs<cplx> rhs = [&](double t, const std::vector<cplx>& y,
                           std::vector<cplx>& dy) {
        dy.resize(n);
        double a = cf.a.value(t), b = cf.b.value(t), c = cf.c.value(t);
        double d = cf.d.value(t), f = cf.f.value(t), g = cf.g.value(t);
        double h = cf.h.value(t), G = cf.G.value(t);
        auto at = [&](int j) -> cplx {
            if (j >= 0 && j < n) return y[j];
            if (boundary) return boundary(t, grid.x(j));
            return y[(j % n + n) % n];
        };
        for (int j = 0; j < n; ++j) {
            cplx ym2 = at(j - 2), ym1 = at(j - 1), yp1 = at(j + 1), yp2 = at(j + 2);
            cplx ux = (8.0 * (yp1 - ym1) - (yp2 - ym2)) * inv12dx;
            cplx uxx = (-yp2 + 16.0 * yp1 - 30.0 * y[j] + 16.0 * ym1 - ym2) *
                       inv12dx2;
            double x = grid.x(j);
            double V = b * x * x - f * x + G + h * std::pow(std::abs(y[j]), 2.0 * s);
            // psi_t = i a psi_xx - i V psi - (c x - g) psi_x - d psi
            dy[j] = I * (a * uxx - V * y[j]) - (c * x - g) * ux - d * y[j];
        }
    };

    double amp0 = sup_abs(psi0);
    res.frames.push_back({t0, psi0});
    std::vector<cplx> y = std::move(psi0);
    double t = t0;
    for (double t_next : snapshot_times) {
        if (res.stopped_early) break;
        if (t_next == t) continue;  // snapshots may run in either time direction
        std::vector<cplx> y_last = y;
        double t_last = t;
        auto obs = [&](double tt, const std::vector<cplx>& yy) {
            y_last = yy;
            t_last = tt;
            ++res.steps;
            double amp = sup_abs(yy);
            if (!std::isfinite(amp)) {
                res.stopped_early = true;
                res.stop_reason = "non-finite state";
                return false;
            }
            if (stop.amplitude_factor > 0.0 && amp >= stop.amplitude_factor * amp0) {
                res.stopped_early = true;
                res.stop_reason = "amplitude threshold";
                return false;
            }
            return true;
        };
        integrate_dense<cplx>(rhs, y, t, t_next, opts, obs, false);
        y = y_last;
        t = res.stopped_early ? t_last : t_next;
        res.frames.push_back({t, y});
    }
    res.t_stop = t;
    return res;
}

// -- split-step Strang ------------------------------------------------------------

namespace detail {

// in-place radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse (unscaled)
inline void fft_radix2(std::vector<cplx>& v, int sign) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {  // bit reversal
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * 3.14159265358979323846 / double(len);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = v[i + k];
                cplx t = w * v[i + k + len / 2];
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

struct SplitStepOptions {
    double dt = 1e-3;        // base time step
    double phase_cap = 0.05; // shrink dt so the nonlinear phase per step stays small
    std::size_t max_steps = 50'000'000;
};

inline SimResult simulate_split_step(const CoefficientSet& cf, const SimGrid& grid,
                                     std::vector<cplx> psi0, double t0,
                                     const std::vector<double>& snapshot_times,
                                     StopCondition stop = {},
                                     SplitStepOptions opts = {}) {
    if (!cf.c.is_identically_zero() || !cf.g.is_identically_zero())
        throw std::invalid_argument("simulate_split_step requires c = 0 and g = 0");
    SimResult res;
    res.grid = grid;
    const int n = grid.n;
    const double L = grid.x_max - grid.x_min;
    const double s = cf.s;
    const cplx I(0.0, 1.0);

    std::vector<double> k2(n);  // squared wavenumbers in FFT ordering
    for (int j = 0; j < n; ++j) {
        double k = 2.0 * 3.14159265358979323846 *
                   (j <= n / 2 ? j : j - n) / L;
        k2[j] = k * k;
    }

    auto half_potential = [&](std::vector<cplx>& y, double t, double dt) {
        double b = cf.b.value(t), f = cf.f.value(t), d = cf.d.value(t);
        double h = cf.h.value(t), G = cf.G.value(t);
        for (int j = 0; j < n; ++j) {
            double x = grid.x(j);
            double V = b * x * x - f * x + G + h * std::pow(std::abs(y[j]), 2.0 * s);
            y[j] *= std::exp(cplx(-d * dt, -V * dt));
        }
    };

    double amp0 = sup_abs(psi0);
    res.frames.push_back({t0, psi0});
    std::vector<cplx> y = std::move(psi0);
    double t = t0;
    for (double t_next : snapshot_times) {
        if (res.stopped_early) break;
        while (t < t_next) {
            double amp = sup_abs(y);
            if (!std::isfinite(amp)) {
                res.stopped_early = true;
                res.stop_reason = "non-finite state";
                break;
            }
            if (stop.amplitude_factor > 0.0 && amp >= stop.amplitude_factor * amp0) {
                res.stopped_early = true;
                res.stop_reason = "amplitude threshold";
                break;
            }
            // fastest diagonal phase: nonlinearity at the current amplitude
            double rate =
                std::abs(cf.h.value(t)) * std::pow(amp, 2.0 * s) + 1.0;
            double dt = std::min(opts.dt, opts.phase_cap / rate);
            dt = std::min(dt, t_next - t);
            if (dt <= 1e-14 || res.steps >= opts.max_steps) {
                res.stopped_early = true;
                res.stop_reason = "time step underflow";
                break;
            }
            half_potential(y, t + 0.25 * dt, 0.5 * dt);
            detail::fft_radix2(y, -1);
            double a = cf.a.value(t + 0.5 * dt);
            for (int j = 0; j < n; ++j) y[j] *= std::exp(-I * (a * k2[j] * dt));
            detail::fft_radix2(y, +1);
            for (auto& z : y) z /= double(n);
            half_potential(y, t + 0.75 * dt, 0.5 * dt);
            t += dt;
            ++res.steps;
        }
        res.frames.push_back({t, y});
    }
    res.t_stop = t;
    return res;
}

}  // namespace vcnls
