#pragma once

// Seed profiles on the transformed plane: solutions chi(xi, tau) of
//   i chi_tau - l0 chi_xixi + l0 lambda |chi|^{2s} chi = 0,
// plus the special functions they need (Jacobi elliptic, Dawson, elliptic K)
// and the stationary profiles F of  F'' = -xi0 F + h0 F^3  used by the
// soliton-family construction.

#include <complex>
#include <functional>
#include <memory>

#include "ode.hpp"

namespace vcnls {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

// complete elliptic integral K(k) (modulus k) by the arithmetic-geometric mean
inline double elliptic_K(double k) {
    if (k < 0.0 || k >= 1.0)
        throw std::domain_error("elliptic_K: modulus must lie in [0,1)");
    double a = 1.0, b = std::sqrt(1.0 - k * k);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 1.5707963267948966 / a;
}

struct JacobiElliptic {
    double sn, cn, dn;
};

// Jacobi elliptic functions of modulus k via the descending AGM recursion
inline JacobiElliptic jacobi_elliptic(double u, double k) {
    if (k < 0.0 || k > 1.0)
        throw std::domain_error("jacobi_elliptic: modulus must lie in [0,1]");
    if (k < 1e-10) {
        double corr = 0.25 * k * k * (u - std::sin(u) * std::cos(u));
        double phi = u - corr;  // first-order descending step
        return {std::sin(phi), std::cos(phi), std::sqrt(1.0 - k * k * std::pow(std::sin(phi), 2))};
    }
    if (1.0 - k < 1e-12) {
        double s = std::tanh(u);
        double c = 1.0 / std::cosh(u);
        return {s, c, c};
    }
    double a[64], c[64];
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt(1.0 - k * k);
    int n = 0;
    while (n < 62 && std::abs(c[n]) > 1e-16 * a[n]) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double phi = std::ldexp(a[n] * u, n);
    for (int i = n; i > 0; --i)
        phi = 0.5 * (phi + std::asin(std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0)));
    double sn = std::sin(phi), cn = std::cos(phi);
    return {sn, cn, std::sqrt(std::max(0.0, 1.0 - k * k * sn * sn))};
}

// Dawson function D(x) = e^{-x^2} integral(0..x) e^{z^2} dz via its ODE
// D' = 1 - 2 x D, D(0) = 0.  Direct integration to the requested point;
// used to build the tabulated fast path below and as an independent check.
inline double dawson_by_ode(double x) {
    if (x == 0.0) return 0.0;
    OdeRhs<double> rhs = [](double t, const std::vector<double>& y,
                            std::vector<double>& dy) {
        dy.resize(1);
        dy[0] = 1.0 - 2.0 * t * y[0];
    };
    OdeOptions opts;
    opts.rtol = 1e-14;
    opts.atol = 1e-16;
    opts.max_step = 0.05;
    double val = 0.0;
    integrate_dense<double>(
        rhs, {0.0}, 0.0, x, opts,
        [&val](double, const std::vector<double>& y) {
            val = y[0];
            return true;
        },
        false);
    return val;
}

namespace detail {

// equidistant table of D on [0, x_table_max] filled once from the ODE;
// between nodes a two-point quintic Hermite suffices because D', D'' follow
// exactly from D via the defining ODE
inline constexpr double dawson_table_h = 0.002;
inline constexpr double dawson_table_max = 6.0;

inline const std::vector<double>& dawson_table() {
    static const std::vector<double> table = [] {
        const int n = int(dawson_table_max / dawson_table_h + 0.5);
        std::vector<double> v(n + 1, 0.0);
        OdeRhs<double> rhs = [](double t, const std::vector<double>& y,
                                std::vector<double>& dy) {
            dy.resize(1);
            dy[0] = 1.0 - 2.0 * t * y[0];
        };
        OdeOptions opts;
        opts.rtol = 1e-14;
        opts.atol = 1e-16;
        opts.max_step = 0.05;
        auto sol = integrate_dense<double>(rhs, {0.0}, 0.0, dawson_table_max, opts);
        for (int j = 0; j <= n; ++j)
            v[j] = sol.eval_component(j * dawson_table_h, 0);
        return v;
    }();
    return table;
}

}  // namespace detail

inline double dawson(double x) {
    double ax = std::abs(x);
    double sgn = x < 0.0 ? -1.0 : 1.0;  // D is odd
    if (ax >= detail::dawson_table_max) {
        // asymptotic series D ~ 1/(2x) sum (2k-1)!!/(2x^2)^k
        double inv2x2 = 1.0 / (2.0 * ax * ax);
        double term = 1.0, sum = 1.0;
        for (int k = 1; k <= 10; ++k) {
            term *= (2.0 * k - 1.0) * inv2x2;
            sum += term;
        }
        return sgn * sum / (2.0 * ax);
    }
    const auto& tab = detail::dawson_table();
    const double h = detail::dawson_table_h;
    int j = std::min(int(ax / h), int(tab.size()) - 2);
    double x0 = j * h, x1 = x0 + h;
    double f0 = tab[j], f1 = tab[j + 1];
    double d0 = 1.0 - 2.0 * x0 * f0, d1 = 1.0 - 2.0 * x1 * f1;
    double s0 = -2.0 * f0 - 2.0 * x0 * d0, s1 = -2.0 * f1 - 2.0 * x1 * d1;
    // quintic Hermite in u = (x-x0)/h with exact endpoint derivatives
    double u = (ax - x0) / h, u2 = u * u, u3 = u2 * u;
    double um = 1.0 - u, um2 = um * um, um3 = um2 * um;
    double H0 = um3 * (1.0 + 3.0 * u + 6.0 * u2);
    double H1 = um3 * u * (1.0 + 3.0 * u);
    double H2 = 0.5 * um3 * u2;
    double K0 = u3 * (1.0 + 3.0 * um + 6.0 * um2);
    double K1 = -u3 * um * (1.0 + 3.0 * um);
    double K2 = 0.5 * u3 * um2;
    double val = f0 * H0 + h * d0 * H1 + h * h * s0 * H2 + f1 * K0 +
                 h * d1 * K1 + h * h * s1 * K2;
    return sgn * val;
}

// ---------------------------------------------------------------------------
// Stationary profiles F'' = -xi0 F + h0 F^3
// ---------------------------------------------------------------------------

// cn branch (h0 < 0): closed form through Jacobi cn; C0 = 0 gives the bright
// sech profile
inline std::function<double(double)> elliptic_profile_cn(double xi0, double h0,
                                                         double C0) {
    if (h0 >= 0.0) throw std::domain_error("cn profile requires h0 < 0");
    double disc = xi0 * xi0 - 2.0 * C0 * h0;
    if (disc <= 0.0) throw std::domain_error("cn profile: negative discriminant");
    double rt = std::sqrt(disc);
    double amp = std::sqrt((-xi0 + rt) / (-h0));
    double arg = std::pow(disc, 0.25);
    double k = std::sqrt((-xi0 + rt) / (2.0 * rt));
    return [amp, arg, k](double z) { return amp * jacobi_elliptic(arg * z, k).cn; };
}

// sn branch (xi0 > 0, h0 > 0): odd profile through F(0)=0, F'(0)=sqrt(C0),
// from the first integral (F')^2 = -xi0 F^2 + (h0/2) F^4 + C0; solved
// numerically with dense output.  C0 = xi0^2/(2 h0) gives the tanh profile.
class SnProfile {
public:
    SnProfile(double xi0, double h0, double C0, double z_max = 64.0) {
        if (C0 <= 0.0) throw std::domain_error("sn profile requires C0 > 0");
        OdeRhs<double> rhs = [xi0, h0](double, const std::vector<double>& y,
                                       std::vector<double>& dy) {
            dy.resize(2);
            dy[0] = y[1];
            dy[1] = -xi0 * y[0] + h0 * y[0] * y[0] * y[0];
        };
        OdeOptions opts;
        opts.rtol = 1e-13;
        opts.atol = 1e-13;
        dense_ = integrate_dense<double>(rhs, {0.0, std::sqrt(C0)}, 0.0, z_max, opts);
        z_max_ = z_max;
    }
    double operator()(double z) const {
        double s = z < 0.0 ? -1.0 : 1.0;  // the profile is odd
        double az = std::min(std::abs(z), z_max_);
        return s * dense_.eval_component(az, 0);
    }

private:
    DenseSolution<double> dense_;
    double z_max_ = 0.0;
};

inline std::function<double(double)> elliptic_profile(double xi0, double h0,
                                                      double C0) {
    if (h0 < 0.0) return elliptic_profile_cn(xi0, h0, C0);
    if (C0 == xi0 * xi0 / (2.0 * h0)) {
        double amp = std::sqrt(xi0 / h0), arg = std::sqrt(xi0 / 2.0);
        return [amp, arg](double z) { return amp * std::tanh(arg * z); };
    }
    auto p = std::make_shared<SnProfile>(xi0, h0, C0);
    return [p](double z) { return (*p)(z); };
}

// ---------------------------------------------------------------------------
// Radial ground state Q'' + (n-1)/rho Q' - Q + Q^p = 0, Q'(0) = 0, Q(inf) = 0
// ---------------------------------------------------------------------------
class RadialGroundState {
public:
    RadialGroundState(int n, double p, double rho_max = 14.0) : rho_max_(rho_max) {
        OdeRhs<double> rhs = [n, p](double rho, const std::vector<double>& y,
                                    std::vector<double>& dy) {
            dy.resize(2);
            dy[0] = y[1];
            dy[1] = -(n - 1) / rho * y[1] + y[0] - std::pow(std::abs(y[0]), p - 1.0) * y[0];
        };
        OdeOptions opts;
        opts.rtol = 1e-13;
        opts.atol = 1e-15;
        const double rho0 = 1e-6;
        // overshoot (+1): Q crosses zero, the start value is too large;
        // undershoot (-1): Q turns back upward while still positive, too small
        auto shoot = [&](double q0, DenseSolution<double>* keep) {
            // series start: Q ~ q0 + (q0 - q0^p) rho^2 / (2n)
            double c2 = (q0 - std::pow(q0, p)) / (2.0 * n);
            std::vector<double> y = {q0 + c2 * rho0 * rho0, 2.0 * c2 * rho0};
            int verdict = 0;
            auto obs = [&](double, const std::vector<double>& yy) {
                if (yy[0] < 0.0) {
                    verdict = +1;
                    return false;
                }
                if (yy[1] > 0.0 && yy[0] < 0.7 * q0) {
                    verdict = -1;
                    return false;
                }
                return true;
            };
            auto sol = integrate_dense<double>(rhs, y, rho0, rho_max_, opts, obs,
                                               keep != nullptr);
            if (keep) *keep = std::move(sol);
            return verdict;
        };
        double lo = 1.5, hi = 4.0;
        // establish the bracket
        while (shoot(lo, nullptr) == +1) lo *= 0.7;
        while (shoot(hi, nullptr) == -1) hi *= 1.4;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
            double mid = 0.5 * (lo + hi);
            (shoot(mid, nullptr) == +1 ? hi : lo) = mid;
        }
        q0_ = 0.5 * (lo + hi);
        shoot(q0_, &dense_);
        tail_end_ = dense_.t_end();  // where the final shot stopped
        tail_value_ = dense_.eval_component(tail_end_, 0);
    }

    double value_at_origin() const { return q0_; }

    double operator()(double rho) const {
        rho = std::abs(rho);
        if (rho < 1e-6) return q0_;
        if (rho >= tail_end_)  // exponential tail Q ~ C e^{-rho}
            return tail_value_ * std::exp(tail_end_ - rho);
        return dense_.eval_component(rho, 0);
    }

private:
    DenseSolution<double> dense_;
    double q0_ = 0.0, rho_max_, tail_end_ = 0.0, tail_value_ = 0.0;
};

// ---------------------------------------------------------------------------
// Seeds
// ---------------------------------------------------------------------------
struct Seed {
    std::string kind;
    int l0 = 1;          // the target equation i u_tau - l0 u_xixi + l0 lambda |u|^{2s} u = 0
    double lambda = 0.0; // nonlinearity strength the profile requires
    double s = 1.0;
    std::function<std::complex<double>(double xi, double tau)> chi;
};

inline Seed make_bright_seed(double v) {
    Seed sd;
    sd.kind = "bright";
    sd.l0 = 1;
    sd.lambda = -2.0;
    double rv = std::sqrt(v);
    sd.chi = [v, rv](double xi, double tau) {
        return std::polar(rv / std::cosh(rv * xi), -v * tau);
    };
    return sd;
}

inline Seed make_dark_seed(double A) {
    Seed sd;
    sd.kind = "dark";
    sd.l0 = -1;
    sd.lambda = 2.0;
    sd.chi = [A](double xi, double tau) {
        return std::polar(1.0, -2.0 * A * A * tau) * (A * std::tanh(A * xi));
    };
    return sd;
}

// sqrt(-2v/3) sech(sqrt(-v) xi) e^{-i v tau}, v < 0, for i u_t + u_xx + 3|u|^2 u = 0
inline Seed make_sech_cubed_seed(double v) {
    Seed sd;
    sd.kind = "sech_cubed";
    sd.l0 = -1;
    sd.lambda = -3.0;
    double amp = std::sqrt(-2.0 * v / 3.0), rv = std::sqrt(-v);
    sd.chi = [amp, rv, v](double xi, double tau) {
        return std::polar(amp / std::cosh(rv * xi), -v * tau);
    };
    return sd;
}

// Peregrine soliton of i u_t + u_xx + 2|u|^2 u = 0, optionally rescaled in
// amplitude; scaling by sigma turns the required lambda into -2/sigma^2.
inline Seed make_peregrine_seed(double A, double scale = 1.0) {
    Seed sd;
    sd.kind = "peregrine";
    sd.l0 = -1;
    sd.lambda = -2.0 / (scale * scale);
    sd.chi = [A, scale](double xi, double tau) {
        std::complex<double> i(0.0, 1.0);
        double A2 = A * A;
        std::complex<double> num =
            3.0 + 16.0 * i * A2 * tau - 16.0 * A2 * A2 * tau * tau - 4.0 * A2 * xi * xi;
        double den = 1.0 + 16.0 * A2 * A2 * tau * tau + 4.0 * A2 * xi * xi;
        return scale * A * std::exp(2.0 * i * A2 * tau) * num / den;
    };
    return sd;
}

// ground state e^{i tau} R(xi), R = (s+1)^{1/2s} cosh^{-1/s}(s xi),
// for i u_tau + u_xixi + |u|^{2s} u = 0
inline Seed make_ground_state_1d_seed(double s) {
    Seed sd;
    sd.kind = "ground_state_1d";
    sd.l0 = -1;
    sd.lambda = -1.0;
    sd.s = s;
    double amp = std::pow(s + 1.0, 1.0 / (2.0 * s));
    sd.chi = [amp, s](double xi, double tau) {
        return std::polar(amp * std::pow(1.0 / std::cosh(s * xi), 1.0 / s), tau);
    };
    return sd;
}

// travelling-phase elliptic wave F(xi) e^{i l0 xi0 tau} for
// i u_tau - l0 u_xixi + l0 h0 |u|^2 u = 0
inline Seed make_elliptic_wave_seed(int l0, double xi0, double h0, double C0) {
    Seed sd;
    sd.kind = h0 < 0.0 ? "cn_wave" : "sn_wave";
    sd.l0 = l0;
    sd.lambda = h0;
    auto F = elliptic_profile(xi0, h0, C0);
    double omega = l0 * xi0;
    sd.chi = [F, omega](double xi, double tau) {
        return std::polar(1.0, omega * tau) * F(xi);
    };
    return sd;
}

}  // namespace vcnls
