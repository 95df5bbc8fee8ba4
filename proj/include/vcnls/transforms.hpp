#pragma once

// Assembly of exact solutions: the generalized lens transform, the gauge-form
// transform, the Ermakov soliton ansatz, the 2D transform, the pseudoconformal
// blow-up seed, and the closed-form solutions used as independent references.

#include "blowup.hpp"
#include "ermakov.hpp"
#include "seeds.hpp"

namespace vcnls {

struct ExactSolution1D {
    std::string name;
    std::function<std::complex<double>(double t, double x)> value;
    double s = 1.0;  // nonlinearity power of the equation it solves
};

struct ExactSolution2D {
    std::string name;
    std::function<std::complex<double>(double t, double x, double y)> value;
    double s = 1.0;
};

class transform_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Lens transform: psi = mu^{-1/2} e^{i(alpha x^2 + delta x + kappa)}
//                        chi(beta x + eps, gamma)
// valid when h = lambda a beta^2 mu^s; a constant potential shift G only adds
// the phase -integral(G).
// ---------------------------------------------------------------------------
struct BalanceCheck {
    double max_mismatch = 0.0;  // sup |h - lambda a beta^2 mu^s| / scale
    bool ok(double tol = 1e-8) const { return max_mismatch <= tol; }
};

inline BalanceCheck check_lens_balance(const RiccatiSolution& sol, double lambda,
                                       double s, double t_lo, double t_hi,
                                       int samples = 400) {
    BalanceCheck bc;
    const auto& cf = sol.coefficients();
    for (int i = 0; i <= samples; ++i) {
        double t = t_lo + (t_hi - t_lo) * i / samples;
        double bt = sol.beta(t);
        double want = lambda * cf.a.value(t) * bt * bt * std::pow(sol.mu(t), s);
        double have = cf.h.value(t);
        double scale = std::max({1.0, std::abs(want), std::abs(have)});
        bc.max_mismatch = std::max(bc.max_mismatch, std::abs(have - want) / scale);
    }
    return bc;
}

inline ExactSolution1D lens_apply(std::shared_ptr<const RiccatiSolution> sol,
                                  const Seed& seed, double t_lo, double t_hi,
                                  std::shared_ptr<const NonlinearPhase> extra = nullptr,
                                  double balance_tol = 1e-8) {
    const CoefficientSet& cf = sol->coefficients();
    if (cf.l0 != seed.l0)
        throw transform_error("seed targets the wrong sign parameter");
    BalanceCheck bc = check_lens_balance(*sol, seed.lambda, seed.s, t_lo, t_hi);
    if (!bc.ok(balance_tol))
        throw transform_error("nonlinearity is not balanced: max mismatch " +
                              std::to_string(bc.max_mismatch));
    ExactSolution1D out;
    out.name = "lens(" + seed.kind + ")";
    out.s = seed.s;
    out.value = [sol, chi = seed.chi, extra](double t, double x) {
        double m = sol->mu(t);
        double S = sol->alpha(t) * x * x + sol->delta(t) * x + sol->kappa_linear(t);
        if (extra) S -= extra->value(t);  // phase of a G(t) potential shift
        std::complex<double> u = chi(sol->beta(t) * x + sol->eps(t), sol->gamma(t));
        return std::polar(1.0 / std::sqrt(std::abs(m)), S) * u;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Gauge transform: psi = mu^{-1/2} e^{i(alpha x^2 + delta x + kappa)} u(t, x)
// under a = -l0, with h = -l0 lambda mu.
// ---------------------------------------------------------------------------
inline ExactSolution1D gauge_apply(std::shared_ptr<const GaugeSolution> sol,
                                   const Seed& seed, double admissibility_tol = 1e-8,
                                   std::function<double(double)> kappa_override = nullptr) {
    if (!sol->diagnostics().admissible(admissibility_tol))
        throw transform_error("coefficients do not satisfy the gauge-form conditions");
    if (sol->coefficients().l0 != seed.l0)
        throw transform_error("seed targets the wrong sign parameter");
    if (std::abs(sol->lambda() - seed.lambda) >
        admissibility_tol * std::max(1.0, std::abs(seed.lambda)))
        throw transform_error("seed nonlinearity strength does not match h/mu");
    ExactSolution1D out;
    out.name = "gauge(" + seed.kind + ")";
    out.s = seed.s;
    out.value = [sol, chi = seed.chi, kap = std::move(kappa_override)](double t,
                                                                       double x) {
        double m = sol->mu(t);
        double kv = kap ? kap(t) : sol->kappa(t);
        double S = sol->alpha(t) * x * x + sol->delta(t) * x + kv;
        return std::polar(1.0 / std::sqrt(std::abs(m)), S) * chi(x, t);
    };
    return out;
}

// ---------------------------------------------------------------------------
// Ermakov soliton ansatz (y is a free parameter):
//   psi_y = F(beta x + 2 gamma y + eps) / sqrt(mu)
//           * e^{i(alpha x^2 + beta x y + gamma y^2 + delta x + eps y + kappa + xi)}
// with xi = xi0 (gamma - gamma(0)), valid for the balanced coefficients.
// ---------------------------------------------------------------------------
inline ExactSolution1D soliton_assemble(std::shared_ptr<const ErmakovSolution> sol,
                                        std::function<double(double)> F, double xi0,
                                        double y) {
    ExactSolution1D out;
    out.name = "ermakov_soliton";
    double gamma0 = sol->gamma(0.0);
    out.value = [sol, F = std::move(F), xi0, y, gamma0](double t, double x) {
        double g = sol->gamma(t);
        double b = sol->beta(t);
        double e = sol->eps(t);
        double S = sol->alpha(t) * x * x + b * x * y + g * y * y + sol->delta(t) * x +
                   e * y + sol->kappa(t) + xi0 * (g - gamma0);
        double A = F(b * x + 2.0 * g * y + e) / std::sqrt(sol->mu(t));
        return std::polar(1.0, S) * A;
    };
    return out;
}

// ---------------------------------------------------------------------------
// 2D transform (radially symmetric initial data, delta_i(0) = eps_i(0) = 0):
//   psi = mu^{-1} e^{i(alpha (x^2+y^2) + 2 kappa)} chi(beta x, beta y, gamma)
// gamma obeys gamma' = -l0 a beta^2 with the sign l0 of the seed equation
// i chi_tau - l0 (chi_xixi + chi_etaeta) + l0 lambda |chi|^{2s} chi = 0, taken
// from the scenario's coefficients.
// ---------------------------------------------------------------------------
inline ExactSolution2D transform_2d(
    std::shared_ptr<const RiccatiSolution> sol,
    std::function<std::complex<double>(double xi, double eta, double tau)> chi,
    const std::string& label = "transform_2d") {
    ExactSolution2D out;
    out.name = label;
    out.value = [sol, chi = std::move(chi)](double t, double x, double y) {
        double m = sol->mu(t);
        double S = sol->alpha(t) * (x * x + y * y) + 2.0 * sol->kappa_linear(t);
        double b = sol->beta(t);
        return std::polar(1.0 / std::abs(m), S) * chi(b * x, b * y, sol->gamma(t));
    };
    return out;
}

// pseudoconformal image of the 2D standing wave e^{i tau} Q(rho):
//   chi(xi, eta, tau) = tau^{-1} Q(r/tau) e^{i r^2/(4 tau) - i/tau},  r^2 = xi^2+eta^2
// solves i chi_tau + (chi_xixi + chi_etaeta) + |chi|^2 chi = 0 and blows up as
// tau -> 0.
inline std::function<std::complex<double>(double, double, double)>
pseudoconformal_blowup(std::shared_ptr<const RadialGroundState> Q) {
    return [Q](double xi, double eta, double tau) {
        double r2 = xi * xi + eta * eta;
        double phase = r2 / (4.0 * tau) - 1.0 / tau;
        double sgn = tau < 0.0 ? -1.0 : 1.0;  // 1/tau prefactor keeps its sign
        return std::polar(sgn / std::abs(tau), phase) *
               (*Q)(std::sqrt(r2) / std::abs(tau));
    };
}

// Direct phase ansatz (y is a free parameter):
//   psi_y = mu^{-1/2} e^{i(alpha x^2 + beta x y + gamma y^2 + delta x + eps y +
//                          kappa)}
// where kappa carries the nonlinear source -integral(h/mu^s + G); |psi_y| is
// x-independent and equals 1/sqrt(mu), which is the blow-up mechanism.
inline ExactSolution1D plane_phase_solution(std::shared_ptr<const RiccatiSolution> sol,
                                            std::shared_ptr<const NonlinearPhase> nl,
                                            double y) {
    ExactSolution1D out;
    out.name = "plane_phase";
    out.value = [sol, nl, y](double t, double x) {
        double m = sol->mu(t);
        double S = sol->alpha(t) * x * x + sol->beta(t) * x * y +
                   sol->gamma_signed(t, 1) * y * y + sol->delta(t) * x +
                   sol->eps(t) * y + sol->kappa_linear(t) - (nl ? nl->value(t) : 0.0);
        return std::polar(1.0 / std::sqrt(std::abs(m)), S);
    };
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form references (independent of the ODE machinery).
// ---------------------------------------------------------------------------

// soliton family on a = b = 1/2 base with Ermakov constant 1; all seven phase
// functions in closed form, with the angle of gamma unwrapped continuously
struct FamilyClosedForm {
    double mu0, alpha0, beta0, gamma0, delta0, eps0, kappa0;  // initial data

    double q(double t) const {
        double mr = mu_reg(t);
        return std::pow(beta0, 4) * std::sin(t) * std::sin(t) + mr * mr;
    }
    double mu_reg(double t) const { return 2.0 * alpha0 * std::sin(t) + std::cos(t); }

    double mu(double t) const { return mu0 * std::sqrt(q(t)); }
    double alpha(double t) const {
        return (alpha0 * std::cos(2.0 * t) +
                std::sin(2.0 * t) *
                    (std::pow(beta0, 4) + 4.0 * alpha0 * alpha0 - 1.0) / 4.0) /
               q(t);
    }
    double beta(double t) const { return beta0 / std::sqrt(q(t)); }
    double gamma(double t) const {
        double theta = std::atan2(beta0 * beta0 * std::sin(t), mu_reg(t)) +
                       2.0 * 3.14159265358979323846 * winding(t);
        return gamma0 - 0.5 * theta;
    }
    double delta(double t) const {
        return (delta0 * mu_reg(t) + eps0 * std::pow(beta0, 3) * std::sin(t)) / q(t);
    }
    double eps(double t) const {
        return (eps0 * mu_reg(t) - beta0 * delta0 * std::sin(t)) / std::sqrt(q(t));
    }
    double kappa(double t) const {
        double st = std::sin(t);
        return kappa0 +
               st * st *
                   (eps0 * beta0 * beta0 * (alpha0 * eps0 - beta0 * delta0) -
                    alpha0 * delta0 * delta0) /
                   q(t) +
               0.25 * std::sin(2.0 * t) * (eps0 * eps0 * beta0 * beta0 - delta0 * delta0) /
                   q(t);
    }

private:
    // zeros of sin(t) with mu_reg < 0 are the odd multiples of pi; each one
    // crossed adds a turn (mu_reg(k pi) = (-1)^k, d(sin)/dt there = (-1)^k)
    double winding(double t) const {
        double w = 0.0;
        const double pi = 3.14159265358979323846;
        int kmax = static_cast<int>(std::floor(std::abs(t) / pi));
        for (int k = 1; k <= kmax; ++k) {
            if (k % 2 == 0) continue;
            w += t > 0.0 ? 1.0 : -1.0;  // -sign(mu0') = +1 at odd k, both directions
        }
        return w;
    }
};

// the family soliton (bright xi0=-1,h0=-2,F=sech; dark xi0=2,h0=2,F=tanh)
inline ExactSolution1D family_solution(const FamilyClosedForm& p,
                                       std::function<double(double)> F, double xi0,
                                       double y) {
    ExactSolution1D out;
    out.name = "family_closed_form";
    double g0 = p.gamma(0.0);
    out.value = [p, F = std::move(F), xi0, y, g0](double t, double x) {
        double g = p.gamma(t);
        double b = p.beta(t);
        double e = p.eps(t);
        double S = p.alpha(t) * x * x + b * x * y + g * y * y + p.delta(t) * x + e * y +
                   p.kappa(t) + xi0 * (g - g0);
        return std::polar(1.0, S) * (F(b * x + 2.0 * g * y + e) / std::sqrt(p.mu(t)));
    };
    return out;
}

// bright soliton with bending propagation, closed form (t > 0):
//   coefficients a=1/2, c=tanh t, d=cosh t, lambda=-2
inline ExactSolution1D exact_bending_bright(double v, double delta0, double eps0,
                                            double gamma0, double kappa0) {
    ExactSolution1D out;
    out.name = "bending_bright_closed_form";
    out.value = [=](double t, double x) {
        double coth = 1.0 / std::tanh(t);
        double csch = 1.0 / std::sinh(t);
        double amp = std::sqrt(v * coth / (2.0 + coth)) /
                     std::cosh(std::sqrt(v) *
                               ((x * csch - delta0) / (2.0 + coth) + eps0));
        double S =
            (2.0 * x * x * csch / std::cosh(t) + 2.0 * delta0 * x * csch -
             delta0 * delta0 + v) /
                (4.0 + 2.0 * coth) +
            kappa0 - v * gamma0;
        return std::polar(1.0, S) * (amp * std::exp(-std::sinh(t)));
    };
    return out;
}

// dark soliton with bending propagation, closed form (t > 0):
//   coefficients a=b=d=cosh t/2, c=cosh t, lambda=2
inline ExactSolution1D exact_bending_dark(double A, double delta0, double eps0,
                                          double gamma0, double kappa0) {
    ExactSolution1D out;
    out.name = "bending_dark_closed_form";
    out.value = [=](double t, double x) {
        double csch = 1.0 / std::sinh(t);
        double amp = A / std::sqrt(1.0 + std::sinh(t)) *
                     std::tanh(A * ((2.0 * x * csch - 2.0 * delta0) / (csch + 1.0) +
                                    eps0));
        double S = (-x * x + 2.0 * delta0 * x * csch - delta0 * delta0 - 8.0 * A * A) /
                       (2.0 + 2.0 * csch) +
                   kappa0 + 2.0 * A * A * gamma0;
        return std::polar(1.0, S) * amp;
    };
    return out;
}

// periodic sech solution of the sinusoidally driven equation (d = sin t,
// h = -3 e^{3-3cos t}); v < 0
inline ExactSolution1D exact_periodic_sech(double v, double kappa0) {
    ExactSolution1D out;
    out.name = "periodic_sech_closed_form";
    out.value = [=](double t, double x) {
        double amp = std::exp(1.5 * (std::cos(t) - 1.0)) * std::sqrt(-2.0 * v / 3.0) /
                     std::cosh(std::sqrt(-v) * x);
        double S = x * x * std::sin(t) / 4.0 + kappa0 - v * t;
        return std::polar(1.0, S) * amp;
    };
    return out;
}

// fast-decay sech solution (d = (4t - sin t)/2, h = -3 e^{2t^2}); v < 0
inline ExactSolution1D exact_fast_decay_sech(double v, double kappa0) {
    ExactSolution1D out;
    out.name = "fast_decay_sech_closed_form";
    out.value = [=](double t, double x) {
        double amp = std::exp(-t * t) * std::sqrt(-2.0 * v / 3.0) /
                     std::cosh(std::sqrt(-v) * x);
        double S = x * x * std::sin(t) / 4.0 + kappa0 - v * t;
        return std::polar(1.0, S) * amp;
    };
    return out;
}

// modulated Peregrine solutions of the quadratic/linear-driven equation
// (b = t^2 - 1/2, c = -2t, f = e^{t^2}, g = 2t e^{t^2}); envelope(t) is
// 1/sqrt(mu(t)) (sech t for d = tanh t - t, e^{sin^2 t} for d = -(sin 2t + t))
inline ExactSolution1D exact_peregrine_modulated(double A, double kappa0,
                                                 double amplitude_scale,
                                                 std::function<double(double)> envelope,
                                                 const std::string& label) {
    ExactSolution1D out;
    out.name = label;
    out.value = [=](double t, double x) {
        std::complex<double> i(0.0, 1.0);
        double A2 = A * A;
        std::complex<double> num =
            3.0 + 16.0 * i * A2 * t - 16.0 * A2 * A2 * t * t - 4.0 * A2 * x * x;
        double den = 1.0 + 16.0 * A2 * A2 * t * t + 4.0 * A2 * x * x;
        double S = 0.5 * t * x * x + t * std::exp(t * t) * x + kappa0 +
                   0.125 * std::exp(2.0 * t * t) *
                       (2.0 * t - std::sqrt(2.0) * dawson(std::sqrt(2.0) * t)) +
                   2.0 * A2 * t;
        return std::exp(i * S) * (amplitude_scale * A * envelope(t)) * num / den;
    };
    return out;
}

}  // namespace vcnls
