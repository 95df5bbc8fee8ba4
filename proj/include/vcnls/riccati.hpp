#pragma once

// Multiparameter solutions of the coupled Riccati system
//   alpha' + b + 2c alpha + 4a alpha^2 = 0
//   beta'  + (c + 4a alpha) beta       = 0
//   gamma' + l0 a beta^2               = 0
//   delta' + (c + 4a alpha) delta      = f + 2 alpha g
//   eps'   = (g - 2a delta) beta
//   kappa' = g delta - a delta^2                  (linear part)
//   kappa' = g delta - a delta^2 - h / mu^s       (nonlinear part)
// expressed through the characteristic basis.  All evaluators are written in
// the regularized form mu_reg = mu(t)/mu(0) = 2 mu_0 (alpha(0) + gamma_0),
// which stays finite through the zeros of mu_0.
//
// Also the gauge-form route: under a = -l0, beta = 1, gamma = t, eps = 0 the
// system collapses to quadratures with the compatibility condition
// c' + c^2 + 4 l0 b = 0 and h = -l0 lambda mu.

#include <memory>

#include "characteristic.hpp"

namespace vcnls {

struct PhaseInit {
    double mu = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    double eps = 0.0;
    double kappa = 0.0;
};

// Zero-parameter (kernel) solutions alpha_0 ... kappa_0 of the Riccati system.
class RiccatiKernel {
public:
    explicit RiccatiKernel(std::shared_ptr<const CharacteristicBasis> basis)
        : b_(std::move(basis)) {}

    const CharacteristicBasis& basis() const { return *b_; }

    double alpha0(double t) const {
        const auto& cf = b_->coefficients();
        double a = cf.a.value(t);
        return b_->dmu0(t) / (4.0 * a * b_->mu0(t)) - cf.d.value(t) / (2.0 * a);
    }
    double beta0(double t) const { return -b_->w(t) / b_->mu0(t); }
    double gamma0(double t) const {
        return b_->d_at_zero() / (2.0 * b_->a_at_zero()) +
               b_->mu1(t) / (2.0 * b_->mu0(t));
    }
    double delta0(double t) const {
        return b_->w(t) / b_->mu0(t) * b_->integral(t, k_Idelta);
    }
    double eps0(double t) const {
        double w = b_->w(t);
        double Id = b_->integral(t, k_Idelta);
        const auto& cf = b_->coefficients();
        return -2.0 * cf.a.value(t) * w * w * Id / (b_->mu0(t) * b_->dmu0(t)) +
               8.0 * b_->integral(t, k_Ieps1) + 2.0 * b_->integral(t, k_Ieps2);
    }
    double kappa0(double t) const {
        double w = b_->w(t);
        double Id = b_->integral(t, k_Idelta);
        const auto& cf = b_->coefficients();
        return cf.a.value(t) * w * w * Id * Id / (b_->mu0(t) * b_->dmu0(t)) -
               4.0 * b_->integral(t, k_Ikap1) - 2.0 * b_->integral(t, k_Ikap2);
    }
    // limits at t = 0 (the expressions above are 0/0 there)
    double delta0_at_zero() const {
        return b_->coefficients().g.value(0.0) / (2.0 * b_->a_at_zero());
    }
    double eps0_at_zero() const { return -delta0_at_zero(); }

    // safe evaluation near t = 0 for the quantities with removable limits
    double eps0_safe(double t) const { return t == 0.0 ? eps0_at_zero() : eps0(t); }
    double kappa0_safe(double t) const { return t == 0.0 ? 0.0 : kappa0(t); }

private:
    std::shared_ptr<const CharacteristicBasis> b_;
};

// Multiparameter Riccati solution for arbitrary initial data.
class RiccatiSolution {
public:
    RiccatiSolution(std::shared_ptr<const CharacteristicBasis> basis, PhaseInit init)
        : k_(std::move(basis)), init_(init) {}

    const RiccatiKernel& kernel() const { return k_; }
    const PhaseInit& initial() const { return init_; }
    const CoefficientSet& coefficients() const { return k_.basis().coefficients(); }

    // mu(t)/mu(0) = 2 mu_0 (alpha(0) + gamma_0); finite and equal to 1 at t=0.
    double mu_reg(double t) const {
        const auto& b = k_.basis();
        double slope = 2.0 * init_.alpha + b.d_at_zero() / b.a_at_zero();
        return slope * b.mu0(t) + b.mu1(t);
    }
    double dmu_reg(double t) const {
        const auto& b = k_.basis();
        double slope = 2.0 * init_.alpha + b.d_at_zero() / b.a_at_zero();
        return slope * b.dmu0(t) + b.dmu1(t);
    }

    double mu(double t) const { return init_.mu * mu_reg(t); }
    double alpha(double t) const {
        const auto& cf = coefficients();
        double a = cf.a.value(t);
        return dmu_reg(t) / (4.0 * a * mu_reg(t)) - cf.d.value(t) / (2.0 * a);
    }
    double beta(double t) const { return init_.beta * k_.basis().w(t) / mu_reg(t); }
    double gamma(double t) const { return gamma_signed(t, coefficients().l0); }
    // same quantity under an explicit sign parameter (the 2D system and the
    // plane-phase ansatz always use the +1 form)
    double gamma_signed(double t, int l0) const {
        return l0 * (init_.gamma -
                     init_.beta * init_.beta * k_.basis().mu0(t) / (2.0 * mu_reg(t)));
    }
    double delta(double t) const {
        double e0 = k_.eps0_safe(t);
        double d0 = t == 0.0 ? k_.delta0_at_zero() : k_.delta0(t);
        return d0 + k_.basis().w(t) * (init_.delta + e0) / mu_reg(t);
    }
    double eps(double t) const {
        double e0 = k_.eps0_safe(t);
        return init_.eps -
               init_.beta * (init_.delta + e0) * k_.basis().mu0(t) / mu_reg(t);
    }
    // kappa of the homogeneous system (no nonlinear source)
    double kappa_linear(double t) const {
        double e0 = k_.eps0_safe(t);
        double s = init_.delta + e0;
        return init_.kappa + k_.kappa0_safe(t) -
               s * s * k_.basis().mu0(t) / (2.0 * mu_reg(t));
    }

private:
    RiccatiKernel k_;
    PhaseInit init_;
};

// Accumulated nonlinear phase integral(0..t) h(z)/mu(z)^s dz, as a dense
// quadrature so kappa(t) = kappa_linear(t) - value(t) evaluates anywhere.
class NonlinearPhase {
public:
    NonlinearPhase() = default;
    NonlinearPhase(const TimeFunction& h, const TimeFunction& G, double s,
                   const std::function<double(double)>& mu_of_t, double t_min,
                   double t_max, const OdeOptions& opts = {}) {
        OdeRhs<double> rhs = [&h, &G, s, &mu_of_t](double t, const std::vector<double>&,
                                                   std::vector<double>& dy) {
            dy.resize(1);
            dy[0] = h.value(t) / std::pow(mu_of_t(t), s) + G.value(t);
        };
        dense_ = TwoSidedDense<double>(rhs, {0.0}, 0.0, t_min, t_max, opts);
        active_ = true;
    }

    bool active() const { return active_; }
    double value(double t) const { return active_ ? dense_.component(t, 0) : 0.0; }

private:
    bool active_ = false;
    TwoSidedDense<double> dense_;
};

// ---------------------------------------------------------------------------
// Gauge-form route: a = -l0, beta = 1, gamma = t, eps = 0.
// ---------------------------------------------------------------------------
struct GaugeDiagnostics {
    double max_compatibility_residual = 0.0;  // sup |c' + c^2 + 4 l0 b|
    double max_a_mismatch = 0.0;              // sup |a + l0|
    double lambda = 0.0;                      // from h = -l0 lambda mu
    double lambda_spread = 0.0;               // sup |lambda(t) - lambda|
    double max_g_mismatch = 0.0;              // given g vs quadrature of f
    bool admissible(double tol = 1e-8) const {
        return max_compatibility_residual <= tol && max_a_mismatch <= tol &&
               lambda_spread <= tol * std::max(1.0, std::abs(lambda)) &&
               max_g_mismatch <= tol;
    }
};

class GaugeSolution {
public:
    GaugeSolution(CoefficientSet cf, double t_min, double t_max, double mu_at_zero = 1.0,
                  double kappa_at_zero = 0.0, const OdeOptions& opts = {})
        : cf_(std::move(cf)), mu0_(mu_at_zero), kappa0_(kappa_at_zero) {
        const int l0 = cf_.l0;
        // quadrature state: [Ic, J = int e^{Ic} f, Ig2 = int g^2, Icd = int (2d-c)]
        OdeRhs<double> rhs = [this](double t, const std::vector<double>& y,
                                    std::vector<double>& dy) {
            dy.resize(4);
            dy[0] = cf_.c.value(t);
            dy[1] = std::exp(y[0]) * cf_.f.value(t);
            double g = cf_.g.value(t);
            dy[2] = g * g;
            dy[3] = 2.0 * cf_.d.value(t) - cf_.c.value(t);
        };
        dense_ = TwoSidedDense<double>(rhs, {0.0, 0.0, 0.0, 0.0}, 0.0, t_min, t_max, opts);

        // diagnostics over a fixed sampling of the domain
        const int n = 801;
        double lam_min = 0.0, lam_max = 0.0;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            double t = t_min + (t_max - t_min) * i / (n - 1.0);
            double c = cf_.c.value(t);
            double res = cf_.c.deriv(t) + c * c + 4.0 * l0 * cf_.b.value(t);
            diag_.max_compatibility_residual =
                std::max(diag_.max_compatibility_residual, std::abs(res));
            diag_.max_a_mismatch =
                std::max(diag_.max_a_mismatch, std::abs(cf_.a.value(t) + l0));
            double lam = -l0 * cf_.h.value(t) / mu(t);
            if (first) {
                lam_min = lam_max = lam;
                first = false;
            } else {
                lam_min = std::min(lam_min, lam);
                lam_max = std::max(lam_max, lam);
            }
            diag_.max_g_mismatch =
                std::max(diag_.max_g_mismatch, std::abs(cf_.g.value(t) - g_from_f(t)));
        }
        diag_.lambda = 0.5 * (lam_min + lam_max);
        diag_.lambda_spread = 0.5 * (lam_max - lam_min);
    }

    const CoefficientSet& coefficients() const { return cf_; }
    const GaugeDiagnostics& diagnostics() const { return diag_; }
    double lambda() const { return diag_.lambda; }

    double mu(double t) const { return mu0_ * std::exp(dense_.component(t, 3)); }
    double alpha(double t) const { return cf_.l0 * cf_.c.value(t) / 4.0; }
    double delta(double t) const { return -cf_.l0 * cf_.g.value(t) / 2.0; }
    double kappa(double t) const {
        return kappa0_ - cf_.l0 / 4.0 * dense_.component(t, 2);
    }
    // g reconstructed from f through the first-order equation g' + 2 l0 f + c g = 0
    double g_from_f(double t) const {
        double Ic = dense_.component(t, 0);
        return cf_.g.value(0.0) * std::exp(-Ic) -
               2.0 * cf_.l0 * std::exp(-Ic) * dense_.component(t, 1);
    }

private:
    CoefficientSet cf_;
    double mu0_, kappa0_;
    TwoSidedDense<double> dense_;
    GaugeDiagnostics diag_;
};

}  // namespace vcnls
