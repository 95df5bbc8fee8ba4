#pragma once

// Multiparameter solutions of the Ermakov system
//   alpha' + b + 2c alpha + 4a alpha^2 = c0 a beta^4
//   beta'  + (c + 4a alpha) beta       = 0
//   gamma' + a beta^2                  = 0
//   delta' + (c + 4a alpha) delta      = f + 2 alpha g + 2 c0 a beta^3 eps
//   eps'   = (g - 2a delta) beta
//   kappa' = g delta - a delta^2 + c0 a beta^2 eps^2
// written through the regular combination
//   q(t) = mu_reg^2 + c0 beta^4(0) mu_0^2,   mu_reg = mu(t)/mu(0),
// which is bounded away from zero for c0 > 0, so every evaluator below is
// continuous through the zeros of mu_0.  gamma needs the continuous angle of
// the point (mu_reg, sqrt(c0) beta^2(0) mu_0), unwrapped across the zeros of
// mu_0 on the negative mu_reg side.

#include "riccati.hpp"

namespace vcnls {

class ErmakovSolution {
public:
    ErmakovSolution(std::shared_ptr<const CharacteristicBasis> basis, PhaseInit init,
                    double c0)
        : k_(basis), init_(init), c0_(c0) {
        if (c0_ > 0.0) find_crossings();
    }

    const RiccatiKernel& kernel() const { return k_; }
    const PhaseInit& initial() const { return init_; }
    double c0() const { return c0_; }
    const CoefficientSet& coefficients() const { return k_.basis().coefficients(); }

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
    double q(double t) const {
        double mr = mu_reg(t), m0 = k_.basis().mu0(t);
        double b4 = std::pow(init_.beta, 4);
        return mr * mr + c0_ * b4 * m0 * m0;
    }
    double dq(double t) const {
        double b4 = std::pow(init_.beta, 4);
        return 2.0 * mu_reg(t) * dmu_reg(t) +
               2.0 * c0_ * b4 * k_.basis().mu0(t) * k_.basis().dmu0(t);
    }

    double mu(double t) const { return init_.mu * std::sqrt(q(t)); }
    double alpha(double t) const {
        const auto& cf = coefficients();
        double a = cf.a.value(t);
        return dq(t) / (8.0 * a * q(t)) - cf.d.value(t) / (2.0 * a);
    }
    double beta(double t) const {
        return init_.beta * k_.basis().w(t) / std::sqrt(q(t));
    }
    double gamma(double t) const {
        if (c0_ == 0.0)
            return init_.gamma -
                   init_.beta * init_.beta * k_.basis().mu0(t) / (2.0 * mu_reg(t));
        double rc0 = std::sqrt(c0_);
        double theta =
            std::atan2(rc0 * init_.beta * init_.beta * k_.basis().mu0(t), mu_reg(t)) +
            2.0 * pi_v * winding(t);
        return init_.gamma - theta / (2.0 * rc0);
    }
    double delta(double t) const {
        double e0 = k_.eps0_safe(t);
        double d0 = t == 0.0 ? k_.delta0_at_zero() : k_.delta0(t);
        double b3 = std::pow(init_.beta, 3);
        return d0 + k_.basis().w(t) *
                        (c0_ * init_.eps * b3 * k_.basis().mu0(t) +
                         mu_reg(t) * (e0 + init_.delta)) /
                        q(t);
    }
    double eps(double t) const {
        double e0 = k_.eps0_safe(t);
        return (-init_.beta * (init_.delta + e0) * k_.basis().mu0(t) +
                init_.eps * mu_reg(t)) /
               std::sqrt(q(t));
    }
    double kappa(double t) const {
        double e0 = k_.eps0_safe(t);
        double s = e0 + init_.delta;
        double m0 = k_.basis().mu0(t);
        double b2 = init_.beta * init_.beta;
        double qt = q(t);
        return init_.kappa + k_.kappa0_safe(t) -
               c0_ * b2 * init_.beta * init_.eps * s * m0 * m0 / qt +
               mu_reg(t) * m0 * (c0_ * b2 * init_.eps * init_.eps - s * s) /
                   (2.0 * qt);
    }

    // zeros of mu_0 inside the solved window (used by the angle unwrap; also
    // useful to report oscillation structure)
    const std::vector<double>& mu0_zeros() const { return zeros_; }

private:
    static constexpr double pi_v = 3.14159265358979323846;

    void find_crossings() {
        const auto& b = k_.basis();
        auto ts = b.dense().nodes();
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            double ta = ts[i], tb = ts[i + 1];
            double fa = b.mu0(ta), fb = b.mu0(tb);
            if (ta == 0.0 || tb == 0.0) continue;  // the root at the origin
            if (fa == 0.0 || fa * fb > 0.0) continue;
            for (int it = 0; it < 200 && tb - ta > 0.0; ++it) {
                double tm = 0.5 * (ta + tb);
                if (tm == ta || tm == tb) break;
                double fm = b.mu0(tm);
                if (fa * fm <= 0.0) {
                    tb = tm;
                } else {
                    ta = tm;
                    fa = fm;
                }
            }
            double z = 0.5 * (ta + tb);
            zeros_.push_back(z);
            dmu0_sign_.push_back(b.dmu0(z) >= 0.0 ? 1.0 : -1.0);
        }
    }

    // branch count of the continuous angle: each zero of mu_0 with mu_reg < 0
    // between 0 and t contributes one full turn of the principal value
    double winding(double t) const {
        double wsum = 0.0;
        for (std::size_t i = 0; i < zeros_.size(); ++i) {
            double z = zeros_[i];
            if (mu_reg(z) >= 0.0) continue;
            if (t > 0.0 && z > 0.0 && z < t) wsum -= dmu0_sign_[i];
            if (t < 0.0 && z < 0.0 && z > t) wsum += dmu0_sign_[i];
        }
        return wsum;
    }

    RiccatiKernel k_;
    PhaseInit init_;
    double c0_;
    std::vector<double> zeros_;
    std::vector<double> dmu0_sign_;
};

// Balance of Theorem "construction of solitons": given the base coefficients
// and an Ermakov solution, the equation actually solved carries the modified
// potential B x^2 - M x + L and the nonlinearity h = h0 a beta^2 mu.
struct BalancedCoefficients {
    std::function<double(double)> B, M, L, h;
};

inline BalancedCoefficients balanced_coefficients(
    std::shared_ptr<const ErmakovSolution> sol, double h0) {
    double c0 = sol->c0();
    BalancedCoefficients out;
    out.B = [c0, sol](double t) {
        double b = sol->beta(t);
        return sol->coefficients().b.value(t) -
               c0 * sol->coefficients().a.value(t) * b * b * b * b;
    };
    out.M = [c0, sol](double t) {
        double b = sol->beta(t);
        return sol->coefficients().f.value(t) +
               2.0 * c0 * sol->coefficients().a.value(t) * b * b * b * sol->eps(t);
    };
    out.L = [c0, sol](double t) {
        double b = sol->beta(t);
        double e = sol->eps(t);
        return c0 * sol->coefficients().a.value(t) * b * b * e * e;
    };
    out.h = [h0, sol](double t) {
        double b = sol->beta(t);
        return h0 * sol->coefficients().a.value(t) * b * b * sol->mu(t);
    };
    return out;
}

}  // namespace vcnls
