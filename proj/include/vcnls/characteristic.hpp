#pragma once

// Characteristic second-order ODE of the phase system,
//   mu'' - tau(t) mu' + 4 sigma(t) mu = 0,
//   tau = a'/a - 2c + 4d,
//   sigma = ab - cd + d^2 + (d/2)(a'/a) - d'/2,
// its standard basis {mu_0, mu_1} with
//   mu_0(0) = 0, mu_0'(0) = 2 a(0),  mu_1(0) = 1, mu_1'(0) = 0,
// and the auxiliary quadratures needed by the zero-parameter phase kernel.
// Everything is produced in a single adaptive integration pass with dense
// output; no nested quadrature.

#include "coeffs.hpp"
#include "ode.hpp"

namespace vcnls {

inline double characteristic_tau(const CoefficientSet& cf, double t) {
    double a = cf.a.value(t);
    return cf.a.deriv(t) / a - 2.0 * cf.c.value(t) + 4.0 * cf.d.value(t);
}

inline double characteristic_sigma(const CoefficientSet& cf, double t) {
    double a = cf.a.value(t), d = cf.d.value(t);
    return a * cf.b.value(t) - cf.c.value(t) * d + d * d +
           0.5 * d * cf.a.deriv(t) / a - 0.5 * cf.d.deriv(t);
}

// State layout of the augmented characteristic system.
enum BasisComponent : std::size_t {
    k_mu0 = 0,
    k_dmu0 = 1,
    k_mu1 = 2,
    k_dmu1 = 3,
    k_Icw = 4,   // integral of (c - 2d); w = exp(-Icw)
    k_Idelta = 5,
    k_Ieps1 = 6,
    k_Ieps2 = 7,
    k_Ikap1 = 8,
    k_Ikap2 = 9,
};
inline constexpr std::size_t basis_dimension = 10;

class CharacteristicBasis {
public:
    // mu0_slope overrides mu_0'(0); the default 0 means the standard 2 a(0).
    // Some published example solution sets are normalized to a different
    // slope, and reproducing them requires matching that normalization.
    CharacteristicBasis(CoefficientSet cf, double t_min, double t_max,
                        const OdeOptions& opts = {}, double mu0_slope = 0.0)
        : cf_(std::move(cf)), a0_(cf_.a.value(0.0)), d0_(cf_.d.value(0.0)) {
        OdeRhs<double> rhs = [this](double t, const std::vector<double>& y,
                                    std::vector<double>& dy) {
            const double a = cf_.a.value(t), c = cf_.c.value(t), d = cf_.d.value(t);
            const double f = cf_.f.value(t), g = cf_.g.value(t);
            const double tau = characteristic_tau(cf_, t);
            const double sig = characteristic_sigma(cf_, t);
            const double w = std::exp(-y[k_Icw]);
            const double fd = f - (d / a) * g;  // recurring source combination
            dy.resize(basis_dimension);
            dy[k_mu0] = y[k_dmu0];
            dy[k_dmu0] = tau * y[k_dmu0] - 4.0 * sig * y[k_mu0];
            dy[k_mu1] = y[k_dmu1];
            dy[k_dmu1] = tau * y[k_dmu1] - 4.0 * sig * y[k_mu1];
            dy[k_Icw] = c - 2.0 * d;
            dy[k_Idelta] = (fd * y[k_mu0] + (g / (2.0 * a)) * y[k_dmu0]) / w;
            if (fd == 0.0 && g == 0.0) {
                dy[k_Ieps1] = dy[k_Ieps2] = dy[k_Ikap1] = dy[k_Ikap2] = 0.0;
            } else {
                const double dmu0 = y[k_dmu0];
                const double wI = w * y[k_Idelta];
                dy[k_Ieps1] = a * sig * w * wI / (dmu0 * dmu0);
                dy[k_Ieps2] = (a * w / dmu0) * fd;
                dy[k_Ikap1] = a * sig * wI * wI / (dmu0 * dmu0);
                dy[k_Ikap2] = (a / dmu0) * wI * fd;
            }
        };
        std::vector<double> y0(basis_dimension, 0.0);
        y0[k_dmu0] = mu0_slope != 0.0 ? mu0_slope : 2.0 * a0_;
        y0[k_mu1] = 1.0;
        dense_ = TwoSidedDense<double>(rhs, std::move(y0), 0.0, t_min, t_max, opts);
    }

    // Basis for a catalog scenario over its declared time domain.  When the
    // scenario carries a closed form for mu0, its slope at t = 0 fixes the
    // normalization so numeric and closed-form values agree pointwise.
    static CharacteristicBasis for_scenario(const Scenario& sc,
                                            const OdeOptions& opts = {}) {
        double slope = 0.0;
        auto it = sc.closed_forms.find("mu0");
        if (it != sc.closed_forms.end()) slope = it->second.deriv(0.0);
        return CharacteristicBasis(sc.coefficients, sc.t_min, sc.t_max, opts, slope);
    }

    const CoefficientSet& coefficients() const { return cf_; }
    double a_at_zero() const { return a0_; }
    double d_at_zero() const { return d0_; }
    double t_min() const { return dense_.t_min(); }
    double t_max() const { return dense_.t_max(); }
    const TwoSidedDense<double>& dense() const { return dense_; }

    double mu0(double t) const { return dense_.component(t, k_mu0); }
    double dmu0(double t) const { return dense_.component(t, k_dmu0); }
    double mu1(double t) const { return dense_.component(t, k_mu1); }
    double dmu1(double t) const { return dense_.component(t, k_dmu1); }
    double w(double t) const { return std::exp(-dense_.component(t, k_Icw)); }
    double integral(double t, BasisComponent which) const {
        return dense_.component(t, which);
    }

    // Wronskian mu_0 mu_1' - mu_1 mu_0'; by Abel's identity it equals
    // -2 a(t) w(t)^2 everywhere.
    double wronskian(double t) const {
        return mu0(t) * dmu1(t) - mu1(t) * dmu0(t);
    }
    double wronskian_abel(double t) const {
        double wt = w(t);
        return -2.0 * cf_.a.value(t) * wt * wt;
    }

private:
    CoefficientSet cf_;
    double a0_, d0_;
    TwoSidedDense<double> dense_;
};

}  // namespace vcnls
