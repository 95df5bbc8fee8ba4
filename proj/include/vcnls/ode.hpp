#pragma once

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with dense output.
// Works on real or complex vector states; integrates forward or backward.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcnls {

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double max_step = 0.02;   // also caps dense-output interpolation error
    double min_step = 1e-14;
    std::size_t max_steps = 2'000'000;
};

namespace detail {

inline double abs2_of(double x) { return x * x; }
inline double abs2_of(const std::complex<double>& x) { return std::norm(x); }

template <class S>
struct dp5_tableau {
    // classic Dormand-Prince coefficients
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // dense-output extra weights (Hairer/Norsett/Wanner contd5)
    static constexpr double d1 = -12715105075.0 / 11282082432.0;
    static constexpr double d3 = 87487479700.0 / 32700410799.0;
    static constexpr double d4 = -10690763975.0 / 1880347072.0;
    static constexpr double d5 = 701980252875.0 / 199316789632.0;
    static constexpr double d6 = -1453857185.0 / 822651844.0;
    static constexpr double d7 = 69997945.0 / 29380423.0;
};

}  // namespace detail

class ode_error : public std::runtime_error {
public:
    ode_error(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double where() const { return t_; }

private:
    double t_;
};

// Dense solution over one sweep [t0, t_end] (t_end may be < t0).
template <class Scalar>
class DenseSolution {
public:
    using State = std::vector<Scalar>;

    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    std::size_t dimension() const { return dim_; }
    std::size_t step_count() const { return steps_.size(); }

    void eval(double t, State& out) const {
        const Step& st = locate(t);
        double theta = (t - st.t) / st.h;
        double th1 = 1.0 - theta;
        out.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            out[i] = st.r1[i] +
                     theta * (st.r2[i] +
                              th1 * (st.r3[i] + theta * (st.r4[i] + th1 * st.r5[i])));
        }
    }

    State eval(double t) const {
        State out;
        eval(t, out);
        return out;
    }

    Scalar eval_component(double t, std::size_t i) const {
        const Step& st = locate(t);
        double theta = (t - st.t) / st.h;
        double th1 = 1.0 - theta;
        return st.r1[i] +
               theta * (st.r2[i] + th1 * (st.r3[i] + theta * (st.r4[i] + th1 * st.r5[i])));
    }

    // derivative of the interpolant (used for phase-function derivatives)
    Scalar eval_component_derivative(double t, std::size_t i) const {
        const Step& st = locate(t);
        double theta = (t - st.t) / st.h;
        double th1 = 1.0 - theta;
        // d/dtheta of r1 + th(r2 + th1(r3 + th(r4 + th1 r5)))
        Scalar inner = st.r4[i] + th1 * st.r5[i];
        Scalar dinner = -st.r5[i];
        Scalar mid = st.r3[i] + theta * inner;
        Scalar dmid = inner + theta * dinner;
        Scalar val = st.r2[i] + th1 * mid;
        Scalar dval = -mid + th1 * dmid;
        return (val + theta * dval) * (1.0 / st.h);
    }

    // node times of accepted steps (endpoints included)
    std::vector<double> nodes() const {
        std::vector<double> ts;
        ts.reserve(steps_.size() + 1);
        for (const auto& s : steps_) ts.push_back(s.t);
        ts.push_back(t1_);
        return ts;
    }

    struct Step {
        double t, h;
        State r1, r2, r3, r4, r5;
    };

    double t0_ = 0, t1_ = 0;
    std::size_t dim_ = 0;
    std::vector<Step> steps_;

private:
    const Step& locate(double t) const {
        if (steps_.empty()) throw ode_error("empty dense solution", t);
        bool fwd = t1_ >= t0_;
        double lo = std::min(t0_, t1_), hi = std::max(t0_, t1_);
        double margin = 1e-9 * (1.0 + hi - lo);
        if (t < lo - margin || t > hi + margin)
            throw ode_error("dense evaluation outside solved interval at t=" +
                                std::to_string(t),
                            t);
        // binary search over step start times (monotone in integration direction)
        std::size_t a = 0, b = steps_.size() - 1;
        while (a < b) {
            std::size_t m = (a + b + 1) / 2;
            bool before = fwd ? (steps_[m].t <= t) : (steps_[m].t >= t);
            if (before)
                a = m;
            else
                b = m - 1;
        }
        return steps_[a];
    }
};

template <class Scalar>
using OdeRhs = std::function<void(double, const std::vector<Scalar>&, std::vector<Scalar>&)>;

namespace detail {

template <class Scalar>
double error_norm(const std::vector<Scalar>& y0, const std::vector<Scalar>& y1,
                  const std::vector<Scalar>& err, double atol, double rtol) {
    double sum = 0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        double sk = atol + rtol * std::max(std::sqrt(abs2_of(y0[i])), std::sqrt(abs2_of(y1[i])));
        sum += abs2_of(err[i]) / (sk * sk);
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

}  // namespace detail

// Single adaptive DP5(4) integration; optionally records dense output,
// optionally invokes an observer after each accepted step.
template <class Scalar>
DenseSolution<Scalar> integrate_dense(
    const OdeRhs<Scalar>& rhs, std::vector<Scalar> y, double t0, double t1,
    const OdeOptions& opts = {},
    const std::function<bool(double, const std::vector<Scalar>&)>& observer = nullptr,
    bool record = true) {
    using T = detail::dp5_tableau<Scalar>;
    using State = std::vector<Scalar>;
    DenseSolution<Scalar> sol;
    sol.t0_ = t0;
    sol.t1_ = t1;
    sol.dim_ = y.size();
    if (t1 == t0) {
        typename DenseSolution<Scalar>::Step st;
        st.t = t0;
        st.h = 1.0;
        st.r1 = y;
        st.r2.assign(y.size(), Scalar(0));
        st.r3 = st.r2;
        st.r4 = st.r2;
        st.r5 = st.r2;
        sol.steps_.push_back(std::move(st));
        return sol;
    }

    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const std::size_t n = y.size();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), errv(n);

    double t = t0;
    rhs(t, y, k1);
    double h = dir * std::min(opts.max_step, std::abs(t1 - t0));
    std::size_t nsteps = 0;

    while (dir * (t1 - t) > 0) {
        if (++nsteps > opts.max_steps)
            throw ode_error("maximum step count exceeded at t=" + std::to_string(t), t);
        if (std::abs(h) < opts.min_step)
            throw ode_error("step size underflow at t=" + std::to_string(t), t);
        if (dir * (t + h - t1) > 0) h = t1 - t;

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (T::a21 * k1[i]);
        rhs(t + T::c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
        rhs(t + T::c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
        rhs(t + T::c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] +
                                  T::a54 * k4[i]);
        rhs(t + T::c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                                  T::a64 * k4[i] + T::a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] +
                                  T::b5 * k5[i] + T::b6 * k6[i]);
        rhs(t + h, ynew, k7);
        for (std::size_t i = 0; i < n; ++i)
            errv[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                           T::e6 * k6[i] + T::e7 * k7[i]);

        bool finite = true;
        for (std::size_t i = 0; i < n && finite; ++i)
            finite = std::isfinite(std::sqrt(detail::abs2_of(ynew[i])));
        double err = finite ? detail::error_norm(y, ynew, errv, opts.atol, opts.rtol)
                            : 1e10;

        if (err <= 1.0) {
            if (record) {
                typename DenseSolution<Scalar>::Step st;
                st.t = t;
                st.h = h;
                st.r1 = y;
                st.r2.resize(n);
                st.r3.resize(n);
                st.r4.resize(n);
                st.r5.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    Scalar dy = ynew[i] - y[i];
                    st.r2[i] = dy;
                    st.r3[i] = h * k1[i] - dy;
                    st.r4[i] = dy - h * k7[i] - st.r3[i];
                    st.r5[i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] +
                                    T::d5 * k5[i] + T::d6 * k6[i] + T::d7 * k7[i]);
                }
                sol.steps_.push_back(std::move(st));
            }
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            if (observer && !observer(t, y)) {
                sol.t1_ = t;
                return sol;
            }
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opts.max_step) h = dir * opts.max_step;
    }
    return sol;
}

// Two-sided dense solution around t=0 (or any anchor) for scenarios whose
// time domain straddles the initial point.
template <class Scalar>
class TwoSidedDense {
public:
    using State = std::vector<Scalar>;

    TwoSidedDense() = default;
    TwoSidedDense(const OdeRhs<Scalar>& rhs, State y0, double anchor, double t_min,
                  double t_max, const OdeOptions& opts = {}) {
        anchor_ = anchor;
        if (t_max > anchor) fwd_ = integrate_dense<Scalar>(rhs, y0, anchor, t_max, opts);
        if (t_min < anchor) bwd_ = integrate_dense<Scalar>(rhs, y0, anchor, t_min, opts);
        y0_ = std::move(y0);
        dim_ = y0_.size();
    }

    std::size_t dimension() const { return dim_; }
    double t_min() const { return bwd_.steps_.empty() ? anchor_ : bwd_.t_end(); }
    double t_max() const { return fwd_.steps_.empty() ? anchor_ : fwd_.t_end(); }

    Scalar component(double t, std::size_t i) const {
        if (t == anchor_) return y0_[i];
        if (t > anchor_) {
            if (fwd_.steps_.empty()) throw ode_error("no forward sweep", t);
            return fwd_.eval_component(t, i);
        }
        if (bwd_.steps_.empty()) throw ode_error("no backward sweep", t);
        return bwd_.eval_component(t, i);
    }

    Scalar component_derivative(double t, std::size_t i) const {
        const DenseSolution<Scalar>& side =
            (t >= anchor_) ? (fwd_.steps_.empty() ? bwd_ : fwd_)
                           : (bwd_.steps_.empty() ? fwd_ : bwd_);
        return side.eval_component_derivative(t, i);
    }

    State state(double t) const {
        if (t == anchor_) return y0_;
        return (t > anchor_) ? fwd_.eval(t) : bwd_.eval(t);
    }

    std::vector<double> nodes() const {
        std::vector<double> ts;
        if (!bwd_.steps_.empty()) {
            ts = bwd_.nodes();
            std::reverse(ts.begin(), ts.end());
            ts.pop_back();  // drop duplicate anchor
        }
        if (!fwd_.steps_.empty()) {
            auto f = fwd_.nodes();
            ts.insert(ts.end(), f.begin(), f.end());
        } else {
            ts.push_back(anchor_);
        }
        return ts;
    }

private:
    double anchor_ = 0;
    std::size_t dim_ = 0;
    State y0_;
    DenseSolution<Scalar> fwd_, bwd_;
};

}  // namespace vcnls
