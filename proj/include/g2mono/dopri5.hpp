#pragma once

// Dormand-Prince 5(4) with Hairer's 4th-order dense output.

#include "g2mono/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace g2mono {

namespace dp {
inline constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                        a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0, a61 = 9017.0 / 3168.0,
                        a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                        a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
inline constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
}  // namespace dp

template <std::size_t N>
using Vec = std::array<double, N>;

/// Continuous extension of one accepted step.
template <std::size_t N>
struct DenseStep {
    double t0 = 0.0, t1 = 0.0;
    Vec<N> y0{}, y1{}, f0{}, f1{};
    std::array<Vec<N>, 5> rc{};

    Vec<N> operator()(double t) const {
        const double th = (t - t0) / (t1 - t0);
        const double th1 = 1.0 - th;
        Vec<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = rc[0][i] + th * (rc[1][i] + th1 * (rc[2][i] + th * (rc[3][i] + th1 * rc[4][i])));
        return y;
    }
};

struct Dopri5Options {
    double tol = 1e-10;
    double h_init = 0.0;   // 0: automatic
    double h_max = 0.0;    // 0: unbounded
    std::size_t max_steps = 2'000'000;
};

struct Dopri5Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
    double t_final = 0.0;
    bool stopped = false;  // observer requested stop
};

/// Integrates y' = f(t, y) from t0 towards t1 (either direction).
/// The observer receives every accepted DenseStep and returns false to stop.
/// Error norm per component uses the scale tol * (0.1 + 0.9 max(|y0|, |y1|)).
template <std::size_t N, class F, class Observer>
Dopri5Stats dopri5(F&& f, double t0, Vec<N> y, double t1, const Dopri5Options& opt, Observer&& observe) {
    using namespace dp;
    Dopri5Stats st;
    st.t_final = t0;
    if (t1 == t0) return st;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    const double h_max = opt.h_max > 0.0 ? opt.h_max : span;
    const double eps = std::numeric_limits<double>::epsilon();

    auto scale = [&](double a, double b) { return opt.tol * (0.1 + 0.9 * std::max(std::abs(a), std::abs(b))); };

    double t = t0;
    Vec<N> k1 = f(t, y);
    ++st.evaluations;

    double h = opt.h_init;
    if (h <= 0.0) {
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = scale(y[i], y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / N);
        d1 = std::sqrt(d1 / N);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min({h, h_max, span});
        Vec<N> y1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + dir * h * k1[i];
        const Vec<N> k2 = f(t + dir * h, y1);
        ++st.evaluations;
        double d2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double q = (k2[i] - k1[i]) / scale(y[i], y[i]);
            d2 += q * q;
        }
        d2 = std::sqrt(d2 / N) / h;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min({100.0 * h, h1, h_max, span});
    }

    Vec<N> k2, k3, k4, k5, k6, k7, yt, ynew;
    double fac_old = 1e-4;
    bool last_rejected = false;
    while (st.accepted + st.rejected < opt.max_steps) {
        const double remaining = std::abs(t1 - t);
        if (remaining <= 0.0) break;
        bool last = false;
        if (h >= remaining * (1.0 - 1e-12)) {
            h = remaining;
            last = true;
        }
        if (h < 1e2 * eps * std::max(1.0, std::abs(t)))
            throw StiffnessError("step size underflow", t, h);
        const double hs = dir * h;

        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * a21 * k1[i];
        k2 = f(t + c2 * hs, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * hs, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const double tn = last ? t1 : t + hs;
        k6 = f(t + hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = f(tn, ynew);
        st.evaluations += 6;

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double q = e / scale(y[i], ynew[i]);
            err += q * q;
            finite = finite && std::isfinite(ynew[i]);
        }
        err = std::sqrt(err / N);
        if (!finite || !std::isfinite(err)) {
            ++st.rejected;
            h *= 0.2;
            last_rejected = true;
            continue;
        }

        // PI step control (Hairer's beta = 0.04)
        const double fac11 = std::pow(err, 0.2 - 0.04 * 0.75);
        double fac = fac11 / std::pow(fac_old, 0.04);
        fac = std::clamp(fac / 0.9, 0.1, 5.0);
        double h_new = h / fac;

        if (err <= 1.0) {
            fac_old = std::max(err, 1e-4);
            DenseStep<N> ds;
            ds.t0 = t;
            ds.t1 = tn;
            ds.y0 = y;
            ds.y1 = ynew;
            ds.f0 = k1;
            ds.f1 = k7;
            for (std::size_t i = 0; i < N; ++i) {
                ds.rc[0][i] = y[i];
                ds.rc[1][i] = ynew[i] - y[i];
                ds.rc[2][i] = hs * k1[i] - ds.rc[1][i];
                ds.rc[3][i] = ds.rc[1][i] - hs * k7[i] - ds.rc[2][i];
                ds.rc[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            ++st.accepted;
            t = tn;
            y = ynew;
            k1 = k7;
            st.t_final = t;
            if (!observe(ds)) {
                st.stopped = true;
                return st;
            }
            if (last) return st;
            if (last_rejected) h_new = std::min(h_new, h);
            last_rejected = false;
            h = std::min(h_new, h_max);
        } else {
            ++st.rejected;
            h = h / std::min(5.0, fac11 / 0.9);
            last_rejected = true;
        }
    }
    throw StiffnessError("maximum number of steps exceeded", t, h);
}

}  // namespace g2mono
