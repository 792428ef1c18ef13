#pragma once

#include "g2mono/errors.hpp"
#include "g2mono/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace g2mono {

/// Truncated power series c_0 + c_1 x + ... + c_N x^N over a field T.
/// Binary operations truncate to the smaller order.
template <class T>
class FormalSeries {
public:
    FormalSeries() : c_(1, T(0)) {}
    explicit FormalSeries(std::size_t order) : c_(order + 1, T(0)) {}
    explicit FormalSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(T(0));
    }

    static FormalSeries constant(const T& value, std::size_t order) {
        FormalSeries s(order);
        s.c_[0] = value;
        return s;
    }
    static FormalSeries variable(std::size_t order) {
        FormalSeries s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }

    std::size_t order() const noexcept { return c_.size() - 1; }
    const std::vector<T>& coeffs() const noexcept { return c_; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    T& operator[](std::size_t i) { return c_[i]; }
    T at(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

    FormalSeries truncated(std::size_t order) const {
        std::vector<T> c(order + 1, T(0));
        for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) c[i] = c_[i];
        return FormalSeries(std::move(c));
    }

    // multiply by x^k, keeping the order
    FormalSeries shifted_up(std::size_t k) const {
        FormalSeries s(order());
        for (std::size_t i = 0; i + k <= order(); ++i) s.c_[i + k] = c_[i];
        return s;
    }

    // divide by x^k; the first k coefficients must vanish. Order drops by k.
    FormalSeries shifted_down(std::size_t k) const {
        if (k > order()) throw DomainError("shift exceeds series order");
        for (std::size_t i = 0; i < k; ++i)
            if (c_[i] != T(0)) throw DomainError("series not divisible by x^k");
        return FormalSeries(std::vector<T>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }

    FormalSeries& operator+=(const FormalSeries& o) {
        truncate_to(o.order());
        for (std::size_t i = 0; i <= order(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    FormalSeries& operator-=(const FormalSeries& o) {
        truncate_to(o.order());
        for (std::size_t i = 0; i <= order(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    FormalSeries& operator*=(const T& k) {
        for (auto& x : c_) x *= k;
        return *this;
    }

    friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
    friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
    friend FormalSeries operator-(FormalSeries a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend FormalSeries operator*(FormalSeries a, const T& k) { return a *= k; }
    friend FormalSeries operator*(const T& k, FormalSeries a) { return a *= k; }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        FormalSeries out(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    FormalSeries reciprocal() const {
        if (c_[0] == T(0)) throw DomainError("reciprocal of a series with zero constant term");
        FormalSeries out(order());
        out.c_[0] = T(1) / c_[0];
        for (std::size_t k = 1; k <= order(); ++k) {
            T acc(0);
            for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
            out.c_[k] = -acc / c_[0];
        }
        return out;
    }

    friend FormalSeries operator/(const FormalSeries& a, const FormalSeries& b) {
        return a * b.reciprocal();
    }

    // exp of a series with zero constant term: k e_k = sum_j j s_j e_{k-j}
    FormalSeries exp() const {
        if (c_[0] != T(0)) throw DomainError("exp requires zero constant term");
        FormalSeries out(order());
        out.c_[0] = T(1);
        for (std::size_t k = 1; k <= order(); ++k) {
            T acc(0);
            for (std::size_t j = 1; j <= k; ++j) acc += T(static_cast<long>(j)) * c_[j] * out.c_[k - j];
            out.c_[k] = acc / T(static_cast<long>(k));
        }
        return out;
    }

    // this^alpha for a series with constant term 1, from f y' = alpha f' y
    FormalSeries power(const T& alpha) const {
        if (c_[0] != T(1)) throw DomainError("power requires constant term 1");
        FormalSeries out(order());
        out.c_[0] = T(1);
        for (std::size_t k = 1; k <= order(); ++k) {
            T acc(0);
            for (std::size_t j = 1; j <= k; ++j) {
                const T jj(static_cast<long>(j));
                const T kk(static_cast<long>(k));
                acc += (alpha * jj - (kk - jj)) * c_[j] * out.c_[k - j];
            }
            out.c_[k] = acc / T(static_cast<long>(k));
        }
        return out;
    }

    // this(inner(x)); inner must have zero constant term
    FormalSeries compose(const FormalSeries& inner) const {
        if (inner.c_[0] != T(0)) throw DomainError("composition requires inner(0) = 0");
        const std::size_t n = std::min(order(), inner.order());
        FormalSeries out(n);
        for (std::size_t k = order() + 1; k-- > 0;) {
            out = out * inner.truncated(n);
            out.c_[0] += c_[k];
        }
        return out;
    }

    // antiderivative vanishing at 0, same order
    FormalSeries integral() const {
        FormalSeries out(order());
        for (std::size_t k = 0; k < order(); ++k) out.c_[k + 1] = c_[k] / T(static_cast<long>(k + 1));
        return out;
    }

    FormalSeries derivative() const {
        if (order() == 0) return FormalSeries(0);
        FormalSeries out(order() - 1);
        for (std::size_t k = 1; k <= order(); ++k) out.c_[k - 1] = c_[k] * T(static_cast<long>(k));
        return out;
    }

    template <class X>
    X evaluate(const X& x) const {
        X acc = X(convert(c_.back()));
        for (std::size_t k = order(); k-- > 0;) acc = acc * x + X(convert(c_[k]));
        return acc;
    }

    FormalSeries<double> to_double() const {
        std::vector<double> d;
        d.reserve(c_.size());
        for (const auto& x : c_) d.push_back(convert(x));
        return FormalSeries<double>(std::move(d));
    }

private:
    static double convert(const T& x) {
        if constexpr (std::is_same_v<T, double>) return x;
        else return x.template convert_to<double>();
    }

    void truncate_to(std::size_t n) {
        if (n < order()) c_.resize(n + 1);
    }

    std::vector<T> c_;
};

/// Coefficients v_0..v_N of the formal solution of h^2 v'' = 2(e^v - 1),
/// v(0) = v'(0) = 0, v_2 = beta, where h^2 = r^2 * sum metric[i] r^i.
/// Missing metric coefficients are zero.
template <class T>
std::vector<T> recurrence_coeffs(const T& beta, const std::vector<T>& metric, int order) {
    if (order < 2) throw DomainError("series order must be at least 2");
    if (metric.empty() || metric[0] != T(1)) throw DomainError("metric series must start with 1");
    const auto n = static_cast<std::size_t>(order);
    std::vector<T> phi(n + 1, T(0));
    for (std::size_t i = 0; i < std::min(metric.size(), n + 1); ++i) phi[i] = metric[i];
    // recurrence weights are coefficients of r^2 / h^2
    const std::vector<T> psi = FormalSeries<T>(phi).reciprocal().coeffs();

    std::vector<T> v(n + 1, T(0)), e(n + 1, T(0)), big_e(n + 1, T(0));
    v[2] = beta;
    e[0] = T(1);
    auto update_exp = [&](std::size_t k) {
        T acc(0);
        for (std::size_t j = 1; j <= k; ++j) acc += T(static_cast<long>(j)) * v[j] * e[k - j];
        e[k] = acc / T(static_cast<long>(k));
        big_e[k] = e[k];
    };
    update_exp(1);
    update_exp(2);
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        const std::size_t k = i + 2;
        // E_k = v_k + nonlinear part from lower orders
        T nonlinear(0);
        for (std::size_t j = 1; j < k; ++j) nonlinear += T(static_cast<long>(j)) * v[j] * e[k - j];
        nonlinear /= T(static_cast<long>(k));
        T lower(0);
        for (std::size_t j = 0; j < i; ++j) lower += psi[i - j] * big_e[j + 2];
        const T ii(static_cast<long>(i));
        v[k] = T(2) * (nonlinear + lower) / (ii * (ii + T(3)));
        update_exp(k);
    }
    return v;
}

/// Same contract as recurrence_coeffs, built from the double integral
/// v = I(I(2 (e^v - 1) / h^2)). The map is affine in the newest coefficient,
/// so Aitken extrapolation of three iterates gives that coefficient exactly.
template <class T>
std::vector<T> fixed_point_coeffs(const T& beta, const std::vector<T>& metric, int order) {
    if (order < 2) throw DomainError("series order must be at least 2");
    if (metric.empty() || metric[0] != T(1)) throw DomainError("metric series must start with 1");
    const auto n = static_cast<std::size_t>(order);
    std::vector<T> phi(n + 1, T(0));
    for (std::size_t i = 0; i < std::min(metric.size(), n + 1); ++i) phi[i] = metric[i];
    const FormalSeries<T> h2_over_r2(phi);

    auto picard = [&](const FormalSeries<T>& v) {
        FormalSeries<T> rhs = (v.exp() - FormalSeries<T>::constant(T(1), n)).shifted_down(2);
        rhs = rhs / h2_over_r2.truncated(rhs.order());
        rhs *= T(2);
        FormalSeries<T> out = rhs.truncated(n).integral().integral();
        return out;
    };

    FormalSeries<T> v(n);
    v[2] = beta;
    for (std::size_t k = 3; k <= n; ++k) {
        FormalSeries<T> x = v;
        const T x0 = T(0);
        x[k] = x0;
        const T x1 = picard(x)[k];
        x[k] = x1;
        const T x2 = picard(x)[k];
        const T denom = x2 - T(2) * x1 + x0;
        v[k] = denom == T(0) ? x1 : x0 - (x1 - x0) * (x1 - x0) / denom;
    }
    return v.coeffs();
}

struct SeriesSolution {
    double beta = 0.0;
    int order = 0;
    std::vector<double> coeffs;          // v_0..v_N
    std::vector<double> metric_coeffs;   // phi_0..phi_M of h^2/r^2
    std::optional<std::vector<Rational>> exact;
};

SeriesSolution v_series(double beta, const std::vector<double>& metric_coeffs, int order = 12);
SeriesSolution v_series(const Rational& beta, const std::vector<Rational>& metric_coeffs, int order = 12);
SeriesSolution v_series_oracle(double beta, const std::vector<double>& metric_coeffs, int order = 12);
SeriesSolution v_series_oracle(const Rational& beta, const std::vector<Rational>& metric_coeffs,
                               int order = 12);

struct InitialData {
    double delta = 0.0;
    double a = 1.0;
    double phi = 0.0;
    double v = 0.0;
    double w = 0.0;  // v'
    double truncation_bound = 0.0;
};

inline constexpr double kSeriesHandoffBound = 1e-14;
inline constexpr double kMaxDelta = 0.1;

/// Largest truncation estimate max(|v_{N-1}| d^{N-1}, |v_N| d^N).
double truncation_bound(const SeriesSolution& series, double delta);

/// Largest delta <= kMaxDelta whose truncation bound is below `bound`.
double admissible_delta(const SeriesSolution& series, double bound = kSeriesHandoffBound);

/// Evaluates the truncated series at delta. Throws StepBackError if the
/// truncation bound exceeds `bound`.
InitialData initial_data(const SeriesSolution& series, double delta,
                         double bound = kSeriesHandoffBound);

}  // namespace g2mono
