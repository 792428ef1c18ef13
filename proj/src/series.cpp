#include "g2mono/series.hpp"

#include <cmath>
#include <limits>

namespace g2mono {

namespace {

template <class T>
SeriesSolution package(double beta, const std::vector<T>& v, const std::vector<T>& metric, int order) {
    SeriesSolution s;
    s.beta = beta;
    s.order = order;
    for (const auto& c : v) {
        if constexpr (std::is_same_v<T, double>) s.coeffs.push_back(c);
        else s.coeffs.push_back(to_double(c));
    }
    for (const auto& c : metric) {
        if constexpr (std::is_same_v<T, double>) s.metric_coeffs.push_back(c);
        else s.metric_coeffs.push_back(to_double(c));
    }
    if constexpr (!std::is_same_v<T, double>) s.exact = v;
    return s;
}

}  // namespace

SeriesSolution v_series(double beta, const std::vector<double>& metric, int order) {
    return package(beta, recurrence_coeffs(beta, metric, order), metric, order);
}

SeriesSolution v_series(const Rational& beta, const std::vector<Rational>& metric, int order) {
    return package(to_double(beta), recurrence_coeffs(beta, metric, order), metric, order);
}

SeriesSolution v_series_oracle(double beta, const std::vector<double>& metric, int order) {
    return package(beta, fixed_point_coeffs(beta, metric, order), metric, order);
}

SeriesSolution v_series_oracle(const Rational& beta, const std::vector<Rational>& metric, int order) {
    return package(to_double(beta), fixed_point_coeffs(beta, metric, order), metric, order);
}

double truncation_bound(const SeriesSolution& series, double delta) {
    const int n = series.order;
    const auto& v = series.coeffs;
    return std::max(std::abs(v[n - 1]) * std::pow(delta, n - 1), std::abs(v[n]) * std::pow(delta, n));
}

double admissible_delta(const SeriesSolution& series, double bound) {
    if (truncation_bound(series, kMaxDelta) < bound) return kMaxDelta;
    double lo = 0.0, hi = kMaxDelta;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (truncation_bound(series, mid) < bound ? lo : hi) = mid;
    }
    return lo;
}

InitialData initial_data(const SeriesSolution& series, double delta, double bound) {
    if (!(delta > 0.0)) throw DomainError("initial_data needs delta > 0");
    const double tb = truncation_bound(series, delta);
    if (tb > bound)
        throw StepBackError("series truncation bound exceeded at requested delta",
                            admissible_delta(series, bound));
    FormalSeries<double> v(series.coeffs);
    InitialData d;
    d.delta = delta;
    d.v = v.evaluate(delta);
    d.w = v.derivative().evaluate(delta);
    d.a = std::exp(0.5 * d.v);
    d.phi = 0.25 * d.w;
    d.truncation_bound = tb;
    return d;
}

}  // namespace g2mono
