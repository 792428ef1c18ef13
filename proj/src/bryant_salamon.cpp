#include "g2mono/errors.hpp"
#include "g2mono/metric.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace g2mono {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

// regular part of the Green integrand: ((1+t^2)^(-3/4) - 1) / (2 t^2)
double green_regular(double t) {
    if (t < 1e-8) return -0.375;
    return std::expm1(-0.75 * std::log1p(t * t)) / (2.0 * t * t);
}

}  // namespace

const BSParametrization& BSParametrization::instance() {
    static const BSParametrization p;
    return p;
}

double BSParametrization::f(double s) { return std::pow(1.0 + s * s, -0.25); }

double BSParametrization::h2_of_s(double s) { return s * s * std::sqrt(1.0 + s * s); }

double BSParametrization::dh2_ds(double s) {
    const double q = std::sqrt(1.0 + s * s);
    return 2.0 * s * q + s * s * s / q;
}

BSParametrization::BSParametrization() {
    const int n_rho = static_cast<int>(kRhoCacheEnd / kPanel);
    rho_nodes_.assign(n_rho + 1, 0.0);
    for (int k = 0; k < n_rho; ++k)
        rho_nodes_[k + 1] = rho_nodes_[k] + Gauss::integrate(f, k * kPanel, (k + 1) * kPanel);
    offset_ = rho_nodes_.back() - rho_asymptotic(kRhoCacheEnd);

    const int n_g = static_cast<int>(kGreenCacheEnd / kPanel);
    green_nodes_.assign(n_g + 1, 0.0);
    for (int k = n_g; k-- > 0;)
        green_nodes_[k] = green_nodes_[k + 1] + Gauss::integrate(green_regular, k * kPanel, (k + 1) * kPanel);
    green_end_ = green_asymptotic(kGreenCacheEnd);
}

// sum_k binom(-1/4, k) s^(1/2 - 2k) / (1/2 - 2k), valid for s > 1
double BSParametrization::rho_asymptotic(double s) {
    const double inv2 = 1.0 / (s * s);
    double b = 1.0, p = std::sqrt(s), acc = 0.0;
    for (int k = 0; k < 60; ++k) {
        const double term = b * p / (0.5 - 2.0 * k);
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        b *= (-0.25 - k) / (k + 1.0);
        p *= inv2;
    }
    return acc;
}

// sum_k binom(-3/4, k) s^(-5/2 - 2k) / (2 (5/2 + 2k)), valid for s > 1
double BSParametrization::green_asymptotic(double s) {
    const double inv2 = 1.0 / (s * s);
    double b = 1.0, p = std::pow(s, -2.5), acc = 0.0;
    for (int k = 0; k < 80; ++k) {
        const double term = b * p / (2.0 * (2.5 + 2.0 * k));
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        b *= (-0.75 - k) / (k + 1.0);
        p *= inv2;
    }
    return acc;
}

double BSParametrization::rho_of_s(double s) const {
    if (!(s >= 0.0)) throw DomainError("rho_of_s needs s >= 0");
    if (s >= kRhoCacheEnd) return rho_asymptotic(s) + offset_;
    const auto k = static_cast<std::size_t>(s / kPanel);
    const double a = static_cast<double>(k) * kPanel;
    return rho_nodes_[k] + (s > a ? Gauss::integrate(f, a, s) : 0.0);
}

double BSParametrization::s_of_rho(double rho) const {
    if (!(rho >= 0.0)) throw DomainError("s_of_rho needs rho >= 0");
    if (rho == 0.0) return 0.0;
    double lo, hi, s;
    if (rho < rho_nodes_.back()) {
        const auto it = std::upper_bound(rho_nodes_.begin(), rho_nodes_.end(), rho);
        const auto k = static_cast<std::size_t>(it - rho_nodes_.begin()) - 1;
        lo = static_cast<double>(k) * kPanel;
        hi = lo + kPanel;
        s = lo + kPanel * (rho - rho_nodes_[k]) / (rho_nodes_[k + 1] - rho_nodes_[k]);
    } else {
        const double g = 0.5 * (rho - offset_);
        lo = kRhoCacheEnd;
        hi = std::max(2.0 * kRhoCacheEnd, (g + 1.0) * (g + 1.0));
        s = std::clamp(g * g, lo, hi);
    }
    for (int it = 0; it < 100; ++it) {
        const double res = rho_of_s(s) - rho;
        if (res > 0.0) hi = s;
        else lo = s;
        double next = s - res / f(s);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= 4e-16 * std::max(1.0, s)) return next;
        s = next;
    }
    return s;
}

double BSParametrization::green_of_s(double s) const {
    if (!(s > 0.0)) throw DomainError("green_of_s needs s > 0");
    if (s >= kGreenCacheEnd) return green_asymptotic(s);
    const auto k = static_cast<std::size_t>(s / kPanel);
    const double b = static_cast<double>(k + 1) * kPanel;
    const double partial = Gauss::integrate(green_regular, s, b);
    return green_end_ + (0.5 / s - 0.5 / kGreenCacheEnd) + partial + green_nodes_[k + 1];
}

}  // namespace g2mono
