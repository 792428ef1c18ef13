#include "g2mono/metric.hpp"

#include "g2mono/errors.hpp"
#include "g2mono/series.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>

namespace g2mono {

std::string to_string(MetricId id) {
    switch (id) {
        case MetricId::euclidean: return "euclidean";
        case MetricId::hyperbolic: return "hyperbolic";
        case MetricId::bs_s4: return "bs_s4";
        case MetricId::bs_cp2: return "bs_cp2";
        case MetricId::custom: return "custom";
    }
    return "unknown";
}

MetricId parse_metric_id(const std::string& name) {
    if (name == "euclidean") return MetricId::euclidean;
    if (name == "hyperbolic") return MetricId::hyperbolic;
    if (name == "bs_s4") return MetricId::bs_s4;
    if (name == "bs_cp2") return MetricId::bs_cp2;
    if (name == "custom") return MetricId::custom;
    throw UsageError("unknown metric '" + name + "'");
}

double MetricProfile::h(double r) const { return std::sqrt(h2(r)); }

std::vector<Rational> MetricProfile::exact_series(int) const {
    throw UnsupportedError("metric '" + name() + "' has no exact series data");
}

std::vector<double> MetricProfile::series_coeffs(int order) const {
    std::vector<double> out;
    for (const auto& q : exact_series(order)) out.push_back(to_double(q));
    return out;
}

double MetricProfile::series_truncation_bound(double r, int order) const {
    const auto c = series_coeffs(order + 8);
    double tail = 0.0;
    for (int k = order + 1; k < static_cast<int>(c.size()); ++k) tail += std::abs(c[k]) * std::pow(r, k);
    return 2.0 * r * r * tail + 64.0 * std::numeric_limits<double>::epsilon() * h2(r);
}

namespace {

void require_positive(double r) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
}

class Euclidean final : public MetricProfile {
public:
    MetricId id() const override { return MetricId::euclidean; }
    double h2(double r) const override {
        require_positive(r);
        return r * r;
    }
    double dh2(double r) const override {
        require_positive(r);
        return 2.0 * r;
    }
    bool nonparabolic() const override { return true; }
    double green_tail(double r) const override {
        require_positive(r);
        return 0.5 / r;
    }
    std::vector<Rational> exact_series(int order) const override {
        std::vector<Rational> c(static_cast<std::size_t>(order) + 1, Rational(0));
        c[0] = 1;
        return c;
    }
    double series_radius() const override { return 1.0; }
};

class Hyperbolic final : public MetricProfile {
public:
    MetricId id() const override { return MetricId::hyperbolic; }
    double h2(double r) const override {
        require_positive(r);
        const double s = std::sinh(r);
        return s * s;
    }
    double dh2(double r) const override {
        require_positive(r);
        return std::sinh(2.0 * r);
    }
    bool nonparabolic() const override { return true; }
    double green_tail(double r) const override {
        require_positive(r);
        return 1.0 / std::expm1(2.0 * r);
    }
    std::vector<Rational> exact_series(int order) const override {
        // (sinh r / r)^2
        const auto n = static_cast<std::size_t>(order);
        FormalSeries<Rational> q(n);
        Rational fact = 1;
        for (std::size_t k = 0; k <= n; ++k) {
            fact /= Rational(static_cast<long>(k + 1));
            if (k % 2 == 0) q[k] = fact;
        }
        return (q * q).coeffs();
    }
    double series_radius() const override { return 1.0; }
};

class BryantSalamon final : public MetricProfile {
public:
    explicit BryantSalamon(MetricId id) : id_(id) {}
    MetricId id() const override { return id_; }

    double h2(double r) const override {
        require_positive(r);
        return BSParametrization::h2_of_s(bs().s_of_rho(r));
    }
    double dh2(double r) const override {
        require_positive(r);
        const double s = bs().s_of_rho(r);
        return BSParametrization::dh2_ds(s) / BSParametrization::f(s);
    }
    bool nonparabolic() const override { return true; }
    double green_tail(double r) const override {
        require_positive(r);
        return bs().green_of_s(bs().s_of_rho(r));
    }

    std::vector<Rational> exact_series(int order) const override {
        static std::mutex mu;
        static std::map<int, std::vector<Rational>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(order);
        if (it == cache.end()) it = cache.emplace(order, compute_series(order)).first;
        return it->second;
    }
    double series_radius() const override { return 0.5; }
    std::vector<double> series_coeffs(int order) const override {
        static std::mutex mu;
        static std::map<int, std::vector<double>> cache;
        {
            std::lock_guard<std::mutex> lock(mu);
            if (auto it = cache.find(order); it != cache.end()) return it->second;
        }
        auto d = MetricProfile::series_coeffs(order);
        std::lock_guard<std::mutex> lock(mu);
        return cache.emplace(order, std::move(d)).first->second;
    }

    bool uses_s_chart() const override { return true; }
    double coord_of_radius(double r) const override { return bs().s_of_rho(r); }
    double radius_of_coord(double s) const override { return bs().rho_of_s(s); }
    double dradius_dcoord(double s) const override { return BSParametrization::f(s); }
    double h2_at_coord(double s) const override { return BSParametrization::h2_of_s(s); }
    double dh2_at_coord(double s) const override { return BSParametrization::dh2_ds(s); }
    double green_at_coord(double s) const override { return bs().green_of_s(s); }

private:
    static std::vector<Rational> compute_series(int order) {
        const auto n = static_cast<std::size_t>(order);
        const std::size_t m = n + 2;
        // rho(s) = sum binom(-1/4, k) s^(2k+1) / (2k+1)
        FormalSeries<Rational> rho(m);
        Rational b = 1;
        for (std::size_t k = 0; 2 * k + 1 <= m; ++k) {
            rho[2 * k + 1] = b / Rational(static_cast<long>(2 * k + 1));
            b *= (Rational(-1, 4) - Rational(static_cast<long>(k))) / Rational(static_cast<long>(k + 1));
        }
        // revert: s <- x - (rho(s) - s)
        const auto x = FormalSeries<Rational>::variable(m);
        FormalSeries<Rational> s = x;
        for (std::size_t it = 0; it <= m; ++it) s = x - (rho.compose(s) - s);
        const auto q = s.shifted_down(1).truncated(n);
        const auto one_plus_s2 = FormalSeries<Rational>::constant(1, m) + s * s;
        return (q * q * one_plus_s2.power(Rational(1, 2)).truncated(n)).coeffs();
    }

    static const BSParametrization& bs() { return BSParametrization::instance(); }
    MetricId id_;
};

}  // namespace

MetricPtr make_metric(MetricId id) {
    switch (id) {
        case MetricId::euclidean: return std::make_shared<Euclidean>();
        case MetricId::hyperbolic: return std::make_shared<Hyperbolic>();
        case MetricId::bs_s4:
        case MetricId::bs_cp2: return std::make_shared<BryantSalamon>(id);
        case MetricId::custom: break;
    }
    throw UsageError("custom metrics must be loaded from a file");
}

MetricPtr make_metric(const std::string& name_or_path) {
    for (auto id : {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4, MetricId::bs_cp2})
        if (name_or_path == to_string(id)) return make_metric(id);
    if (std::filesystem::exists(name_or_path)) return load_custom_metric(name_or_path);
    throw UsageError("unknown metric '" + name_or_path + "' (not a built-in name or a file)");
}

}  // namespace g2mono
