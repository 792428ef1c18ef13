#include "g2mono/profile.hpp"

#include "g2mono/errors.hpp"

#include <algorithm>
#include <cmath>

namespace g2mono {

void MonopoleProfile::attach_derivatives(const MetricProfile& metric) {
    da.assign(r.size(), 0.0);
    dphi.assign(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] <= 0.0) {
            da[i] = 0.0;
            dphi[i] = 0.5 * beta;
            continue;
        }
        da[i] = 2.0 * phi[i] * a[i];
        dphi[i] = (a[i] * a[i] - 1.0) / (2.0 * metric.h2(r[i]));
    }
}

ProfileState MonopoleProfile::at(double x, const MetricProfile& metric) const {
    if (r.empty()) throw DomainError("empty profile");
    if (x < r.front()) throw DomainError("radius below the sampled range");
    if (classification == Classification::flat) return {x, 1.0, 0.0};
    if (x >= r.back()) {
        if (x == r.back()) return {x, a.back(), phi.back()};
        const double g_end = metric.green_tail(r.back());
        const double g = metric.green_tail(x);
        const double ph = phi.back() - g_end + g;
        const double integral = (phi.back() - g_end) * (x - r.back()) + 0.5 * (g_end + g) * (x - r.back());
        return {x, a.back() * std::exp(2.0 * integral), ph};
    }
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
    const double h = r[i + 1] - r[i];
    const double t = (x - r[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    const bool have_d = da.size() == r.size();
    auto herm = [&](const std::vector<double>& y, const std::vector<double>& dy) {
        if (!have_d) return y[i] + t * (y[i + 1] - y[i]);
        return h00 * y[i] + h10 * h * dy[i] + h01 * y[i + 1] + h11 * h * dy[i + 1];
    };
    return {x, herm(a, da), herm(phi, dphi)};
}

MonopoleProfile profile_from_integration(const IntegrationResult& res, const MetricProfile& metric,
                                         double beta, double tol) {
    MonopoleProfile p;
    p.metric = metric.name();
    p.beta = beta;
    p.tol = tol;
    p.classification = res.classification;
    p.stats = res.stats;
    p.delta = res.delta;
    for (const auto& s : res.samples) {
        p.r.push_back(s.r);
        p.a.push_back(s.a());
        p.phi.push_back(s.phi());
        p.v.push_back(s.v);
    }
    p.tail.event = res.terminal_event;
    if (res.classification == Classification::flat) {
        p.mass = 0.0;
    } else if (!p.r.empty() && p.r.back() > 0.0) {
        p.tail.r_end = p.r.back();
        p.tail.a_end = p.a.back();
        p.tail.phi_end = p.phi.back();
        if (metric.nonparabolic()) {
            p.tail.green_end = metric.green_tail(p.tail.r_end);
            p.tail.error_bound = 2.0 * p.tail.a_end * p.tail.a_end * p.tail.green_end;
            p.mass = -2.0 * (p.tail.phi_end - p.tail.green_end);
        }
    }
    p.attach_derivatives(metric);
    return p;
}

}  // namespace g2mono
