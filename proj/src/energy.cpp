#include "g2mono/energy.hpp"

#include "g2mono/errors.hpp"

#include <algorithm>
#include <cmath>

namespace g2mono {

namespace {

// density and its r-derivative along a solution
std::pair<double, double> density_pair(double r, double a, double phi, const MetricProfile& metric) {
    if (r <= 0.0) return {0.0, 0.0};
    const double H = metric.h2(r);
    const double dH = metric.dh2(r);
    const double a2 = a * a;
    const double q = a2 - 1.0;
    const double f = q * q / (2.0 * H) + 4.0 * a2 * phi * phi;
    const double df = 4.0 * phi * a2 * q / H - q * q * dH / (2.0 * H * H) + 16.0 * a2 * phi * phi * phi +
                      4.0 * a2 * phi * q / H;
    return {f, df};
}

}  // namespace

double energy_density(double r, double a, double phi, const MetricProfile& metric) {
    return density_pair(r, a, phi, metric).first;
}

EnergyReport intermediate_energy(const MonopoleProfile& p, const MetricProfile& metric) {
    if (p.classification == Classification::blowup)
        throw UndefinedEnergyError("energy is undefined for a blow-up profile");
    EnergyReport rep;
    rep.half_mass = 0.5 * p.mass;
    if (p.classification == Classification::flat || p.size() == 0) {
        rep.partial.assign(p.size(), 0.0);
        return rep;
    }
    rep.partial.assign(p.size(), 0.0);
    auto prev = density_pair(p.r[0], p.a[0], p.phi[0], metric);
    double acc = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) {
        const auto cur = density_pair(p.r[i], p.a[i], p.phi[i], metric);
        const double h = p.r[i] - p.r[i - 1];
        acc += 0.5 * h * (prev.first + cur.first) + h * h / 12.0 * (prev.second - cur.second);
        rep.partial[i] = acc;
        const double b = p.phi[i] * (p.a[i] * p.a[i] - 1.0);
        rep.partial_max_deviation = std::max(rep.partial_max_deviation, std::abs(acc - b));
        prev = cur;
    }
    rep.quadrature_part = acc;
    const double R = p.r.back();
    // beyond R the density is (1 - a^2)^2 / (2 h^2) up to O(a^2)
    const double q = 1.0 - p.a.back() * p.a.back();
    rep.tail_part = R > 0.0 ? q * q * metric.green_tail(R) : 0.0;
    rep.energy = acc + rep.tail_part;
    rep.boundary = p.phi.back() * (p.a.back() * p.a.back() - 1.0);
    rep.identity_residual = std::abs(rep.energy - rep.half_mass);
    return rep;
}

double boundary_term(const MonopoleProfile& p, const MetricProfile& metric, double R) {
    if (p.size() == 0 || R < p.r.front() || R > p.r.back())
        throw DomainError("boundary radius outside the sampled range");
    const ProfileState st = p.at(R, metric);
    return st.phi * (st.a * st.a - 1.0);
}

}  // namespace g2mono
