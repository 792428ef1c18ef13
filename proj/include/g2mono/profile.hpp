#pragma once

#include "g2mono/metric.hpp"
#include "g2mono/ode.hpp"

#include <string>
#include <vector>

namespace g2mono {

struct TailInfo {
    double r_end = 0.0;
    double a_end = 0.0;
    double phi_end = 0.0;
    double green_end = 0.0;   // G(r_end), the applied correction
    double error_bound = 0.0; // 2 a(r_end)^2 G(r_end)
    std::string event;
};

/// A solved (a, phi) pair on a radial grid, with mass and tail data.
struct MonopoleProfile {
    std::string metric;  // built-in name or custom file path
    double beta = 0.0;
    double mass = 0.0;   // extracted: -2 (phi(R) - G(R))
    double tol = 0.0;
    Classification classification = Classification::bounded;
    TailInfo tail;
    IntegrationStats stats;
    double delta = 0.0;

    std::vector<double> r, a, phi, v;
    // derivatives from the field equations, filled by attach_derivatives
    std::vector<double> da, dphi;

    std::size_t size() const { return r.size(); }

    /// Fills da, dphi from the minus-type equations (phi'(0) = beta / 2).
    void attach_derivatives(const MetricProfile& metric);

    /// Cubic Hermite interpolation on samples; beyond the last sample the
    /// Green's-function tail phi = phi_end - G(r_end) + G(r) is used.
    ProfileState at(double radius, const MetricProfile& metric) const;
};

MonopoleProfile profile_from_integration(const IntegrationResult& res, const MetricProfile& metric,
                                         double beta, double tol);

}  // namespace g2mono
