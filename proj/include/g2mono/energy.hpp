#pragma once

#include "g2mono/metric.hpp"
#include "g2mono/profile.hpp"

#include <vector>

namespace g2mono {

struct EnergyReport {
    double energy = 0.0;          // integral of 2 h^2 phi'^2 + 4 a^2 phi^2 over (0, inf)
    double quadrature_part = 0.0; // over the sampled range
    double tail_part = 0.0;       // analytic tail (1 - a(R)^2)^2 G(R)
    double boundary = 0.0;        // phi(R)(a(R)^2 - 1) at the last sample
    double half_mass = 0.0;       // profile mass / 2
    double identity_residual = 0.0;        // |energy - half_mass|
    double partial_max_deviation = 0.0;    // max_R |int_0^R density - boundary(R)|
    std::vector<double> partial;           // cumulative integrals at each sample
};

/// Energy density 2 h^2 phi'^2 + 4 a^2 phi^2 with phi' from the field equation.
double energy_density(double r, double a, double phi, const MetricProfile& metric);

/// Hermite-corrected trapezoid on the profile grid plus the Green's-function tail.
/// Throws UndefinedEnergyError for blow-up profiles.
EnergyReport intermediate_energy(const MonopoleProfile& profile, const MetricProfile& metric);

/// phi(R) (a(R)^2 - 1); R must lie in the sampled range.
double boundary_term(const MonopoleProfile& profile, const MetricProfile& metric, double R);

}  // namespace g2mono
