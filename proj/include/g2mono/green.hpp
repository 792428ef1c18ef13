#pragma once

#include "g2mono/metric.hpp"

#include <vector>

namespace g2mono {

/// Abelian monopole a = 0 with phi_D = -mass - charge * G.
struct DiracMonopole {
    MetricPtr metric;
    int charge = 0;
    double mass = 0.0;

    double phi(double r) const;
    /// phi_D + mass, without the cancellation
    double excess(double r) const;
    /// phi_D' = charge / (2 h^2)
    double dphi(double r) const;
};

DiracMonopole dirac(MetricPtr metric, int charge, double mass);

/// sup over radii of |d/dr (2 h^2 phi_D')|, both derivatives taken by
/// fourth-order central differences of the quadrature-based field.
double harmonicity_check(const DiracMonopole& d, const std::vector<double>& radii);

struct AsymptoticFit {
    double exponent = 0.0;      // p in |phi_D + mass| ~ C rho^p
    double coefficient = 0.0;   // C / |charge|
    double raw_slope = 0.0;     // plain log-log least-squares slope
    double raw_coefficient = 0.0;
    double max_residual = 0.0;  // of the corrected model, in log space
    double rho_lo = 0.0, rho_hi = 0.0;
    int points = 0;
    int corrections = 0;
};

/**
 * Least-squares fit of log|phi_D + mass| = log C + p log rho + sum_k c_k rho^-k,
 * k = 1..corrections, on log-spaced samples of [rho_lo, rho_hi]. The
 * correction terms absorb the finite-radius offsets of the background.
 */
AsymptoticFit asymptotic_fit(const DiracMonopole& d, double rho_lo, double rho_hi, int points = 41,
                             int corrections = 3);

}  // namespace g2mono
