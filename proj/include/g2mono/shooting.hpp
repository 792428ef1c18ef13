#pragma once

#include "g2mono/metric.hpp"
#include "g2mono/profile.hpp"

#include <utility>
#include <vector>

namespace g2mono {

struct SolveOptions {
    double tol = 1e-10;          // target accuracy of the extracted mass
    int order = 12;              // series order at the origin
    double a_stop = 1e-8;
    double r_extent = 10.0;      // profiles always cover [0, r_extent]
    double r_limit = 2e4;        // hard cap on the integration radius
    int samples_per_step = 4;
};

/// Integrator tolerance used for a requested mass accuracy.
double integrator_tolerance(double tol);

struct MassEvaluation {
    double beta = 0.0;
    double mass = 0.0;
    bool flat = false;
    TailInfo tail;
    IntegrationStats stats;
};

/// Mass as a function of the shooting parameter beta = v_2.
/// beta > 0 throws NoSolutionError; beta = 0 returns the flat solution.
MassEvaluation evaluate_mass(double beta, const MetricProfile& metric, const SolveOptions& options = {});
double mass_of_beta(double beta, const MetricProfile& metric, double tol = 1e-10);

struct ShootingResult {
    double beta = 0.0;
    double mass = 0.0;
    int iterations = 0;
    std::vector<std::pair<double, double>> history;  // (beta, mass) evaluations
};

/// Inverts mass_of_beta by bracketing, bisection, then safeguarded secant.
/// Throws OutOfRangeError when no bracket exists in [-1e6, 0).
ShootingResult shoot(double mass, const MetricProfile& metric, const SolveOptions& options = {});
double beta_of_mass(double mass, const MetricProfile& metric, double tol = 1e-10);

/// Full profile at a given beta (flat for beta = 0).
MonopoleProfile solve_beta(const MetricProfile& metric, double beta, const SolveOptions& options = {});
/// Full profile at a given mass.
MonopoleProfile solve_monopole(const MetricProfile& metric, double mass, const SolveOptions& options = {});

struct BubblingRow {
    double lambda = 0.0;
    double mass_extracted = 0.0;
    double beta = 0.0;
    double bps_sup = 0.0;            // sup_{r <= R/lambda} |a - lambda r / sinh(lambda r)|
    std::size_t bps_samples = 0;
    double translated_min = 0.0;     // min over r >= r0 of u = G - m/2 - phi
    double translated_excess = 0.0;  // max over r >= r0 of u - G a^2
    std::size_t translated_samples = 0;
    bool inequality_holds = false;
};

struct BubblingReport {
    std::vector<BubblingRow> rows;
    double slack = 0.0;
    bool bps_decreasing = false;
    bool inequality_everywhere = false;
};

BubblingReport bubbling_report(const std::vector<double>& masses, const MetricProfile& metric, double R = 1.0,
                               double r0 = 1.0, const SolveOptions& options = {}, double slack = 1e-9);

}  // namespace g2mono
