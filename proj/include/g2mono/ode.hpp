#pragma once

#include "g2mono/dopri5.hpp"
#include "g2mono/metric.hpp"
#include "g2mono/series.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace g2mono {

struct ProfileState {
    double r = 0.0;
    double a = 0.0;
    double phi = 0.0;
};

/// (a', phi') with respect to r.
struct FieldDerivative {
    double da = 0.0;
    double dphi = 0.0;
};

/// Minus-type system: a' = 2 phi a, phi' = (a^2 - 1) / (2 h^2).
FieldDerivative rhs_minus(const ProfileState& state, const MetricProfile& metric);

/// Plus-type system: a' = sigma 2 a phi, phi' = sigma (1 + a^2) / (2 h^2).
/// sigma = -1 is the P(2,1) system, sigma = +1 the P(1,2) system.
FieldDerivative rhs_plus(const ProfileState& state, const MetricProfile& metric, int sigma);

/// SU(3) fields (b1, b2, b3, phi1, phi2).
template <class T>
using SU3Fields = std::array<T, 5>;

/**
 * Five-field system, derivatives with respect to rho, evaluated at the fiber
 * coordinate s > 0:
 *
 *   b1' = (f/s) b2 b3 - b1 (2 phi1 + phi2)
 *   b2' = (f/s) b1 b3 + b2 (phi1 - phi2)
 *   b3' = (f/s) b1 b2 + b3 (phi1 + 2 phi2)
 *   phi1' = (b2^2 - b1^2 - 1) / (2 h^2)
 *   phi2' = (b3^2 - b2^2 + 1) / (2 h^2)
 *
 * Templated on the field type so that complex branches can be checked.
 */
template <class T>
SU3Fields<T> rhs_su3(double s, const SU3Fields<T>& y) {
    if (!(s > 0.0)) throw DomainError("rhs_su3 needs s > 0");
    const double fs = BSParametrization::f(s) / s;
    const double inv = 1.0 / (2.0 * BSParametrization::h2_of_s(s));
    const T& b1 = y[0];
    const T& b2 = y[1];
    const T& b3 = y[2];
    const T& p1 = y[3];
    const T& p2 = y[4];
    return {fs * b2 * b3 - b1 * (2.0 * p1 + p2),
            fs * b1 * b3 + b2 * (p1 - p2),
            fs * b1 * b2 + b3 * (p1 + 2.0 * p2),
            (b2 * b2 - b1 * b1 - 1.0) * inv,
            (b3 * b3 - b2 * b2 + 1.0) * inv};
}

enum class Classification { bounded, blowup, flat };
std::string to_string(Classification c);

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
    double final_radius = 0.0;
};

/// Minus-type sample in the (v, w) variables, v = 2 log a, w = v' = 4 phi.
struct MonopoleSample {
    double r = 0.0;
    double v = 0.0;
    double w = 0.0;
    double a() const;
    double phi() const { return 0.25 * w; }
};

struct IntegrationResult {
    std::vector<MonopoleSample> samples;
    Classification classification = Classification::bounded;
    IntegrationStats stats;
    std::string terminal_event;
    double delta = 0.0;
    /// first radius where v > 0 and v' > 0 (negative if never)
    double certified_blowup_radius = -1.0;
};

struct MonopoleIntegrationOptions {
    double r_max = 10.0;
    double tol = 1e-10;
    /// Stop early once a < a_stop and the tail bound 2 a^2 G <= tol / 10.
    bool stop_on_tail = false;
    double a_stop = 1e-8;
    /// The tail stop is not taken before this radius.
    double tail_min_radius = 0.0;
    /// Beyond the point where a < a_floor the field equations are replaced
    /// by the exact Green's-function flow.
    double a_floor = 1e-120;
    int samples_per_step = 4;
    /// Number of series samples on (0, delta].
    int series_samples = 8;
    double blowup_v = 50.0;
    double blowup_phi_r = 1e6;
};

/**
 * Integrates the minus-type system from the singular origin: the series
 * supplies data at delta, then the (v, v') system is stepped in the metric's
 * chart. Samples start with r = 0.
 */
IntegrationResult integrate_minus(const MetricProfile& metric, const SeriesSolution& series,
                                  const MonopoleIntegrationOptions& options);

/// Same, from explicit data (r0, v0, w0) with r0 > 0.
IntegrationResult integrate_minus_from(const MetricProfile& metric, double r0, double v0, double w0,
                                       const MonopoleIntegrationOptions& options);

struct FieldTrace {
    std::vector<ProfileState> samples;  // ordered along the integration direction
    IntegrationStats stats;
};

/// Integrates (a, phi) for the minus (sigma = 0) or plus (sigma = +-1) system
/// from r0 to r1, forward or backward.
FieldTrace integrate_fields(const MetricProfile& metric, int sigma, const ProfileState& start, double r1,
                            double tol, int samples_per_step = 4);

struct SU3Sample {
    double s = 0.0;
    double rho = 0.0;
    SU3Fields<double> y{};
};

struct SU3Trace {
    std::vector<SU3Sample> samples;
    IntegrationStats stats;
};

/// Integrates the five-field system in s from s0 to s1.
SU3Trace integrate_su3(double s0, const SU3Fields<double>& y0, double s1, double tol, int samples_per_step = 2);

struct EnvelopeReport {
    bool passed = true;
    std::size_t samples_checked = 0;
    std::size_t lower_violations = 0;
    std::size_t upper_violations = 0;
    double worst_lower_margin = 0.0;  // min (v - max(v_b, v_u))
    double worst_upper_margin = 0.0;  // min (-v)
    /// samples where v exceeds the linear comparison v_u
    std::size_t above_linear_comparison = 0;
    std::vector<double> r, v, v_b, v_u;
};

/**
 * Comparison envelopes past the hand-off radius delta, with k2 = -v(delta),
 * k1 = -v'(delta):
 *   v_b = -k2 - k1 (r - delta) - 2 int_delta^r int_delta^t h^-2
 *   v_u solves v'' = (2/h^2) v with the same data.
 * Both are lower bounds; the upper bound is 0. Checks
 * max(v_b, v_u) - slack <= v <= slack at every sample with r >= delta.
 */
EnvelopeReport envelope_check(const IntegrationResult& result, const MetricProfile& metric, double slack = 1e-8);

}  // namespace g2mono
