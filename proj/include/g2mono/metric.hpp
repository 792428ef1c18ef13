#pragma once

#include "g2mono/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace g2mono {

enum class MetricId { euclidean, hyperbolic, bs_s4, bs_cp2, custom };

std::string to_string(MetricId id);
MetricId parse_metric_id(const std::string& name);

/**
 * Radial background g = dr^2 + h(r)^2 g_{S^2}.
 *
 * Besides h^2 and its derivative, a profile exposes an integration chart x:
 * the coordinate in which the ODE solvers step. For the Euclidean and
 * hyperbolic backgrounds x = r. For the Bryant-Salamon backgrounds x = s,
 * with dr/ds = f(s), so that no radius inversion happens inside the solver.
 *
 * Profiles are immutable after construction and safe to share across threads.
 */
class MetricProfile {
public:
    virtual ~MetricProfile() = default;

    virtual MetricId id() const = 0;
    virtual std::string name() const { return to_string(id()); }

    /// h^2(r) for r > 0; throws DomainError otherwise.
    virtual double h2(double r) const = 0;
    /// d(h^2)/dr.
    virtual double dh2(double r) const = 0;
    double h(double r) const;

    /// Whether the tail integral of 1/(2h^2) converges.
    virtual bool nonparabolic() const = 0;
    /// G(r) = int_r^inf dt / (2 h^2(t)) >= 0.
    virtual double green_tail(double r) const = 0;

    /// Coefficients phi_0..phi_order of h^2/r^2 as exact rationals.
    /// Throws UnsupportedError when the backend has no exact data.
    virtual std::vector<Rational> exact_series(int order) const;
    virtual bool has_exact_series() const { return true; }
    /// Same coefficients in double precision.
    virtual std::vector<double> series_coeffs(int order) const;
    /// Radius up to which the truncated series is a faithful model of h^2.
    virtual double series_radius() const = 0;
    /// Estimate of |h^2(r) - r^2 sum_{i<=order} phi_i r^i| on (0, series_radius].
    double series_truncation_bound(double r, int order) const;

    virtual bool uses_s_chart() const { return false; }
    virtual double coord_of_radius(double r) const { return r; }
    virtual double radius_of_coord(double x) const { return x; }
    /// dr/dx.
    virtual double dradius_dcoord(double) const { return 1.0; }
    virtual double h2_at_coord(double x) const { return h2(x); }
    /// d(h^2)/dx.
    virtual double dh2_at_coord(double x) const { return dh2(x); }
    virtual double green_at_coord(double x) const { return green_tail(x); }
};

using MetricPtr = std::shared_ptr<const MetricProfile>;

/// Built-in backends. For MetricId::custom use load_custom_metric.
MetricPtr make_metric(MetricId id);
/// Accepts a built-in name or a path to a custom key=value metric file.
MetricPtr make_metric(const std::string& name_or_path);

/**
 * Custom background from a key=value file:
 *
 *     type=custom
 *     coeffs=1,0,1/3          # phi_i of h^2/r^2 near the origin
 *     r_series=0.5            # optional, default 0.5
 *     table=far.csv           # optional r,h samples for the far field
 *
 * Inside r_series the polynomial model is used; between the table points
 * h is interpolated monotonically in log-log space; beyond the last point
 * h follows the power law of the last two samples.
 */
MetricPtr load_custom_metric(const std::string& path);

/// The s <-> rho reparametrization shared by both Bryant-Salamon backgrounds.
class BSParametrization {
public:
    static const BSParametrization& instance();

    static double f(double s);
    static double h2_of_s(double s);
    static double dh2_ds(double s);

    double rho_of_s(double s) const;
    double s_of_rho(double rho) const;
    /// G as a function of s: int_s^inf (1+t^2)^(-3/4) / (2 t^2) dt.
    double green_of_s(double s) const;
    /// lim_{s->inf} rho(s) - 2 sqrt(s).
    double rho_offset() const { return offset_; }

    static constexpr double kPanel = 0.25;
    static constexpr double kRhoCacheEnd = 16.0;
    static constexpr double kGreenCacheEnd = 4.0;

private:
    BSParametrization();
    static double rho_asymptotic(double s);   // without the constant
    static double green_asymptotic(double s);

    std::vector<double> rho_nodes_;    // rho at k * kPanel
    std::vector<double> green_nodes_;  // int_{k kPanel}^{kGreenCacheEnd} of the regular part
    double offset_ = 0.0;
    double green_end_ = 0.0;
};

}  // namespace g2mono
