#pragma once

#include "g2mono/metric.hpp"
#include "g2mono/ode.hpp"
#include "g2mono/profile.hpp"

#include <complex>
#include <string>
#include <vector>

namespace g2mono {

enum class Family { bps, bps_mass, hyperbolic, dirac_euclidean, bs_instanton, su3_instanton, flat };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// Exact solution families. Parameters not used by a family are ignored.
struct ClosedForm {
    Family family = Family::flat;
    double C = 1.0;   // bps
    double D = 0.0;   // bps
    double m = 1.0;   // bps_mass, hyperbolic, dirac_euclidean
    int sign = 1;     // bs_instanton
    double c = 0.0;   // su3_instanton
    int branch = 1;   // su3_instanton: +1 (b2 = u, b1 = b3) or -1 (b2 = -u, b1 = -b3)

    static ClosedForm bps(double C, double D);
    static ClosedForm bps_mass(double m);
    static ClosedForm hyperbolic(double m);
    static ClosedForm dirac_euclidean(double m);
    static ClosedForm bs_instanton(int sign);
    static ClosedForm su3_instanton(double c, int branch);
    static ClosedForm flat();

    /// True for the families that solve the (a, phi) minus-type system.
    bool is_monopole_type() const;
    /// The background on which the family solves its system.
    MetricId natural_metric() const;
};

/// (a, phi) at r; removable singularities at r = 0 are evaluated by series.
ProfileState eval(const ClosedForm& form, double r);
/// (a', phi') from differentiating the closed form.
FieldDerivative eval_derivative(const ClosedForm& form, double r);

struct InstantonProfile {
    double a_solver = 1.0;  // b = 1 in solver variables
    double a_conn = 1.0;    // f^2 = (1 + s^2)^(-1/2)
};
InstantonProfile bs_instanton_profile(int sign, double s);

double su3_u(double c, double s);
double su3_du_ds(double c, double s);

/// SU(3) instanton state at s (complex: b1 = b3 are imaginary for c > 0).
SU3Fields<std::complex<double>> su3_state(const ClosedForm& form, double s);
/// Its derivative with respect to rho.
SU3Fields<std::complex<double>> su3_state_derivative(const ClosedForm& form, double s);

/// sup over radii of max(|a' - rhs_a|, |phi' - rhs_phi|) against rhs_minus.
double residual_minus(const ClosedForm& form, const MetricProfile& metric, const std::vector<double>& radii);
/// sup over s of the largest componentwise residual against rhs_su3.
double residual_su3(const ClosedForm& form, const std::vector<double>& s_values);
/// Residual of a sampled profile against rhs_minus, using three-point
/// nonuniform differences at interior samples in (r_lo, r_hi).
double residual_profile(const MonopoleProfile& profile, const MetricProfile& metric, double r_lo, double r_hi);

struct PhysicalRow {
    double rho = 0.0;
    double s = 0.0;
    double a_conn = 0.0;
    double phi = 0.0;
};

struct PhysicalFields {
    std::vector<PhysicalRow> rows;
    double a_conn_origin = 0.0;
    double a_conn_end = 0.0;
    double decay_ratio_end = 0.0;  // a_conn / f^2 at the last sample
};

/// a_conn = f^2(s) a on a Bryant-Salamon background.
PhysicalFields physical_fields(const MonopoleProfile& profile, MetricId background);

}  // namespace g2mono
