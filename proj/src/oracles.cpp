#include "g2mono/oracles.hpp"

#include "g2mono/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace g2mono {

namespace {

constexpr double kSeriesSwitch = 0.1;

// Horner in x^2: sum c[j] x^(2j)
template <std::size_t N>
double even_poly(const std::array<double, N>& c, double x) {
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t j = N; j-- > 0;) acc = acc * x2 + c[j];
    return acc;
}

// sinh(x)/x and its derivative
double sinc_h(double x) {
    if (std::abs(x) < kSeriesSwitch) {
        static constexpr std::array<double, 7> c{1.0, 1.0 / 6, 1.0 / 120, 1.0 / 5040, 1.0 / 362880,
                                                 1.0 / 39916800, 1.0 / 6227020800.0};
        return even_poly(c, x);
    }
    return std::sinh(x) / x;
}

double sinc_h_prime(double x) {
    if (std::abs(x) < kSeriesSwitch) {
        // sum 2j x^(2j-1) / (2j+1)!
        static constexpr std::array<double, 6> c{2.0 / 6, 4.0 / 120, 6.0 / 5040, 8.0 / 362880,
                                                 10.0 / 39916800, 12.0 / 6227020800.0};
        return x * even_poly(c, x);
    }
    return (x * std::cosh(x) - std::sinh(x)) / (x * x);
}

// x coth x - 1
double xcoth_m1(double x) {
    if (std::abs(x) < kSeriesSwitch) {
        static constexpr std::array<double, 6> c{1.0 / 3, -1.0 / 45, 2.0 / 945, -1.0 / 4725, 2.0 / 93555,
                                                 -1382.0 / 638512875};
        return x * x * even_poly(c, x);
    }
    return x / std::tanh(x) - 1.0;
}

// 1/sinh^2 x - 1/x^2
double csch2_m(double x) {
    if (std::abs(x) < kSeriesSwitch) {
        static constexpr std::array<double, 6> c{-1.0 / 3, 1.0 / 15, -2.0 / 189, 1.0 / 675, -2.0 / 10395,
                                                 1382.0 / 58046625};
        return even_poly(c, x);
    }
    const double s = std::sinh(x);
    return 1.0 / (s * s) - 1.0 / (x * x);
}

void require_nonnegative(double r) {
    if (!(r >= 0.0)) throw DomainError("closed forms need r >= 0");
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::bps: return "bps";
        case Family::bps_mass: return "bps_mass";
        case Family::hyperbolic: return "hyperbolic";
        case Family::dirac_euclidean: return "dirac_euclidean";
        case Family::bs_instanton: return "bs_instanton";
        case Family::su3_instanton: return "su3_instanton";
        case Family::flat: return "flat";
    }
    return "unknown";
}

Family parse_family(const std::string& n) {
    for (auto f : {Family::bps, Family::bps_mass, Family::hyperbolic, Family::dirac_euclidean, Family::bs_instanton,
                   Family::su3_instanton, Family::flat})
        if (to_string(f) == n) return f;
    throw UsageError("unknown oracle family '" + n + "'");
}

ClosedForm ClosedForm::bps(double C, double D) {
    if (!(C > 0.0) || !(D >= 0.0)) throw DomainError("bps family needs C > 0 and D >= 0");
    ClosedForm f;
    f.family = Family::bps;
    f.C = C;
    f.D = D;
    return f;
}
ClosedForm ClosedForm::bps_mass(double m) {
    if (!(m > 0.0)) throw DomainError("mass must be positive");
    ClosedForm f = bps(m, 0.0);
    f.family = Family::bps_mass;
    f.m = m;
    return f;
}
ClosedForm ClosedForm::hyperbolic(double m) {
    if (!(m > 0.0)) throw DomainError("mass must be positive");
    ClosedForm f;
    f.family = Family::hyperbolic;
    f.m = m;
    return f;
}
ClosedForm ClosedForm::dirac_euclidean(double m) {
    if (!(m >= 0.0)) throw DomainError("mass must be nonnegative");
    ClosedForm f;
    f.family = Family::dirac_euclidean;
    f.m = m;
    return f;
}
ClosedForm ClosedForm::bs_instanton(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("instanton sign must be +1 or -1");
    ClosedForm f;
    f.family = Family::bs_instanton;
    f.sign = sign;
    return f;
}
ClosedForm ClosedForm::su3_instanton(double c, int branch) {
    if (branch != 1 && branch != -1) throw DomainError("su3 branch must be +1 or -1");
    if (!(c >= -1.0)) throw DomainError("su3 family needs c >= -1");
    ClosedForm f;
    f.family = Family::su3_instanton;
    f.c = c;
    f.branch = branch;
    return f;
}
ClosedForm ClosedForm::flat() { return ClosedForm{}; }

bool ClosedForm::is_monopole_type() const { return family != Family::su3_instanton; }

MetricId ClosedForm::natural_metric() const {
    switch (family) {
        case Family::hyperbolic: return MetricId::hyperbolic;
        case Family::bs_instanton: return sign > 0 ? MetricId::bs_s4 : MetricId::bs_cp2;
        case Family::su3_instanton: return MetricId::bs_cp2;
        default: return MetricId::euclidean;
    }
}

ProfileState eval(const ClosedForm& f, double r) {
    switch (f.family) {
        case Family::bps:
        case Family::bps_mass: {
            require_nonnegative(r);
            if (f.D == 0.0) {
                const double x = f.C * r;
                if (x == 0.0) return {r, 1.0, 0.0};
                return {r, 1.0 / sinc_h(x), -0.5 * f.C * xcoth_m1(x) / x};
            }
            if (!(r > 0.0)) throw DomainError("bps family with D > 0 needs r > 0");
            const double u = f.C * r + f.D;
            return {r, f.C * r / std::sinh(u), 0.5 * (1.0 / r - f.C / std::tanh(u))};
        }
        case Family::hyperbolic: {
            require_nonnegative(r);
            const double k = f.m + 1.0;
            if (r == 0.0) return {r, 1.0, 0.0};
            return {r, sinc_h(r) / sinc_h(k * r), (xcoth_m1(r) - xcoth_m1(k * r)) / (2.0 * r)};
        }
        case Family::dirac_euclidean:
            if (!(r > 0.0)) throw DomainError("Dirac family needs r > 0");
            return {r, 0.0, -f.m + 0.5 / r};
        case Family::bs_instanton:
        case Family::flat:
            require_nonnegative(r);
            return {r, 1.0, 0.0};
        case Family::su3_instanton: break;
    }
    throw UnsupportedError("su3_instanton has five fields; use su3_state");
}

FieldDerivative eval_derivative(const ClosedForm& f, double r) {
    switch (f.family) {
        case Family::bps:
        case Family::bps_mass: {
            require_nonnegative(r);
            if (f.D == 0.0) {
                const double x = f.C * r;
                const double s = sinc_h(x);
                return {-f.C * sinc_h_prime(x) / (s * s), 0.5 * f.C * f.C * csch2_m(x)};
            }
            if (!(r > 0.0)) throw DomainError("bps family with D > 0 needs r > 0");
            const double u = f.C * r + f.D;
            const double sh = std::sinh(u);
            return {f.C / sh - f.C * f.C * r * std::cosh(u) / (sh * sh),
                    0.5 * (-1.0 / (r * r) + f.C * f.C / (sh * sh))};
        }
        case Family::hyperbolic: {
            require_nonnegative(r);
            const double k = f.m + 1.0;
            const double A = sinc_h(r), B = sinc_h(k * r);
            return {sinc_h_prime(r) / B - k * A * sinc_h_prime(k * r) / (B * B),
                    0.5 * (-csch2_m(r) + k * k * csch2_m(k * r))};
        }
        case Family::dirac_euclidean:
            if (!(r > 0.0)) throw DomainError("Dirac family needs r > 0");
            return {0.0, -0.5 / (r * r)};
        case Family::bs_instanton:
        case Family::flat:
            require_nonnegative(r);
            return {0.0, 0.0};
        case Family::su3_instanton: break;
    }
    throw UnsupportedError("su3_instanton has five fields; use su3_state_derivative");
}

InstantonProfile bs_instanton_profile(int sign, double s) {
    if (sign != 1 && sign != -1) throw DomainError("instanton sign must be +1 or -1");
    if (!(s >= 0.0)) throw DomainError("s must be nonnegative");
    return {1.0, 1.0 / std::sqrt(1.0 + s * s)};
}

namespace {

double su3_denominator(double c, double s) {
    const double d = s * s * (1.0 + c) + 2.0 * (std::sqrt(1.0 + s * s) + 1.0);
    if (!(d > 0.0)) throw DomainError("su3 family denominator is not positive");
    return d;
}

}  // namespace

double su3_u(double c, double s) {
    if (!(s >= 0.0)) throw DomainError("s must be nonnegative");
    return 1.0 - 2.0 * c * s * s / su3_denominator(c, s);
}

double su3_du_ds(double c, double s) {
    if (!(s >= 0.0)) throw DomainError("s must be nonnegative");
    const double d = su3_denominator(c, s);
    const double dd = 2.0 * s * (1.0 + c) + 2.0 * s / std::sqrt(1.0 + s * s);
    return -2.0 * c * (2.0 * s * d - s * s * dd) / (d * d);
}

SU3Fields<std::complex<double>> su3_state(const ClosedForm& f, double s) {
    if (f.family != Family::su3_instanton) throw UnsupportedError("not an su3 family");
    using C = std::complex<double>;
    const double u = su3_u(f.c, s);
    C b1(0.0);
    if (f.c != 0.0) {
        // b1^2 = u^2 - 1 = s^2 q without cancellation
        const double q = -2.0 * f.c * (u + 1.0) / su3_denominator(f.c, s);
        b1 = s * std::sqrt(C(q, 0.0));
    }
    const double b = static_cast<double>(f.branch);
    return {b1, b * u, b * b1, C(0.0), C(0.0)};
}

SU3Fields<std::complex<double>> su3_state_derivative(const ClosedForm& f, double s) {
    if (f.family != Family::su3_instanton) throw UnsupportedError("not an su3 family");
    using C = std::complex<double>;
    const double inv_f = 1.0 / BSParametrization::f(s);
    const double u = su3_u(f.c, s);
    const double du = su3_du_ds(f.c, s);
    C db1(0.0);
    if (f.c != 0.0) {
        const double d = su3_denominator(f.c, s);
        const double dd = 2.0 * s * (1.0 + f.c) + 2.0 * s / std::sqrt(1.0 + s * s);
        const double q = -2.0 * f.c * (u + 1.0) / d;
        const double dq = -2.0 * f.c * (du * d - (u + 1.0) * dd) / (d * d);
        const C rq = std::sqrt(C(q, 0.0));
        db1 = rq + s * dq / (2.0 * rq);
    }
    const double b = static_cast<double>(f.branch);
    return {db1 * inv_f, C(b * du * inv_f), b * db1 * inv_f, C(0.0), C(0.0)};
}

double residual_minus(const ClosedForm& f, const MetricProfile& metric, const std::vector<double>& radii) {
    double worst = 0.0;
    for (double r : radii) {
        const ProfileState st = eval(f, r);
        const FieldDerivative d = eval_derivative(f, r);
        const FieldDerivative rhs = rhs_minus(st, metric);
        worst = std::max({worst, std::abs(d.da - rhs.da), std::abs(d.dphi - rhs.dphi)});
    }
    return worst;
}

double residual_su3(const ClosedForm& f, const std::vector<double>& s_values) {
    double worst = 0.0;
    for (double s : s_values) {
        const auto y = su3_state(f, s);
        const auto d = su3_state_derivative(f, s);
        const auto rhs = rhs_su3<std::complex<double>>(s, y);
        for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(d[i] - rhs[i]));
    }
    return worst;
}

double residual_profile(const MonopoleProfile& p, const MetricProfile& metric, double r_lo, double r_hi) {
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p.r[i] <= r_lo || p.r[i] >= r_hi || p.r[i] <= 0.0) continue;
        const double h1 = p.r[i] - p.r[i - 1];
        const double h2 = p.r[i + 1] - p.r[i];
        if (h1 <= 0.0 || h2 <= 0.0) continue;
        auto deriv = [&](const std::vector<double>& y) {
            return -h2 / (h1 * (h1 + h2)) * y[i - 1] + (h2 - h1) / (h1 * h2) * y[i] + h1 / (h2 * (h1 + h2)) * y[i + 1];
        };
        const FieldDerivative rhs = rhs_minus({p.r[i], p.a[i], p.phi[i]}, metric);
        worst = std::max({worst, std::abs(deriv(p.a) - rhs.da), std::abs(deriv(p.phi) - rhs.dphi)});
    }
    return worst;
}

PhysicalFields physical_fields(const MonopoleProfile& p, MetricId background) {
    if (background != MetricId::bs_s4 && background != MetricId::bs_cp2)
        throw UnsupportedError("physical fields are defined on Bryant-Salamon backgrounds only");
    if (p.size() == 0) throw DomainError("empty profile");
    const auto& bs = BSParametrization::instance();
    PhysicalFields out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double s = bs.s_of_rho(p.r[i]);
        out.rows.push_back({p.r[i], s, p.a[i] / std::sqrt(1.0 + s * s), p.phi[i]});
    }
    out.a_conn_origin = out.rows.front().a_conn;
    out.a_conn_end = out.rows.back().a_conn;
    out.decay_ratio_end = p.a.back();
    return out;
}

}  // namespace g2mono
