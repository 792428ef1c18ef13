#include "g2mono/shooting.hpp"

#include "g2mono/errors.hpp"
#include "g2mono/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace g2mono {

double integrator_tolerance(double tol) { return std::clamp(tol * 1e-2, 1e-13, 1e-6); }

namespace {

MonopoleIntegrationOptions integration_options(const SolveOptions& o, int samples_per_step) {
    MonopoleIntegrationOptions io;
    io.r_max = o.r_limit;
    io.tol = integrator_tolerance(o.tol);
    io.stop_on_tail = true;
    io.a_stop = o.a_stop;
    io.tail_min_radius = o.r_extent;
    io.samples_per_step = samples_per_step;
    return io;
}

void reject_positive(double beta) {
    if (beta > 0.0)
        throw NoSolutionError("no solution for positive beta = " + std::to_string(beta) +
                              ": the trajectory blows up at finite radius");
}

}  // namespace

MassEvaluation evaluate_mass(double beta, const MetricProfile& metric, const SolveOptions& o) {
    reject_positive(beta);
    if (!metric.nonparabolic()) throw NonParabolicRequiredError("mass extraction needs a nonparabolic metric");
    MassEvaluation out;
    out.beta = beta;
    if (beta == 0.0) {
        out.flat = true;
        return out;
    }
    const auto series = v_series(beta, metric.series_coeffs(o.order), o.order);
    auto io = integration_options(o, 0);
    io.series_samples = 1;
    const auto res = integrate_minus(metric, series, io);
    if (res.classification != Classification::bounded)
        throw OutOfRangeError("integration at beta = " + std::to_string(beta) + " did not stay bounded");
    const auto& end = res.samples.back();
    out.tail.r_end = end.r;
    out.tail.a_end = end.a();
    out.tail.phi_end = end.phi();
    out.tail.green_end = metric.green_tail(end.r);
    out.tail.error_bound = 2.0 * out.tail.a_end * out.tail.a_end * out.tail.green_end;
    out.tail.event = res.terminal_event;
    out.mass = -2.0 * (out.tail.phi_end - out.tail.green_end);
    out.stats = res.stats;
    return out;
}

double mass_of_beta(double beta, const MetricProfile& metric, double tol) {
    SolveOptions o;
    o.tol = tol;
    return evaluate_mass(beta, metric, o).mass;
}

ShootingResult shoot(double mass, const MetricProfile& metric, const SolveOptions& o) {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    ShootingResult sr;
    auto eval = [&](double beta) {
        const double m = evaluate_mass(beta, metric, o).mass;
        sr.history.emplace_back(beta, m);
        ++sr.iterations;
        return m;
    };

    constexpr double kBetaMin = -1e6;
    double lo = std::max(-2.0 * mass * mass, kBetaMin);  // larger |beta|, larger mass
    double hi = std::max(-mass * mass / 100.0, lo / 4.0);
    double m_lo = eval(lo);
    while (m_lo < mass) {
        hi = lo;
        if (lo <= kBetaMin) throw OutOfRangeError("no beta bracket for mass " + std::to_string(mass) + " in [-1e6, 0)");
        lo = std::max(lo * 4.0, kBetaMin);
        m_lo = eval(lo);
    }
    double m_hi = eval(hi);
    while (m_hi > mass) {
        lo = hi;
        m_lo = m_hi;
        hi /= 4.0;
        if (hi > -1e-14) throw OutOfRangeError("no beta bracket for mass " + std::to_string(mass) + " near 0");
        m_hi = eval(hi);
    }

    // mass is close to linear in t = sqrt(-beta)
    double t_a = std::sqrt(-hi), f_a = m_hi - mass;
    double t_b = std::sqrt(-lo), f_b = m_lo - mass;
    double t = t_a, f = f_a;
    if (std::abs(f_b) < std::abs(f_a)) {
        t = t_b;
        f = f_b;
    }
    int side = 0;
    for (int it = 0; it < 200 && std::abs(f) > 0.5 * o.tol; ++it) {
        double cand;
        if (std::abs(f_b - f_a) > 0.1 * mass) {
            cand = 0.5 * (t_a + t_b);
        } else {
            cand = (t_a * f_b - t_b * f_a) / (f_b - f_a);  // Illinois-weighted secant
            if (!(cand > std::min(t_a, t_b) && cand < std::max(t_a, t_b))) cand = 0.5 * (t_a + t_b);
        }
        if (std::abs(t_b - t_a) <= 4e-16 * t_b) break;
        t = cand;
        f = eval(-t * t) - mass;
        if ((f < 0.0) == (f_a < 0.0)) {
            t_a = t;
            f_a = f;
            if (side == -1) f_b *= 0.5;
            side = -1;
        } else {
            t_b = t;
            f_b = f;
            if (side == 1) f_a *= 0.5;
            side = 1;
        }
    }
    sr.beta = -t * t;
    sr.mass = f + mass;
    return sr;
}

double beta_of_mass(double mass, const MetricProfile& metric, double tol) {
    SolveOptions o;
    o.tol = tol;
    return shoot(mass, metric, o).beta;
}

MonopoleProfile solve_beta(const MetricProfile& metric, double beta, const SolveOptions& o) {
    reject_positive(beta);
    const auto series = v_series(beta, metric.series_coeffs(o.order), o.order);
    auto io = integration_options(o, o.samples_per_step);
    if (beta == 0.0) io.r_max = o.r_extent;
    const auto res = integrate_minus(metric, series, io);
    return profile_from_integration(res, metric, beta, o.tol);
}

MonopoleProfile solve_monopole(const MetricProfile& metric, double mass, const SolveOptions& o) {
    const auto sr = shoot(mass, metric, o);
    return solve_beta(metric, sr.beta, o);
}

BubblingReport bubbling_report(const std::vector<double>& masses, const MetricProfile& metric, double R,
                               double r0, const SolveOptions& o, double slack) {
    BubblingReport rep;
    rep.slack = slack;
    rep.bps_decreasing = true;
    rep.inequality_everywhere = true;
    for (std::size_t i = 1; i < masses.size(); ++i)
        if (!(masses[i] > masses[i - 1])) throw DomainError("bubbling masses must be increasing");
    for (double lambda : masses) {
        const auto p = solve_monopole(metric, lambda, o);
        BubblingRow row;
        row.lambda = lambda;
        row.mass_extracted = p.mass;
        row.beta = p.beta;
        row.translated_min = INFINITY;
        row.translated_excess = -INFINITY;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double r = p.r[i];
            if (r > 0.0 && r <= R / lambda) {
                const double x = lambda * r;
                row.bps_sup = std::max(row.bps_sup, std::abs(p.a[i] - x / std::sinh(x)));
                ++row.bps_samples;
            }
            if (r >= r0) {
                const double g = metric.green_tail(r);
                const double u = g - 0.5 * p.mass - p.phi[i];
                row.translated_min = std::min(row.translated_min, u);
                row.translated_excess = std::max(row.translated_excess, u - g * p.a[i] * p.a[i]);
                ++row.translated_samples;
            }
        }
        row.inequality_holds = row.translated_samples > 0 && row.translated_min >= -slack &&
                               row.translated_excess <= slack;
        if (!rep.rows.empty() && !(row.bps_sup < rep.rows.back().bps_sup)) rep.bps_decreasing = false;
        rep.inequality_everywhere = rep.inequality_everywhere && row.inequality_holds;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace g2mono
