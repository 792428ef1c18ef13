#include "g2mono/ode.hpp"

#include <cmath>

namespace g2mono {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::bounded: return "bounded";
        case Classification::blowup: return "blowup";
        case Classification::flat: return "flat";
    }
    return "unknown";
}

double MonopoleSample::a() const { return std::exp(0.5 * v); }

FieldDerivative rhs_minus(const ProfileState& s, const MetricProfile& metric) {
    if (!(s.r > 0.0)) throw DomainError("rhs_minus needs r > 0");
    return {2.0 * s.phi * s.a, (s.a * s.a - 1.0) / (2.0 * metric.h2(s.r))};
}

FieldDerivative rhs_plus(const ProfileState& s, const MetricProfile& metric, int sigma) {
    if (!(s.r > 0.0)) throw DomainError("rhs_plus needs r > 0");
    if (sigma != 1 && sigma != -1) throw DomainError("sigma must be +1 or -1");
    return {sigma * 2.0 * s.a * s.phi, sigma * (1.0 + s.a * s.a) / (2.0 * metric.h2(s.r))};
}

namespace {

template <std::size_t N>
void add_stats(IntegrationStats& s, const Dopri5Stats& d) {
    s.accepted += d.accepted;
    s.rejected += d.rejected;
    s.evaluations += d.evaluations;
}

}  // namespace

IntegrationResult integrate_minus_from(const MetricProfile& metric, double r0, double v0, double w0,
                                       const MonopoleIntegrationOptions& opt) {
    if (!(r0 > 0.0)) throw DomainError("integration must start at r > 0");
    IntegrationResult res;
    res.delta = r0;
    res.samples.push_back({r0, v0, w0});
    const double x0 = metric.coord_of_radius(r0);
    const double x1 = metric.coord_of_radius(opt.r_max);
    const double v_floor = 2.0 * std::log(opt.a_floor);
    const double v_stop = 2.0 * std::log(opt.a_stop);

    auto f = [&metric](double x, const Vec<2>& y) -> Vec<2> {
        const double j = metric.dradius_dcoord(x);
        return {j * y[1], j * 2.0 * std::expm1(y[0]) / metric.h2_at_coord(x)};
    };

    if (opt.r_max <= r0) {
        res.terminal_event = "r_max";
        res.stats.final_radius = r0;
        return res;
    }

    bool done = false;
    auto inspect = [&](double x, double r, const Vec<2>& y) {
        if (y[0] > 0.0 && y[1] > 0.0 && res.certified_blowup_radius < 0.0) res.certified_blowup_radius = r;
        if (y[0] > opt.blowup_v || std::abs(0.25 * y[1]) * r > opt.blowup_phi_r || !std::isfinite(y[0])) {
            res.classification = Classification::blowup;
            res.terminal_event = y[0] > opt.blowup_v ? "v_threshold" : "phi_threshold";
            return true;
        }
        if (y[0] < v_floor) {
            res.terminal_event = "a_floor";
            return true;
        }
        if (opt.stop_on_tail && y[0] < v_stop && r >= opt.tail_min_radius) {
            const double a2 = std::exp(y[0]);
            if (2.0 * a2 * metric.green_at_coord(x) <= opt.tol / 10.0) {
                res.terminal_event = "tail";
                return true;
            }
        }
        return false;
    };

    Dopri5Options dopt;
    dopt.tol = opt.tol;
    try {
        const auto st = dopri5<2>(f, x0, Vec<2>{v0, w0}, x1, dopt, [&](const DenseStep<2>& step) {
            // events are tested at step ends only, so the step sequence and
            // the stopping radius do not depend on the sampling density
            const int m = std::max(1, opt.samples_per_step + 1);
            for (int k = 1; k <= m; ++k) {
                const double x = k == m ? step.t1 : step.t0 + (step.t1 - step.t0) * k / m;
                const Vec<2> y = k == m ? step.y1 : step(x);
                res.samples.push_back({metric.radius_of_coord(x), y[0], y[1]});
            }
            if (inspect(step.t1, res.samples.back().r, step.y1)) {
                done = true;
                return false;
            }
            return true;
        });
        add_stats<2>(res.stats, st);
    } catch (const StiffnessError& e) {
        const auto& last = res.samples.back();
        if (last.v > 0.0) {
            res.classification = Classification::blowup;
            res.terminal_event = "step_underflow_while_growing";
            done = true;
        } else {
            throw;
        }
    }

    if (!done) {
        res.terminal_event = "r_max";
        if (res.certified_blowup_radius > 0.0) res.classification = Classification::blowup;
    }

    // exact Green's-function flow past the a floor
    if (res.terminal_event == "a_floor" && res.samples.back().r < opt.r_max) {
        const MonopoleSample end = res.samples.back();
        const double g_end = metric.green_tail(end.r);
        double r_prev = end.r, v = end.v, w_prev = end.w;
        const int n = 64;
        for (int k = 1; k <= n; ++k) {
            const double r = end.r + (opt.r_max - end.r) * k / n;
            const double w = end.w - 4.0 * (g_end - metric.green_tail(r));
            v += 0.5 * (w + w_prev) * (r - r_prev);
            res.samples.push_back({r, v, w});
            r_prev = r;
            w_prev = w;
        }
    }
    res.stats.final_radius = res.samples.back().r;
    return res;
}

IntegrationResult integrate_minus(const MetricProfile& metric, const SeriesSolution& series,
                                  const MonopoleIntegrationOptions& opt) {
    bool zero = true;
    for (double c : series.coeffs) zero = zero && c == 0.0;
    if (zero) {
        IntegrationResult res;
        res.classification = Classification::flat;
        res.terminal_event = "flat";
        const int n = 100;
        for (int k = 0; k <= n; ++k) res.samples.push_back({opt.r_max * k / n, 0.0, 0.0});
        res.stats.final_radius = opt.r_max;
        return res;
    }
    const double delta = std::min(admissible_delta(series), 0.5 * metric.series_radius());
    const InitialData init = initial_data(series, delta);
    IntegrationResult res = integrate_minus_from(metric, delta, init.v, init.w, opt);

    std::vector<MonopoleSample> head;
    const FormalSeries<double> v(series.coeffs);
    const FormalSeries<double> dv = v.derivative();
    const int n = std::max(1, opt.series_samples);
    for (int k = 0; k < n; ++k) {
        const double r = delta * k / n;
        head.push_back({r, v.evaluate(r), dv.evaluate(r)});
    }
    res.samples.insert(res.samples.begin(), head.begin(), head.end());
    return res;
}

FieldTrace integrate_fields(const MetricProfile& metric, int sigma, const ProfileState& start, double r1,
                            double tol, int samples_per_step) {
    if (!(start.r > 0.0) || !(r1 > 0.0)) throw DomainError("integrate_fields needs positive radii");
    if (sigma != 0 && sigma != 1 && sigma != -1) throw DomainError("sigma must be 0, +1 or -1");
    FieldTrace out;
    out.samples.push_back(start);
    auto f = [&](double x, const Vec<2>& y) -> Vec<2> {
        const double j = metric.dradius_dcoord(x);
        const double inv = 1.0 / (2.0 * metric.h2_at_coord(x));
        if (sigma == 0) return {j * 2.0 * y[1] * y[0], j * (y[0] * y[0] - 1.0) * inv};
        return {j * sigma * 2.0 * y[0] * y[1], j * sigma * (1.0 + y[0] * y[0]) * inv};
    };
    Dopri5Options dopt;
    dopt.tol = tol;
    const double x0 = metric.coord_of_radius(start.r);
    const double x1 = metric.coord_of_radius(r1);
    const auto st = dopri5<2>(f, x0, Vec<2>{start.a, start.phi}, x1, dopt, [&](const DenseStep<2>& step) {
        const int m = std::max(1, samples_per_step + 1);
        for (int k = 1; k <= m; ++k) {
            const double x = k == m ? step.t1 : step.t0 + (step.t1 - step.t0) * k / m;
            const Vec<2> y = k == m ? step.y1 : step(x);
            out.samples.push_back({metric.radius_of_coord(x), y[0], y[1]});
        }
        return true;
    });
    add_stats<2>(out.stats, st);
    out.stats.final_radius = out.samples.back().r;
    return out;
}

SU3Trace integrate_su3(double s0, const SU3Fields<double>& y0, double s1, double tol, int samples_per_step) {
    if (!(s0 > 0.0) || !(s1 > 0.0)) throw DomainError("integrate_su3 needs s > 0");
    const auto& bs = BSParametrization::instance();
    SU3Trace out;
    out.samples.push_back({s0, bs.rho_of_s(s0), y0});
    // stepping in log s keeps the regular singular point at s = 0 well conditioned
    auto f = [](double x, const Vec<5>& y) -> Vec<5> {
        const double s = std::exp(x);
        Vec<5> d = rhs_su3<double>(s, y);
        const double j = BSParametrization::f(s) * s;
        for (auto& v : d) v *= j;
        return d;
    };
    Dopri5Options dopt;
    dopt.tol = tol;
    const double x1 = std::log(s1);
    const auto st = dopri5<5>(f, std::log(s0), y0, x1, dopt, [&](const DenseStep<5>& step) {
        const int m = std::max(1, samples_per_step + 1);
        for (int k = 1; k <= m; ++k) {
            const double x = k == m ? step.t1 : step.t0 + (step.t1 - step.t0) * k / m;
            const double s = x == x1 ? s1 : std::exp(x);
            out.samples.push_back({s, bs.rho_of_s(s), k == m ? step.y1 : step(x)});
        }
        return true;
    });
    add_stats<5>(out.stats, st);
    out.stats.final_radius = out.samples.back().rho;
    return out;
}

EnvelopeReport envelope_check(const IntegrationResult& result, const MetricProfile& metric, double slack) {
    EnvelopeReport rep;
    std::size_t first = 0;
    while (first < result.samples.size() && result.samples[first].r < result.delta) ++first;
    if (first >= result.samples.size()) return rep;
    const MonopoleSample s0 = result.samples[first];
    const double r_end = result.samples.back().r;
    const double x0 = metric.coord_of_radius(s0.r);

    // (P, Q, u, u') with P = int h^-2, Q = int P, u the linear comparison
    std::vector<DenseStep<4>> steps;
    if (r_end > s0.r) {
        auto f = [&metric](double x, const Vec<4>& y) -> Vec<4> {
            const double j = metric.dradius_dcoord(x);
            const double ih2 = 1.0 / metric.h2_at_coord(x);
            return {j * ih2, j * y[0], j * y[3], j * 2.0 * ih2 * y[2]};
        };
        Dopri5Options dopt;
        dopt.tol = 1e-12;
        dopri5<4>(f, x0, Vec<4>{0.0, 0.0, s0.v, s0.w}, metric.coord_of_radius(r_end), dopt,
                  [&](const DenseStep<4>& st) {
                      steps.push_back(st);
                      return true;
                  });
    }

    std::size_t k = 0;
    rep.worst_lower_margin = INFINITY;
    rep.worst_upper_margin = INFINITY;
    for (std::size_t i = first; i < result.samples.size(); ++i) {
        const auto& s = result.samples[i];
        Vec<4> aux{0.0, 0.0, s0.v, s0.w};
        if (s.r > s0.r && !steps.empty()) {
            const double x = metric.coord_of_radius(s.r);
            while (k + 1 < steps.size() && steps[k].t1 < x) ++k;
            aux = steps[k](std::clamp(x, steps[k].t0, steps[k].t1));
        }
        const double vb = s0.v + s0.w * (s.r - s0.r) - 2.0 * aux[1];
        const double vu = aux[2];
        const double tolerance = slack * (1.0 + std::abs(s.v));
        const double lower = s.v - std::max(vb, vu);
        const double upper = -s.v;
        rep.worst_lower_margin = std::min(rep.worst_lower_margin, lower);
        rep.worst_upper_margin = std::min(rep.worst_upper_margin, upper);
        if (lower < -tolerance) ++rep.lower_violations;
        if (upper < -tolerance) ++rep.upper_violations;
        if (s.v > vu + tolerance) ++rep.above_linear_comparison;
        ++rep.samples_checked;
        rep.r.push_back(s.r);
        rep.v.push_back(s.v);
        rep.v_b.push_back(vb);
        rep.v_u.push_back(vu);
    }
    rep.passed = rep.lower_violations == 0 && rep.upper_violations == 0;
    return rep;
}

}  // namespace g2mono
