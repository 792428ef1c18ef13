// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "g2mono/energy.hpp"
#include "g2mono/green.hpp"
#include "g2mono/oracles.hpp"
#include "g2mono/shooting.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace g2mono;

namespace {

// pinned tolerances
constexpr double kProfileTol = 1e-6;
constexpr double kBpsRuntime = 1.0;  // seconds
constexpr double kRoundTripTol = 1e-8;
constexpr double kSignSlack = 1e-14;  // relative, for monotonicity in the far tail
constexpr double kInstantonTol = 1e-10;
constexpr double kExponentTol = 0.05;
constexpr double kCoefficientTol = 0.02;
constexpr double kPlusTol = 0.01;
constexpr double kEnergyTol = 1e-5;
constexpr double kPartialTol = 1e-6;

const MetricId kAll[] = {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4, MetricId::bs_cp2};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double sup_error(const MonopoleProfile& p, const MetricProfile& m, const ClosedForm& form) {
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double r = 0.005 * i;
        const auto s = p.at(r, m);
        const auto o = eval(form, r);
        worst = std::max({worst, std::abs(s.a - o.a), std::abs(s.phi - o.phi)});
    }
    return worst;
}

Outcome ac1() {
    const auto e = make_metric(MetricId::euclidean);
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = solve_monopole(*e, 1.0);
    const double dt = seconds_since(t0);
    const double err = sup_error(p, *e, ClosedForm::bps_mass(1.0));
    return {err <= kProfileTol && dt < kBpsRuntime,
            fmt("sup error %.2e <= %.0e on [0,10], runtime %.4f s < %.0f s", err, kProfileTol, dt, kBpsRuntime)};
}

Outcome ac2() {
    const auto h = make_metric(MetricId::hyperbolic);
    const double err = sup_error(solve_monopole(*h, 1.0), *h, ClosedForm::hyperbolic(1.0));
    return {err <= kProfileTol, fmt("sup error %.2e <= %.0e on [0,10]", err, kProfileTol)};
}

Outcome ac3() {
    int agree = 0, total = 0;
    for (auto id : kAll) {
        const auto metric = make_metric(id)->exact_series(12);
        for (const char* b : {"-2", "-1", "-1/3", "-5/7"}) {
            const Rational beta = parse_rational(b);
            ++total;
            if (*v_series(beta, metric, 12).exact == *v_series_oracle(beta, metric, 12).exact) ++agree;
        }
    }
    const auto e = make_metric(MetricId::euclidean)->exact_series(12);
    bool v4 = true;
    for (const char* b : {"-2", "-1", "-1/3", "-5/7"}) {
        const Rational beta = parse_rational(b);
        v4 = v4 && (*v_series(beta, e, 12).exact)[4] == beta * beta / 10;
    }
    return {agree == total && v4, fmt("%.0f/%.0f exact matches at order 12, euclidean v4 = v2^2/10: ", agree, total) +
                                      (v4 ? "yes" : "no")};
}

Outcome ac4() {
    int ok = 0, total = 0;
    for (auto id : kAll) {
        const auto m = make_metric(id);
        MonopoleIntegrationOptions o;
        o.r_max = 1e3;
        o.tol = 1e-10;
        for (double beta : {0.01, 1.0}) {
            ++total;
            if (integrate_minus(*m, v_series(beta, m->series_coeffs(12)), o).classification == Classification::blowup)
                ++ok;
        }
        ++total;
        if (integrate_minus(*m, v_series(0.0, m->series_coeffs(12)), o).classification == Classification::flat) ++ok;
    }
    return {ok == total, fmt("%.0f/%.0f classifications correct (blowup for beta > 0, flat for beta = 0)", ok, total)};
}

Outcome ac5() {
    bool monotone = true;
    double worst = 0.0;
    for (auto id : kAll) {
        const auto m = make_metric(id);
        double prev = 0.0;
        for (int k = 1; k <= 64; ++k) {
            const double mass = mass_of_beta(-k / 8.0, *m);
            monotone = monotone && mass > prev;
            prev = mass;
        }
        for (double mass : {0.25, 1.0, 4.0}) {
            const double beta = beta_of_mass(mass, *m);
            worst = std::max(worst, std::abs(mass_of_beta(beta, *m) - mass));
        }
    }
    return {monotone && worst <= kRoundTripTol,
            std::string("strictly monotone over 64 betas: ") + (monotone ? "yes" : "no") +
                fmt(", round-trip deviation %.2e <= %.0e", worst, kRoundTripTol)};
}

Outcome ac6() {
    std::size_t samples = 0, violations = 0, envelope_fail = 0, solves = 0;
    for (auto id : kAll) {
        const auto m = make_metric(id);
        for (double mass : {0.25, 1.0, 2.0, 4.0}) {
            const double beta = beta_of_mass(mass, *m);
            MonopoleIntegrationOptions o;
            o.r_max = 20.0;
            o.tol = integrator_tolerance(1e-10);
            const auto res = integrate_minus(*m, v_series(beta, m->series_coeffs(12)), o);
            ++solves;
            for (std::size_t i = 1; i < res.samples.size(); ++i) {
                const auto& s = res.samples[i];
                const auto& q = res.samples[i - 1];
                ++samples;
                if (!(s.a() > 0.0 && s.a() <= 1.0 && s.phi() < 0.0)) ++violations;
                if (!(s.a() <= q.a() * (1.0 + kSignSlack) && s.phi() <= q.phi() * (1.0 - kSignSlack))) ++violations;
            }
            if (!envelope_check(res, *m).passed) ++envelope_fail;
        }
    }
    return {violations == 0 && envelope_fail == 0,
            fmt("%.0f solves, %.0f samples, %.0f sign/monotonicity violations, %.0f envelope failures",
                double(solves), double(samples), double(violations), double(envelope_fail))};
}

Outcome ac7() {
    std::vector<double> rho, s;
    for (int i = 0; i < 200; ++i) {
        rho.push_back(1e-3 * std::pow(1e5, i / 199.0));
        s.push_back(0.01 * std::pow(5000.0, i / 199.0));
    }
    double worst = 0.0;
    for (auto id : {MetricId::bs_s4, MetricId::bs_cp2})
        for (int sign : {1, -1}) worst = std::max(worst, residual_minus(ClosedForm::bs_instanton(sign), *make_metric(id), rho));
    for (double c : {0.0, 1.0, 2.0, 5.0})
        for (int branch : {1, -1}) worst = std::max(worst, residual_su3(ClosedForm::su3_instanton(c, branch), s));
    return {worst <= kInstantonTol, fmt("sup residual %.2e <= %.0e (b=1 branch on both backgrounds, SU(3) u_c)", worst,
                                        kInstantonTol)};
}

Outcome ac8() {
    bool ok = true;
    std::string detail;
    for (auto id : {MetricId::bs_s4, MetricId::bs_cp2}) {
        const auto fit = asymptotic_fit(dirac(make_metric(id), 1, 1.0), 20.0, 100.0);
        const bool pass = std::abs(fit.exponent + 5.0) <= kExponentTol &&
                          std::abs(fit.coefficient / (32.0 / 5.0) - 1.0) <= kCoefficientTol;
        ok = ok && pass;
        detail += to_string(id) + fmt(": p = %.5f, C = %.4f (raw slope %.4f); ", fit.exponent, fit.coefficient,
                                      fit.raw_slope);
    }
    return {ok, detail + fmt("target -5 +- %.2f, 32/5 within %.0f%%", kExponentTol, kCoefficientTol * 100)};
}

Outcome ac9() {
    double worst = 0.0;
    for (auto id : {MetricId::bs_s4, MetricId::bs_cp2}) {
        const auto m = make_metric(id);
        const auto tr = integrate_fields(*m, -1, {1.0, 1e-6, m->green_tail(1.0)}, 1e-3, 1e-12);
        const auto& end = tr.samples.back();
        worst = std::max(worst, std::abs(end.r * end.phi / 0.5 - 1.0));
    }
    return {worst <= kPlusTol, fmt("rho*phi at rho = 1e-3 within %.2e of 1/2 (relative) <= %.0e", worst, kPlusTol)};
}

Outcome ac10() {
    const auto rep = bubbling_report({5.0, 10.0, 20.0, 40.0}, *make_metric(MetricId::bs_s4));
    std::string d = "sup_{r<=1/lambda}|a - BPS|:";
    for (const auto& r : rep.rows) d += fmt(" %.3e", r.bps_sup);
    d += std::string(", decreasing: ") + (rep.bps_decreasing ? "yes" : "no");
    d += std::string(", translated inequality on r >= 1: ") + (rep.inequality_everywhere ? "holds" : "violated");
    return {rep.bps_decreasing && rep.inequality_everywhere, d};
}

Outcome ac11() {
    double worst = 0.0, partial = 0.0;
    for (auto id : kAll) {
        const auto m = make_metric(id);
        for (double mass : {1.0, 2.0, 4.0}) {
            const auto rep = intermediate_energy(solve_monopole(*m, mass), *m);
            worst = std::max(worst, std::abs(rep.energy - mass / 2.0));
            partial = std::max(partial, rep.partial_max_deviation);
        }
    }
    return {worst <= kEnergyTol && partial <= kPartialTol,
            fmt("|E - m/2| %.2e <= %.0e, partial vs boundary %.2e <= %.0e", worst, kEnergyTol, partial, kPartialTol)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1  BPS reproduction", ac1},         {"AC2  hyperbolic reproduction", ac2},
        {"AC3  series recurrence", ac3},        {"AC4  no-solution barrier", ac4},
        {"AC5  mass bijection", ac5},           {"AC6  sign and maximum principles", ac6},
        {"AC7  instanton residuals", ac7},      {"AC8  Dirac asymptotics", ac8},
        {"AC9  plus-type blow-up", ac9},        {"AC10 bubbling", ac10},
        {"AC11 energy identity", ac11},
    };
    const auto t0 = std::chrono::steady_clock::now();
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s  %-34s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed in %.2f s\n", int(criteria.size()) - failed, criteria.size(), seconds_since(t0));
    return failed == 0 ? 0 : 1;
}
