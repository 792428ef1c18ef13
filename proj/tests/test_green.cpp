#include "doctest.h"

#include "g2mono/green.hpp"
#include "g2mono/ode.hpp"

#include <cmath>
#include <fstream>

using namespace g2mono;

namespace {
std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
}
}  // namespace

TEST_CASE("dirac examples") {
    const auto e = make_metric(MetricId::euclidean);
    const auto d0 = dirac(e, 0, 2.5);
    for (double r : {0.01, 1.0, 100.0}) {
        CHECK(d0.phi(r) == -2.5);
        CHECK(d0.dphi(r) == 0.0);
    }
    const auto d1 = dirac(e, 1, 0.7);
    for (double r : {0.01, 1.0, 100.0}) {
        CHECK(d1.phi(r) == doctest::Approx(-0.7 - 0.5 / r).epsilon(1e-15));
        CHECK(d1.dphi(r) == doctest::Approx(0.5 / (r * r)).epsilon(1e-15));
    }
    CHECK(std::abs(d1.phi(1e-8)) > 1e7);
    CHECK(dirac(e, -2, 0.0).phi(1e6) == doctest::Approx(0.0).epsilon(1e-5));

    const auto cp2 = make_metric(MetricId::bs_cp2);
    const auto dc = dirac(cp2, 3, 0.0);
    const double rho = 1e4;
    CHECK(dc.phi(rho) * std::pow(rho, 5) == doctest::Approx(-3.0 * 32.0 / 5.0).epsilon(2e-3));

    CHECK_THROWS_AS(dirac(e, 1, -1.0), DomainError);
    CHECK_THROWS_AS(dirac(nullptr, 1, 1.0), DomainError);
}

TEST_CASE("parabolic metrics have no Dirac monopole") {
    std::ofstream("parabolic.csv") << "r,h\n0.5,0.5\n1,1\n2,1.3\n4,1.7\n8,2.2\n";
    std::ofstream("parabolic.metric") << "type=custom\ncoeffs=1\nr_series=0.6\ntable=parabolic.csv\n";
    const auto m = make_metric(std::string("parabolic.metric"));
    CHECK_FALSE(m->nonparabolic());
    CHECK_THROWS_AS(dirac(m, 1, 1.0), NonParabolicRequiredError);
}

TEST_CASE("harmonicity") {
    const auto e = make_metric(MetricId::euclidean);
    CHECK(harmonicity_check(dirac(e, 1, 1.0), log_grid(0.1, 50, 40)) <= 1e-9);
    CHECK(harmonicity_check(dirac(e, 0, 1.0), log_grid(0.1, 50, 40)) == 0.0);
    for (auto id : {MetricId::bs_s4, MetricId::bs_cp2}) {
        CAPTURE(to_string(id));
        CHECK(harmonicity_check(dirac(make_metric(id), 1, 1.0), log_grid(0.1, 50, 40)) <= 1e-7);
    }
    // relative steps are too coarse for e^{-2r} far out, so stay inside r = 10
    CHECK(harmonicity_check(dirac(make_metric(MetricId::hyperbolic), 1, 1.0), log_grid(0.1, 10, 40)) <= 1e-7);
}

TEST_CASE("asymptotic fit") {
    for (auto id : {MetricId::bs_s4, MetricId::bs_cp2}) {
        CAPTURE(to_string(id));
        for (int charge : {1, -2}) {
            const auto fit = asymptotic_fit(dirac(make_metric(id), charge, 1.0), 20.0, 100.0);
            CHECK(fit.exponent == doctest::Approx(-5.0).epsilon(0.01));
            CHECK(fit.coefficient == doctest::Approx(32.0 / 5.0).epsilon(0.02));
            CHECK(fit.max_residual < 1e-6);
            // a plain two-parameter fit still sees the O(1/rho) corrections
            CHECK(fit.raw_slope == doctest::Approx(-4.8612).epsilon(1e-3));
            CHECK(fit.points == 41);
        }
    }
    const auto e = make_metric(MetricId::euclidean);
    const auto fe = asymptotic_fit(dirac(e, 1, 1.0), 20.0, 100.0, 21, 0);
    CHECK(fe.exponent == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fe.coefficient == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_fit(dirac(e, 0, 1.0), 20.0, 100.0), DomainError);
    CHECK_THROWS_AS(asymptotic_fit(dirac(e, 1, 1.0), 100.0, 20.0), DomainError);
}

TEST_CASE("Dirac monopole is the a = 0 minus-type flow") {
    for (auto id : {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4, MetricId::bs_cp2}) {
        CAPTURE(to_string(id));
        const auto m = make_metric(id);
        const auto d = dirac(m, -1, 1.0);
        const double r0 = 0.05;
        const auto tr = integrate_fields(*m, 0, {r0, 0.0, d.phi(r0)}, 40.0, 1e-12);
        double worst = 0.0;
        for (const auto& s : tr.samples) {
            CHECK(s.a == 0.0);
            worst = std::max(worst, std::abs(s.phi - d.phi(s.r)) / std::max(1.0, std::abs(d.phi(s.r))));
        }
        CHECK(worst <= 1e-10);
    }
}
