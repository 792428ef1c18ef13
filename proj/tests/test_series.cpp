#include "doctest.h"

#include "g2mono/metric.hpp"
#include "g2mono/series.hpp"

#include <cmath>

using namespace g2mono;

namespace {

std::vector<Rational> rationals(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.push_back(parse_rational(x));
    return out;
}

std::vector<Rational> exact_v(const Rational& beta, MetricId id, int order) {
    return *v_series(beta, make_metric(id)->exact_series(order), order).exact;
}

}  // namespace

TEST_CASE("parse_rational handles fractions and decimals") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-4/3") == Rational(-4, 3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("007") == Rational(7));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational("-1e-3") == Rational(-1, 1000));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
    CHECK_THROWS_AS(parse_rational("abc"), UsageError);
    CHECK(to_string(Rational(-2, 6)) == "-1/3");
}

TEST_CASE("formal series arithmetic") {
    using S = FormalSeries<Rational>;
    const auto x = S::variable(8);
    const auto one = S::constant(1, 8);
    const S e = x.exp();
    Rational fact = 1;
    for (int k = 0; k <= 8; ++k) {
        if (k > 0) fact *= k;
        CHECK(e[k] == Rational(1) / fact);
    }
    // (1+x)^(1/2) squared
    const S root = (one + x).power(Rational(1, 2));
    const S sq = root * root;
    CHECK(sq[0] == 1);
    CHECK(sq[1] == 1);
    for (int k = 2; k <= 8; ++k) CHECK(sq[k] == 0);
    // 1/(1-x) = sum x^k
    const S geo = (one - x).reciprocal();
    for (int k = 0; k <= 8; ++k) CHECK(geo[k] == 1);
    // exp(x) composed with 2x equals exp(2x)
    const S e2 = e.compose(x * Rational(2));
    const S e2b = (x * Rational(2)).exp();
    for (int k = 0; k <= 8; ++k) CHECK(e2[k] == e2b[k]);
    CHECK(e.derivative().integral()[3] == e[3]);
    CHECK(e.evaluate(0.5) == doctest::Approx(std::exp(0.5)).epsilon(1e-7));
    CHECK_THROWS_AS(x.reciprocal(), DomainError);
    CHECK_THROWS_AS(one.exp(), DomainError);
}

TEST_CASE("v_series: zero beta gives the flat solution") {
    for (auto id : {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4}) {
        const auto v = exact_v(0, id, 12);
        for (const auto& c : v) CHECK(c == 0);
    }
}

TEST_CASE("v_series: euclidean v4 = beta^2 / 10 exactly") {
    for (const char* b : {"-1/3", "-4/3", "-2", "5/7", "-0.125"}) {
        const Rational beta = parse_rational(b);
        const auto v = exact_v(beta, MetricId::euclidean, 12);
        CHECK(v[4] == beta * beta / 10);
    }
}

TEST_CASE("v_series: odd coefficients vanish on even metrics") {
    for (auto id : {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4, MetricId::bs_cp2}) {
        const auto v = exact_v(Rational(-1, 3), id, 12);
        CHECK(v[3] == 0);
        for (int k = 1; k <= 12; k += 2) CHECK(v[k] == 0);
    }
}

TEST_CASE("v_series matches the independent undetermined-coefficient oracle") {
    // frozen from tests/oracles/reference_values.py
    CHECK(exact_v(Rational(-1, 3), MetricId::euclidean, 8) ==
          rationals({"0", "0", "-1/3", "0", "1/90", "0", "-2/2835", "0", "1/18900"}));
    CHECK(exact_v(Rational(-1, 3), MetricId::hyperbolic, 8) ==
          rationals({"0", "0", "-1/3", "0", "1/30", "0", "-2/405", "0", "1/1260"}));
    CHECK(exact_v(Rational(-1), MetricId::hyperbolic, 8) ==
          rationals({"0", "0", "-1", "0", "1/6", "0", "-2/45", "0", "17/1260"}));
    CHECK(exact_v(Rational(-1), MetricId::bs_s4, 8) ==
          rationals({"0", "0", "-1", "0", "7/30", "0", "-47/504", "0", "61/1400"}));
    CHECK(exact_v(Rational(-2), MetricId::bs_cp2, 8) ==
          rationals({"0", "0", "-2", "0", "2/3", "0", "-95/252", "0", "31/126"}));
}

TEST_CASE("recurrence and fixed-point oracle agree exactly to order 12") {
    for (auto id : {MetricId::euclidean, MetricId::hyperbolic, MetricId::bs_s4, MetricId::bs_cp2}) {
        const auto metric = make_metric(id)->exact_series(12);
        for (const char* b : {"-2", "-1", "-1/3", "0"}) {
            const Rational beta = parse_rational(b);
            const auto a = v_series(beta, metric, 12);
            const auto o = v_series_oracle(beta, metric, 12);
            CHECK(*a.exact == *o.exact);
        }
    }
}

TEST_CASE("recurrence handles metrics with odd terms") {
    const auto metric = rationals({"1", "0", "1/2", "1/5", "-1/7"});
    const auto a = v_series(Rational(-3, 4), metric, 12);
    const auto o = v_series_oracle(Rational(-3, 4), metric, 12);
    CHECK(*a.exact == *o.exact);
    CHECK((*a.exact)[3] == 0);
    CHECK((*a.exact)[5] != 0);
}

TEST_CASE("double-precision recurrence tracks the exact one") {
    const auto metric = make_metric(MetricId::bs_s4);
    const auto exact = v_series(Rational(-1, 3), metric->exact_series(12), 12);
    const auto dbl = v_series(-1.0 / 3.0, metric->series_coeffs(12), 12);
    for (int k = 0; k <= 12; ++k)
        CHECK(dbl.coeffs[k] == doctest::Approx(exact.coeffs[k]).epsilon(1e-13).scale(1e-16));
}

TEST_CASE("series phi satisfies the ODE termwise") {
    // d/dr (v'/4) = (e^v - 1) / (2 h^2), i.e. h^2 v'' = 2 (e^v - 1)
    const int n = 12;
    const auto metric = make_metric(MetricId::hyperbolic)->exact_series(n);
    const auto v = FormalSeries<Rational>(*v_series(Rational(-1, 2), metric, n).exact);
    const auto lhs = FormalSeries<Rational>(metric).shifted_up(2) * v.derivative().derivative();
    const auto rhs = (v.exp() - FormalSeries<Rational>::constant(1, n)) * Rational(2);
    for (int k = 0; k <= n - 2; ++k) CHECK(lhs[k] == rhs[k]);
}

TEST_CASE("initial_data") {
    const auto metric = make_metric(MetricId::euclidean)->series_coeffs(12);
    SUBCASE("beta = 0 is flat") {
        const auto d = initial_data(v_series(0.0, metric), 0.1);
        CHECK(d.a == 1.0);
        CHECK(d.phi == 0.0);
    }
    SUBCASE("BPS m = 1") {
        const double delta = 0.05;
        const auto d = initial_data(v_series(-1.0 / 3.0, metric), delta);
        CHECK(d.a == doctest::Approx(1 - delta * delta / 6).epsilon(1e-5));
        CHECK(d.phi == doctest::Approx(-delta / 6).epsilon(1e-3));
        CHECK(d.a == doctest::Approx(delta / std::sinh(delta)).epsilon(1e-15));
        CHECK(d.phi == doctest::Approx(0.5 * (1 / delta - 1 / std::tanh(delta))).epsilon(1e-12));
    }
    SUBCASE("BPS m = 2") {
        const double delta = 0.05;
        const auto d = initial_data(v_series(-4.0 / 3.0, metric), delta);
        CHECK(d.phi == doctest::Approx(-4 * delta / 6).epsilon(1e-2));
        CHECK(d.phi == doctest::Approx(0.5 * (1 / delta - 2 / std::tanh(2 * delta))).epsilon(1e-12));
    }
    SUBCASE("truncated v is nonpositive for negative beta") {
        for (double beta : {-0.01, -1.0 / 3.0, -2.0, -50.0}) {
            const auto s = v_series(beta, make_metric(MetricId::bs_s4)->series_coeffs(12));
            const double dmax = admissible_delta(s);
            for (int i = 1; i <= 50; ++i) CHECK(initial_data(s, dmax * i / 50.0).v <= 0.0);
        }
    }
    SUBCASE("step back when delta is too large") {
        const auto s = v_series(-400.0, metric);
        const double ok = admissible_delta(s);
        CHECK(ok < 0.1);
        CHECK(truncation_bound(s, ok) <= kSeriesHandoffBound * (1 + 1e-9));
        try {
            initial_data(s, 0.1);
            FAIL("expected StepBackError");
        } catch (const StepBackError& e) {
            CHECK(e.admissible_delta() == doctest::Approx(ok));
        }
    }
}
