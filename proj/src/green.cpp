#include "g2mono/green.hpp"

#include "g2mono/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace g2mono {

double DiracMonopole::phi(double r) const { return -mass + excess(r); }

double DiracMonopole::excess(double r) const {
    if (charge == 0) return 0.0;
    return -charge * metric->green_tail(r);
}

double DiracMonopole::dphi(double r) const { return charge / (2.0 * metric->h2(r)); }

DiracMonopole dirac(MetricPtr metric, int charge, double mass) {
    if (!metric) throw DomainError("null metric");
    if (!metric->nonparabolic()) throw NonParabolicRequiredError("Dirac monopoles need a nonparabolic metric");
    if (!(mass >= 0.0)) throw DomainError("mass must be nonnegative");
    return {std::move(metric), charge, mass};
}

double harmonicity_check(const DiracMonopole& d, const std::vector<double>& radii) {
    if (d.charge == 0) return 0.0;
    const auto& m = *d.metric;
    auto u = [&](double r) { return d.excess(r); };
    auto d1 = [&](double r) {
        const double e = 1e-3 * r;
        return (u(r - 2 * e) - 8 * u(r - e) + 8 * u(r + e) - u(r + 2 * e)) / (12 * e);
    };
    auto flux = [&](double r) { return 2.0 * m.h2(r) * d1(r); };
    double worst = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw DomainError("radii must be positive");
        const double e = 1e-2 * r;
        const double g = (flux(r - 2 * e) - 8 * flux(r - e) + 8 * flux(r + e) - flux(r + 2 * e)) / (12 * e);
        worst = std::max(worst, std::abs(g));
    }
    return worst;
}

AsymptoticFit asymptotic_fit(const DiracMonopole& d, double lo, double hi, int points, int corrections) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("fit window must satisfy 0 < lo < hi");
    if (d.charge == 0) throw DomainError("charge-zero Dirac field has no decaying part");
    if (points < corrections + 4) throw DomainError("too few fit points");
    const int n = points;
    Eigen::MatrixXd A(n, 2 + corrections);
    Eigen::VectorXd y(n);
    Eigen::MatrixXd Araw(n, 2);
    for (int i = 0; i < n; ++i) {
        const double rho = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        y(i) = std::log(std::abs(d.excess(rho)));
        A(i, 0) = 1.0;
        A(i, 1) = std::log(rho);
        for (int k = 1; k <= corrections; ++k) A(i, 1 + k) = std::pow(rho, -k);
        Araw(i, 0) = 1.0;
        Araw(i, 1) = std::log(rho);
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd craw = Araw.colPivHouseholderQr().solve(y);
    AsymptoticFit fit;
    fit.exponent = c(1);
    fit.coefficient = std::exp(c(0)) / std::abs(d.charge);
    fit.raw_slope = craw(1);
    fit.raw_coefficient = std::exp(craw(0)) / std::abs(d.charge);
    fit.max_residual = (A * c - y).cwiseAbs().maxCoeff();
    fit.rho_lo = lo;
    fit.rho_hi = hi;
    fit.points = n;
    fit.corrections = corrections;
    return fit;
}

}  // namespace g2mono
