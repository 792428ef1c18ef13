#include "g2mono/errors.hpp"
#include "g2mono/metric.hpp"

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace g2mono {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

struct Table {
    std::vector<double> r, h;
};

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open metric table '" + path.string() + "'");
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto cols = split(line, ',');
        if (cols.size() < 2) throw UsageError("metric table rows need r,h");
        try {
            const double r = std::stod(cols[0]);
            const double h = std::stod(cols[1]);
            if (!(r > 0.0) || !(h > 0.0)) throw UsageError("metric table needs r > 0 and h > 0");
            if (!t.r.empty() && r <= t.r.back()) throw UsageError("metric table radii must increase");
            t.r.push_back(r);
            t.h.push_back(h);
        } catch (const std::invalid_argument&) {
            if (t.r.empty()) continue;  // header
            throw UsageError("bad number in metric table '" + path.string() + "'");
        }
    }
    if (t.r.size() < 4) throw UsageError("metric table needs at least four rows");
    return t;
}

class Custom final : public MetricProfile {
public:
    Custom(std::string label, std::vector<Rational> coeffs, double r_series, std::optional<Table> table)
        : label_(std::move(label)), exact_(std::move(coeffs)), r_series_(r_series) {
        for (const auto& q : exact_) coeffs_.push_back(to_double(q));
        if (!exact_.empty() && exact_[0] != 1) throw DomainError("custom metric series must start with 1");
        if (exact_.size() > 1 && exact_[1] != 0) throw DomainError("custom metric needs phi_1 = 0");
        if (table) {
            std::vector<double> lr, lh;
            for (std::size_t i = 0; i < table->r.size(); ++i) {
                lr.push_back(std::log(table->r[i]));
                lh.push_back(std::log(table->h[i]));
            }
            const std::size_t n = lr.size();
            r_min_ = table->r.front();
            r_max_ = table->r.back();
            lh_min_ = lh.front();
            lh_max_ = lh.back();
            p_lo_ = (lh[1] - lh[0]) / (lr[1] - lr[0]);
            p_hi_ = (lh[n - 1] - lh[n - 2]) / (lr[n - 1] - lr[n - 2]);
            nodes_ = table->r;
            if (!exact_.empty() && r_min_ > r_series_)
                throw UsageError("metric table must start inside r_series");
            interp_.emplace(std::move(lr), std::move(lh));
        } else if (exact_.empty()) {
            throw UsageError("custom metric needs coeffs or a table");
        }
    }

    MetricId id() const override { return MetricId::custom; }
    std::string name() const override { return label_; }

    double h2(double r) const override {
        if (!(r > 0.0)) throw DomainError("radius must be positive");
        double v;
        if (use_series(r)) {
            double p = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 0;) p = p * r + coeffs_[k];
            v = r * r * p;
        } else {
            v = std::exp(2.0 * log_h(std::log(r)));
        }
        if (!(v > 0.0)) throw DomainError("custom metric has h^2 <= 0 at r = " + std::to_string(r));
        return v;
    }

    double dh2(double r) const override {
        if (!(r > 0.0)) throw DomainError("radius must be positive");
        if (use_series(r)) {
            double p = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 0;) p = p * r + (k + 2.0) * coeffs_[k];
            return r * p;
        }
        return 2.0 * h2(r) * dlog_h(std::log(r)) / r;
    }

    bool nonparabolic() const override { return interp_ ? p_hi_ > 0.5 : true; }

    double green_tail(double r) const override {
        if (!nonparabolic()) throw NonParabolicRequiredError("custom metric tail is parabolic");
        if (!(r > 0.0)) throw DomainError("radius must be positive");
        auto integrand = [this](double t) { return 0.5 / h2(t); };
        if (!interp_) {
            boost::math::quadrature::exp_sinh<double> es;
            return es.integrate([&](double t) { return integrand(r + t); });
        }
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        double acc = 0.0;
        double a = r;
        std::vector<double> cuts;
        if (!exact_.empty()) cuts.push_back(r_series_);
        cuts.insert(cuts.end(), nodes_.begin(), nodes_.end());
        for (double c : cuts) {
            if (c <= a) continue;
            acc += GK::integrate(integrand, a, c, 12, 1e-13);
            a = c;
        }
        // power-law tail beyond the last sample
        const double h2_end = h2(a);
        return acc + a / (2.0 * h2_end * (2.0 * p_hi_ - 1.0));
    }

    bool has_exact_series() const override { return !exact_.empty(); }
    std::vector<Rational> exact_series(int order) const override {
        if (exact_.empty()) throw UnsupportedError("custom metric has no series coefficients");
        std::vector<Rational> c(static_cast<std::size_t>(order) + 1, Rational(0));
        for (std::size_t i = 0; i < std::min(c.size(), exact_.size()); ++i) c[i] = exact_[i];
        return c;
    }
    double series_radius() const override { return exact_.empty() ? 0.0 : r_series_; }

private:
    bool use_series(double r) const { return !exact_.empty() && (!interp_ || r <= r_series_); }

    double log_h(double lr) const {
        if (lr < std::log(r_min_)) return lh_min_ + p_lo_ * (lr - std::log(r_min_));
        if (lr > std::log(r_max_)) return lh_max_ + p_hi_ * (lr - std::log(r_max_));
        return (*interp_)(lr);
    }
    double dlog_h(double lr) const {
        if (lr < std::log(r_min_)) return p_lo_;
        if (lr > std::log(r_max_)) return p_hi_;
        return interp_->prime(lr);
    }

    std::string label_;
    std::vector<Rational> exact_;
    std::vector<double> coeffs_;
    double r_series_;
    std::optional<boost::math::interpolators::pchip<std::vector<double>>> interp_;
    std::vector<double> nodes_;
    double r_min_ = 0, r_max_ = 0, lh_min_ = 0, lh_max_ = 0, p_lo_ = 1, p_hi_ = 1;
};

}  // namespace

MetricPtr load_custom_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open metric file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("metric file line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    if (kv["type"] != "custom") throw UsageError("metric file must declare type=custom");

    std::vector<Rational> coeffs;
    if (kv.count("coeffs"))
        for (const auto& c : split(kv["coeffs"], ',')) coeffs.push_back(parse_rational(c));
    double r_series = 0.5;
    if (kv.count("r_series")) r_series = std::stod(kv["r_series"]);
    std::optional<Table> table;
    if (kv.count("table")) {
        std::filesystem::path tp(kv["table"]);
        if (tp.is_relative()) tp = std::filesystem::path(path).parent_path() / tp;
        table = read_table(tp);
    }
    const std::string label = kv.count("name") ? kv["name"] : std::string("custom");
    return std::make_shared<Custom>(label, std::move(coeffs), r_series, std::move(table));
}

}  // namespace g2mono
