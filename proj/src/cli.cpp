#include "g2mono/cli.hpp"

#include "g2mono/energy.hpp"
#include "g2mono/errors.hpp"
#include "g2mono/green.hpp"
#include "g2mono/io.hpp"
#include "g2mono/oracles.hpp"
#include "g2mono/shooting.hpp"
#include "g2mono/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <thread>

#ifndef G2MONO_VERSION
#define G2MONO_VERSION "0.0.0"
#endif

namespace g2mono {

using nlohmann::json;

std::string version() { return G2MONO_VERSION; }

unsigned sweep_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("G2MONO_THREADS");
    if (!env || !*env) return hw;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw UsageError("G2MONO_THREADS must be a positive integer");
    return static_cast<unsigned>(n);
}

namespace {

json rational_json(const Rational& q) {
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    auto part = [](const auto& z) -> json {
        if (boost::multiprecision::abs(z) <= std::numeric_limits<std::int64_t>::max())
            return static_cast<std::int64_t>(z);
        return z.str();
    };
    return json::array({part(num), part(den)});
}

std::string stem_with(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw UsageError("need 0 < min < max and at least 2 points");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
}

SolveOptions solve_options(double tol, int order, double r_extent) {
    SolveOptions o;
    o.tol = tol;
    o.order = order;
    o.r_extent = r_extent;
    return o;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

// ---- solve

struct SolveArgs {
    std::string metric = "euclidean";
    std::optional<double> mass, beta;
    double tol = 1e-10;
    int order = 12;
    double r_extent = 10.0;
    std::string out, plot;
};

int cmd_solve(const SolveArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    if (a.mass.has_value() == a.beta.has_value()) throw UsageError("solve needs exactly one of --mass or --beta");
    const auto metric = make_metric(a.metric);
    const auto opts = solve_options(a.tol, a.order, a.r_extent);
    MonopoleProfile p = a.mass ? solve_monopole(*metric, *a.mass, opts) : solve_beta(*metric, *a.beta, opts);
    p.metric = a.metric;

    json res = {{"beta", p.beta},
                {"mass", p.mass},
                {"tol", p.tol},
                {"classification", to_string(p.classification)},
                {"samples", p.size()},
                {"tail", tail_json(p.tail)}};
    RunRecord rec;
    rec.command = "solve";
    rec.parameters = {{"argv", argv}, {"metric", a.metric}, {"tol", a.tol}, {"order", a.order}, {"r_extent", a.r_extent}};
    if (a.mass) rec.parameters["mass"] = *a.mass;
    if (a.beta) rec.parameters["beta"] = *a.beta;
    rec.metric = a.metric;
    rec.stats = stats_json(p.stats);
    rec.results = res;
    rec.version = version();
    rec.timestamp = utc_timestamp();
    if (!a.out.empty()) rec.outputs.push_back(a.out);
    if (!a.plot.empty()) rec.outputs.push_back(a.plot);
    if (!a.out.empty()) {
        write_profile_csv(a.out, p);
        write_sidecar(a.out, rec);
    }
    if (!a.plot.empty()) {
        PlotOptions po;
        po.title = a.metric + ", mass " + std::to_string(p.mass);
        po.x_label = "r";
        po.y_label = "profile";
        write_svg(a.plot, line_plot({{"a", p.r, p.a}, {"phi", p.r, p.phi}}, po));
    }
    json line = {{"command", "solve"}, {"metric", a.metric}, {"outputs", rec.outputs}, {"stats", rec.stats}};
    line.update(res);
    emit(out, line);
    return kExitOk;
}

// ---- sweep

struct SweepArgs {
    std::string metric = "euclidean";
    double mass_min = 0.0, mass_max = 0.0;
    int steps = 0;
    double tol = 1e-10;
    std::string out, plot;
};

struct SweepRow {
    double mass = 0, beta = 0, energy = 0, r_end = 0;
    MonopoleProfile profile;
    std::string error;
};

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    if (a.steps < 1 || !(a.mass_min > 0.0) || !(a.mass_max >= a.mass_min) || (a.steps > 1 && a.mass_max == a.mass_min))
        throw UsageError("sweep needs 0 < --mass-min <= --mass-max and --steps >= 1 (empty range)");
    const auto metric = make_metric(a.metric);
    const auto opts = solve_options(a.tol, 12, 10.0);
    std::vector<SweepRow> rows(static_cast<std::size_t>(a.steps));
    for (int i = 0; i < a.steps; ++i)
        rows[i].mass = a.steps == 1 ? a.mass_min : a.mass_min + (a.mass_max - a.mass_min) * i / (a.steps - 1);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            auto& row = rows[i];
            try {
                row.profile = solve_monopole(*metric, row.mass, opts);
                row.beta = row.profile.beta;
                row.energy = intermediate_energy(row.profile, *metric).energy;
                row.r_end = row.profile.tail.r_end;
            } catch (const Error& e) {
                row.error = e.what();
            }
        }
    };
    const unsigned n = std::min<unsigned>(sweep_threads(), static_cast<unsigned>(rows.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool failed = false, monotone = true;
    std::vector<std::vector<double>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!r.error.empty()) {
            failed = true;
            err << "sweep: mass " << r.mass << ": " << r.error << "\n";
            emit(out, {{"command", "sweep"}, {"mass", r.mass}, {"error", r.error}});
            continue;
        }
        if (i > 0 && rows[i - 1].error.empty() && !(r.beta < rows[i - 1].beta)) monotone = false;
        emit(out, {{"command", "sweep"}, {"mass", r.mass}, {"beta", r.beta}, {"energy", r.energy}, {"r_end", r.r_end}});
        table.push_back({r.mass, r.beta, r.energy, r.r_end});
    }

    RunRecord rec;
    rec.command = "sweep";
    rec.parameters = {{"argv", argv},   {"metric", a.metric}, {"mass_min", a.mass_min},
                      {"mass_max", a.mass_max}, {"steps", a.steps}, {"tol", a.tol}};
    rec.metric = a.metric;
    rec.stats = {{"threads", n}, {"solves", rows.size()}};
    rec.results = {{"monotone", monotone}};
    rec.version = version();
    rec.timestamp = utc_timestamp();
    if (!a.plot.empty()) {
        PlotSeries mb{"beta(m)", {}, {}};
        for (const auto& r : table) {
            mb.x.push_back(r[0]);
            mb.y.push_back(r[1]);
        }
        PlotOptions po;
        po.title = a.metric + ": shooting parameter against mass";
        po.x_label = "mass";
        po.y_label = "beta";
        write_svg(a.plot, line_plot({mb}, po));
        std::vector<PlotSeries> prof;
        for (const auto& r : rows)
            if (r.error.empty()) prof.push_back({"a, m=" + std::to_string(r.mass), r.profile.r, r.profile.a});
        po.title = a.metric + ": a(r) across the sweep";
        po.x_label = "r";
        po.y_label = "a";
        const std::string second = stem_with(a.plot, "_profiles");
        write_svg(second, line_plot(prof, po));
        rec.outputs.push_back(a.plot);
        rec.outputs.push_back(second);
    }
    if (!a.out.empty()) {
        rec.outputs.insert(rec.outputs.begin(), a.out);
        write_table_csv(a.out, {"mass", "beta", "energy", "r_end"}, table);
        write_sidecar(a.out, rec);
    }
    emit(out, {{"command", "sweep"}, {"summary", true}, {"metric", a.metric}, {"monotone", monotone},
               {"rows", table.size()}, {"outputs", rec.outputs}});
    return failed ? kExitSolverFailure : kExitOk;
}

// ---- verify

struct VerifyArgs {
    std::string oracle;
    std::string metric;
    double m = 1.0, C = 1.0, D = 0.0, c = 0.0;
    int branch = 1, sign = 1;
    std::optional<double> lo, hi;
    int points = 200;
    bool table = false, compare = false;
    std::optional<double> max_residual;
};

ClosedForm build_form(const VerifyArgs& a) {
    switch (parse_family(a.oracle)) {
        case Family::bps: return ClosedForm::bps(a.C, a.D);
        case Family::bps_mass: return ClosedForm::bps_mass(a.m);
        case Family::hyperbolic: return ClosedForm::hyperbolic(a.m);
        case Family::dirac_euclidean: return ClosedForm::dirac_euclidean(a.m);
        case Family::bs_instanton: return ClosedForm::bs_instanton(a.sign);
        case Family::su3_instanton: return ClosedForm::su3_instanton(a.c, a.branch);
        case Family::flat: return ClosedForm::flat();
    }
    throw UsageError("unknown oracle");
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const ClosedForm form = build_form(a);
    json line = {{"command", "verify"}, {"oracle", a.oracle}};
    double sup = 0.0;
    if (form.family == Family::su3_instanton) {
        const auto ss = log_grid(a.lo.value_or(0.01), a.hi.value_or(50.0), a.points);
        for (double s : ss) {
            const double r = residual_su3(form, {s});
            sup = std::max(sup, r);
            if (a.table) emit(out, {{"s", s}, {"residual", r}});
        }
        line["c"] = a.c;
        line["branch"] = a.branch;
        line["metric"] = "bs_cp2";
    } else {
        const std::string mname = a.metric.empty() ? to_string(form.natural_metric()) : a.metric;
        const auto metric = make_metric(mname);
        const auto rs = log_grid(a.lo.value_or(0.01), a.hi.value_or(10.0), a.points);
        for (double r : rs) {
            const double res = residual_minus(form, *metric, {r});
            sup = std::max(sup, res);
            if (a.table) emit(out, {{"r", r}, {"residual", res}});
        }
        line["metric"] = mname;
        if (a.compare && (form.family == Family::bps_mass || form.family == Family::hyperbolic)) {
            const auto p = solve_monopole(*metric, form.m);
            double worst = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double r = 0.01 * i;
                const auto s = p.at(r, *metric);
                const auto o = eval(form, r);
                worst = std::max({worst, std::abs(s.a - o.a), std::abs(s.phi - o.phi)});
            }
            line["solver_sup_error"] = worst;
        }
    }
    line["sup_residual"] = sup;
    line["points"] = a.points;
    int code = kExitOk;
    if (a.max_residual) {
        line["pass"] = sup <= *a.max_residual;
        if (sup > *a.max_residual) code = kExitSolverFailure;
    }
    emit(out, line);
    return code;
}

// ---- green

struct GreenArgs {
    std::string metric = "bs_s4";
    int charge = 1;
    double mass = 1.0;
    double r = 0.0;
    double fit_lo = 20.0, fit_hi = 100.0;
    int points = 41;
};

int cmd_green(const GreenArgs& a, std::ostream& out) {
    if (!(a.r > 0.0)) throw UsageError("--r must be positive");
    const auto d = dirac(make_metric(a.metric), a.charge, a.mass);
    json line = {{"command", "green"}, {"metric", a.metric}, {"charge", a.charge},
                 {"mass", a.mass},     {"r", a.r},           {"phi_D", d.phi(a.r)},
                 {"G", d.metric->green_tail(a.r)},           {"harmonicity", harmonicity_check(d, {a.r})}};
    if (a.charge != 0) {
        const auto fit = asymptotic_fit(d, a.fit_lo, a.fit_hi, a.points);
        line["fit"] = {{"exponent", fit.exponent},       {"coefficient", fit.coefficient},
                       {"raw_slope", fit.raw_slope},     {"raw_coefficient", fit.raw_coefficient},
                       {"max_residual", fit.max_residual}, {"rho_lo", fit.rho_lo},
                       {"rho_hi", fit.rho_hi},           {"points", fit.points},
                       {"corrections", fit.corrections}};
    }
    emit(out, line);
    return kExitOk;
}

// ---- energy

int cmd_energy(const std::string& path, const std::string& metric_override, std::ostream& out) {
    MonopoleProfile p = load_profile(path);
    const std::string mname = metric_override.empty() ? p.metric : metric_override;
    if (mname.empty()) throw UsageError("no sidecar for " + path + "; pass --metric");
    if (p.mass == 0.0 && p.classification != Classification::flat && p.size() > 0) {
        // no sidecar: read the mass off the far end of the profile
        const auto m = make_metric(mname);
        p.mass = -2.0 * (p.phi.back() - m->green_tail(p.r.back()));
    }
    const auto metric = make_metric(mname);
    const auto rep = intermediate_energy(p, *metric);
    emit(out, {{"command", "energy"},
               {"profile", path},
               {"metric", mname},
               {"mass", p.mass},
               {"energy", rep.energy},
               {"half_mass", rep.half_mass},
               {"identity_residual", rep.identity_residual},
               {"quadrature", rep.quadrature_part},
               {"tail", rep.tail_part},
               {"boundary", rep.boundary},
               {"partial_max_deviation", rep.partial_max_deviation},
               {"samples", p.size()}});
    return kExitOk;
}

// ---- series

int cmd_series(const std::string& mname, const std::string& beta_text, int order, std::ostream& out) {
    const auto metric = make_metric(mname);
    Rational beta;
    try {
        beta = parse_rational(beta_text);
    } catch (const Error& e) {
        throw UsageError(std::string("--beta: ") + e.what());
    }
    json line = {{"command", "series"}, {"metric", mname}, {"order", order}, {"beta", rational_json(beta)}};
    if (metric->has_exact_series()) {
        const auto s = v_series(beta, metric->exact_series(order), order);
        json coeffs = json::array();
        for (const auto& q : *s.exact) coeffs.push_back(rational_json(q));
        line["exact"] = true;
        line["coeffs"] = coeffs;
    } else {
        const auto s = v_series(to_double(beta), metric->series_coeffs(order), order);
        line["exact"] = false;
        line["coeffs"] = s.coeffs;
    }
    emit(out, line);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial monopole and instanton profiles on G2 backgrounds", "g2mono"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "solve for a monopole profile at a given mass or beta");
    solve->add_option("--metric", sa.metric, "built-in metric name or custom metric file");
    auto* om = solve->add_option("--mass", sa.mass, "target mass");
    auto* ob = solve->add_option("--beta", sa.beta, "shooting parameter v2");
    om->excludes(ob);
    solve->add_option("--tol", sa.tol, "mass accuracy")->check(CLI::PositiveNumber);
    solve->add_option("--order", sa.order, "series order at the origin")->check(CLI::Range(4, 40));
    solve->add_option("--r-extent", sa.r_extent, "minimum radius covered by the profile")->check(CLI::PositiveNumber);
    solve->add_option("--out", sa.out, "profile CSV (a .json sidecar is written next to it)");
    solve->add_option("--plot", sa.plot, "SVG plot of a and phi");

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "solve over a mass range");
    sweep->add_option("--metric", wa.metric);
    sweep->add_option("--mass-min", wa.mass_min)->required();
    sweep->add_option("--mass-max", wa.mass_max)->required();
    sweep->add_option("--steps", wa.steps, "number of masses, endpoints included")->required();
    sweep->add_option("--tol", wa.tol)->check(CLI::PositiveNumber);
    sweep->add_option("--out", wa.out, "CSV of mass, beta, energy, r_end");
    sweep->add_option("--plot", wa.plot, "SVG of beta(m); profiles go to <stem>_profiles.svg");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "residuals of a closed-form family");
    verify->add_option("--oracle", va.oracle)->required();
    verify->add_option("--metric", va.metric, "background (defaults to the family's own)");
    verify->add_option("--m", va.m);
    verify->add_option("--C", va.C);
    verify->add_option("--D", va.D);
    verify->add_option("--c", va.c);
    verify->add_option("--branch", va.branch)->check(CLI::IsMember({-1, 1}));
    verify->add_option("--sign", va.sign)->check(CLI::IsMember({-1, 1}));
    verify->add_option("--min", va.lo, "smallest sample radius (or s)");
    verify->add_option("--max", va.hi, "largest sample radius (or s)");
    verify->add_option("--points", va.points)->check(CLI::Range(2, 1000000));
    verify->add_flag("--table", va.table, "print one line per sample");
    verify->add_flag("--compare", va.compare, "also solve and compare (bps_mass, hyperbolic)");
    verify->add_option("--max-residual", va.max_residual, "exit 1 above this residual");

    GreenArgs ga;
    auto* green = app.add_subcommand("green", "Dirac monopole and Green's function");
    green->add_option("--metric", ga.metric);
    green->add_option("--charge", ga.charge);
    green->add_option("--mass", ga.mass);
    green->add_option("--r", ga.r)->required();
    green->add_option("--fit-lo", ga.fit_lo);
    green->add_option("--fit-hi", ga.fit_hi);
    green->add_option("--points", ga.points)->check(CLI::Range(4, 100000));

    std::string profile_path, energy_metric;
    auto* energy = app.add_subcommand("energy", "intermediate energy of a saved profile");
    energy->add_option("--profile", profile_path)->required();
    energy->add_option("--metric", energy_metric, "override the sidecar metric");

    std::string series_metric = "euclidean", series_beta;
    int series_order = 12;
    auto* series = app.add_subcommand("series", "exact power series of v = 2 log a at the origin");
    series->add_option("--metric", series_metric);
    series->add_option("--beta", series_beta, "rational, e.g. -1/3")->required();
    series->add_option("--order", series_order)->check(CLI::Range(2, 60));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(sa, args, out);
        if (*sweep) return cmd_sweep(wa, args, out, err);
        if (*verify) return cmd_verify(va, out);
        if (*green) return cmd_green(ga, out);
        if (*energy) return cmd_energy(profile_path, energy_metric, out);
        if (*series) return cmd_series(series_metric, series_beta, series_order, out);
    } catch (const UsageError& e) {
        err << "g2mono: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoSolutionError& e) {
        err << "g2mono: no solution: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const Error& e) {
        err << "g2mono: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"g2mono"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace g2mono
