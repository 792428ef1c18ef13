#include "doctest.h"

#include "g2mono/cli.hpp"
#include "g2mono/energy.hpp"
#include "g2mono/io.hpp"
#include "g2mono/shooting.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace g2mono;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
    std::vector<json> lines() const {
        std::vector<json> v;
        std::istringstream is(out);
        for (std::string l; std::getline(is, l);)
            if (!l.empty()) v.push_back(json::parse(l));
        return v;
    }
    json last() const { return lines().back(); }
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("solve writes a profile and a sidecar") {
    const auto r = run({"solve", "--metric", "euclidean", "--mass", "1", "--tol", "1e-10", "--out", "cli_bps.csv",
                        "--plot", "cli_bps.svg"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.last()["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    const auto rec = read_sidecar("cli_bps.csv");
    CHECK(rec.command == "solve");
    CHECK(rec.metric == "euclidean");
    CHECK(rec.version == version());
    CHECK(rec.results["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rec.results["tol"].get<double>() == 1e-10);
    CHECK(rec.stats["accepted"].get<int>() > 0);
    CHECK(rec.outputs.size() == 2);
    const std::string csv = slurp("cli_bps.csv");
    CHECK(csv.rfind("r,a,phi,v\n", 0) == 0);
    CHECK(slurp("cli_bps.svg").find("<path") != std::string::npos);

    SUBCASE("deterministic") {
        REQUIRE(run({"solve", "--metric", "euclidean", "--mass", "1", "--out", "cli_bps2.csv"}).code == kExitOk);
        CHECK(slurp("cli_bps2.csv") == csv);
    }
    SUBCASE("round trip keeps energy and mass") {
        const auto e = make_metric(MetricId::euclidean);
        const auto direct = solve_monopole(*e, 1.0);
        const auto loaded = load_profile("cli_bps.csv");
        CHECK(loaded.mass == direct.mass);
        CHECK(loaded.size() == direct.size());
        CHECK(loaded.classification == Classification::bounded);
        CHECK(intermediate_energy(loaded, *e).energy == intermediate_energy(direct, *e).energy);
        const auto en = run({"energy", "--profile", "cli_bps.csv"});
        REQUIRE(en.code == kExitOk);
        CHECK(en.last()["energy"].get<double>() == intermediate_energy(direct, *e).energy);
        CHECK(en.last()["energy"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(en.last()["mass"].get<double>() == direct.mass);
    }
}

TEST_CASE("solve outcomes and exit codes") {
    const auto flat = run({"solve", "--metric", "bs_s4", "--beta", "0"});
    CHECK(flat.code == kExitOk);
    CHECK(flat.last()["mass"].get<double>() == 0.0);
    CHECK(flat.last()["classification"] == "flat");

    const auto pos = run({"solve", "--metric", "bs_cp2", "--beta", "0.1"});
    CHECK(pos.code == kExitSolverFailure);
    CHECK(pos.err.find("no solution") != std::string::npos);

    CHECK(run({"solve", "--metric", "euclidean"}).code == kExitUsage);
    CHECK(run({"solve", "--mass", "1", "--beta", "-1"}).code == kExitUsage);
    CHECK(run({"solve", "--metric", "nowhere", "--mass", "1"}).code == kExitUsage);
    CHECK(run({"solve", "--mass", "1", "--bogus"}).code == kExitUsage);
    CHECK(run({"solve", "--mass", "abc"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--version"}).code == kExitOk);
    CHECK(run({"energy", "--help"}).code == kExitOk);
}

TEST_CASE("sweep") {
    const auto r = run({"sweep", "--metric", "euclidean", "--mass-min", "0.5", "--mass-max", "2", "--steps", "4",
                        "--out", "cli_sweep.csv", "--plot", "cli_sweep.svg"});
    REQUIRE(r.code == kExitOk);
    const auto lines = r.lines();
    REQUIRE(lines.size() == 5);
    double prev = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double m = lines[i]["mass"].get<double>();
        const double b = lines[i]["beta"].get<double>();
        CHECK(b == doctest::Approx(-m * m / 3.0).epsilon(1e-8));
        CHECK(b < prev);
        prev = b;
    }
    CHECK(lines[4]["monotone"].get<bool>());
    CHECK(slurp("cli_sweep.csv").rfind("mass,beta,energy,r_end\n", 0) == 0);
    CHECK(slurp("cli_sweep_profiles.svg").find("<path") != std::string::npos);
    CHECK(read_sidecar("cli_sweep.csv").command == "sweep");

    CHECK(run({"sweep", "--mass-min", "2", "--mass-max", "1", "--steps", "3"}).code == kExitUsage);
    CHECK(run({"sweep", "--mass-min", "1", "--mass-max", "2", "--steps", "0"}).code == kExitUsage);

    SUBCASE("thread count does not change results") {
        setenv("G2MONO_THREADS", "1", 1);
        CHECK(sweep_threads() == 1);
        const auto one = run({"sweep", "--metric", "bs_s4", "--mass-min", "0.5", "--mass-max", "3", "--steps", "6"});
        setenv("G2MONO_THREADS", "3", 1);
        const auto three = run({"sweep", "--metric", "bs_s4", "--mass-min", "0.5", "--mass-max", "3", "--steps", "6"});
        CHECK(one.out == three.out);
        setenv("G2MONO_THREADS", "zero", 1);
        CHECK(run({"sweep", "--mass-min", "1", "--mass-max", "2", "--steps", "2"}).code == kExitUsage);
        unsetenv("G2MONO_THREADS");
    }
}

TEST_CASE("verify, green, series") {
    const auto v = run({"verify", "--oracle", "su3_instanton", "--c", "2"});
    REQUIRE(v.code == kExitOk);
    CHECK(v.last()["sup_residual"].get<double>() <= 1e-10);
    const auto vt = run({"verify", "--oracle", "bps_mass", "--m", "1", "--table", "--points", "10", "--compare"});
    CHECK(vt.lines().size() == 11);
    CHECK(vt.last()["solver_sup_error"].get<double>() <= 1e-6);
    CHECK(run({"verify", "--oracle", "dirac_euclidean", "--metric", "bs_s4", "--max-residual", "1e-12"}).code ==
          kExitSolverFailure);
    CHECK(run({"verify", "--oracle", "nothing"}).code == kExitUsage);

    const auto g = run({"green", "--metric", "bs_s4", "--charge", "1", "--r", "50"});
    REQUIRE(g.code == kExitOk);
    CHECK(g.last()["fit"]["exponent"].get<double>() == doctest::Approx(-5.0).epsilon(0.01));
    CHECK(g.last()["G"].get<double>() == doctest::Approx(1.81931980022358806e-8).epsilon(1e-10));
    CHECK(run({"green", "--metric", "bs_s4", "--r", "0"}).code == kExitUsage);

    const auto s = run({"series", "--metric", "euclidean", "--beta", "-1/3", "--order", "6"});
    REQUIRE(s.code == kExitOk);
    CHECK(s.last()["coeffs"] == json::parse("[[0,1],[0,1],[-1,3],[0,1],[1,90],[0,1],[-2,2835]]"));
    CHECK(s.last()["beta"] == json::parse("[-1,3]"));
    CHECK(run({"series", "--beta", "one"}).code == kExitUsage);
}

TEST_CASE("energy without a sidecar needs a metric") {
    std::ofstream("cli_bare.csv") << "r,a,phi,v\n0,1,0,0\n1,0.5,-0.2,-1.3862943611198906\n";
    std::remove("cli_bare.csv.json");
    CHECK(run({"energy", "--profile", "cli_bare.csv"}).code == kExitUsage);
    CHECK(run({"energy", "--profile", "cli_bare.csv", "--metric", "euclidean"}).code == kExitOk);
    CHECK(run({"energy", "--profile", "cli_missing.csv"}).code == kExitUsage);
    std::ofstream("cli_bad.csv") << "x,y\n1,2\n";
    CHECK(run({"energy", "--profile", "cli_bad.csv", "--metric", "euclidean"}).code == kExitUsage);
}
