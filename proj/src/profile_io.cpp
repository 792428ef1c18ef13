#include "g2mono/io.hpp"

#include "g2mono/errors.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace g2mono {

using nlohmann::json;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Classification parse_classification(const std::string& s) {
    for (auto c : {Classification::bounded, Classification::blowup, Classification::flat})
        if (to_string(c) == s) return c;
    throw UsageError("unknown classification '" + s + "'");
}

}  // namespace

json RunRecord::to_json() const {
    json j;
    j["schema"] = kSidecarSchema;
    j["command"] = command;
    j["parameters"] = parameters;
    j["metric"] = metric;
    j["outputs"] = outputs;
    j["stats"] = stats;
    for (auto it = results.begin(); it != results.end(); ++it) j[it.key()] = it.value();
    j["version"] = version;
    j["timestamp"] = timestamp;
    return j;
}

RunRecord RunRecord::from_json(const json& j) {
    if (!j.is_object() || j.value("schema", 0) != kSidecarSchema) throw UsageError("unsupported sidecar schema");
    RunRecord r;
    r.command = j.value("command", "");
    r.parameters = j.value("parameters", json::object());
    r.metric = j.value("metric", "");
    r.outputs = j.value("outputs", std::vector<std::string>{});
    r.stats = j.value("stats", json::object());
    r.version = j.value("version", "");
    r.timestamp = j.value("timestamp", "");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& k = it.key();
        if (k != "schema" && k != "command" && k != "parameters" && k != "metric" && k != "outputs" &&
            k != "stats" && k != "version" && k != "timestamp")
            r.results[k] = it.value();
    }
    return r;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string sidecar_path(const std::string& data_path) { return data_path + ".json"; }

void write_sidecar(const std::string& data_path, const RunRecord& record) {
    std::ofstream out(sidecar_path(data_path));
    if (!out) throw UsageError("cannot write " + sidecar_path(data_path));
    out << record.to_json().dump(2) << "\n";
}

RunRecord read_sidecar(const std::string& data_path) {
    std::ifstream in(sidecar_path(data_path));
    if (!in) throw UsageError("missing sidecar " + sidecar_path(data_path));
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("malformed sidecar " + sidecar_path(data_path) + ": " + e.what());
    }
    return RunRecord::from_json(j);
}

json stats_json(const IntegrationStats& s) {
    return {{"accepted", s.accepted}, {"rejected", s.rejected}, {"evaluations", s.evaluations},
            {"final_radius", s.final_radius}};
}

json tail_json(const TailInfo& t) {
    return {{"r_end", t.r_end},       {"a_end", t.a_end},           {"phi_end", t.phi_end},
            {"green_end", t.green_end}, {"error_bound", t.error_bound}, {"event", t.event}};
}

void write_profile_csv(const std::string& path, const MonopoleProfile& p) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << "r,a,phi,v\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        out << fmt17(p.r[i]) << ',' << fmt17(p.a[i]) << ',' << fmt17(p.phi[i]) << ','
            << fmt17(i < p.v.size() ? p.v[i] : 2.0 * std::log(p.a[i])) << '\n';
}

MonopoleProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,a,phi,v", 0) != 0)
        throw UsageError(path + ": expected header r,a,phi,v");
    MonopoleProfile p;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) throw UsageError(path + ":" + std::to_string(lineno) + ": short row");
            try {
                std::size_t used = 0;
                vals[k] = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw UsageError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        p.r.push_back(vals[0]);
        p.a.push_back(vals[1]);
        p.phi.push_back(vals[2]);
        p.v.push_back(vals[3]);
    }
    if (p.size() == 0) throw UsageError(path + ": no samples");
    return p;
}

MonopoleProfile load_profile(const std::string& path) {
    MonopoleProfile p = read_profile_csv(path);
    std::ifstream probe(sidecar_path(path));
    if (!probe) return p;
    const RunRecord rec = read_sidecar(path);
    p.metric = rec.metric;
    const auto& r = rec.results;
    p.beta = r.value("beta", 0.0);
    p.mass = r.value("mass", 0.0);
    p.tol = r.value("tol", 0.0);
    if (r.contains("classification")) p.classification = parse_classification(r["classification"]);
    if (r.contains("tail")) {
        const auto& t = r["tail"];
        p.tail.r_end = t.value("r_end", 0.0);
        p.tail.a_end = t.value("a_end", 0.0);
        p.tail.phi_end = t.value("phi_end", 0.0);
        p.tail.green_end = t.value("green_end", 0.0);
        p.tail.error_bound = t.value("error_bound", 0.0);
        p.tail.event = t.value("event", "");
    }
    return p;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt17(row[k]);
        out << '\n';
    }
}

}  // namespace g2mono
