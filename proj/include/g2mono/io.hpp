#pragma once

#include "g2mono/profile.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace g2mono {

inline constexpr int kSidecarSchema = 1;

/// Provenance written next to every data file as `<file>.json`.
struct RunRecord {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::string metric;
    std::vector<std::string> outputs;
    nlohmann::json stats = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::string version;
    std::string timestamp;

    nlohmann::json to_json() const;
    static RunRecord from_json(const nlohmann::json& j);
};

std::string utc_timestamp();
std::string sidecar_path(const std::string& data_path);

void write_sidecar(const std::string& data_path, const RunRecord& record);
/// Throws UsageError if the file is missing or has the wrong schema.
RunRecord read_sidecar(const std::string& data_path);

nlohmann::json stats_json(const IntegrationStats& s);
nlohmann::json tail_json(const TailInfo& t);

/// CSV with header r,a,phi,v at 17 significant digits.
void write_profile_csv(const std::string& path, const MonopoleProfile& p);
/// Reads r,a,phi,v columns; metadata stays at defaults.
MonopoleProfile read_profile_csv(const std::string& path);
/// CSV plus sidecar metadata (metric, beta, mass, tol, classification, tail) when present.
MonopoleProfile load_profile(const std::string& path);

/// Generic numeric table with a header row.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace g2mono
