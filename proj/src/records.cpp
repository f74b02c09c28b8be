#include "urnlab/records.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace urnlab {

using nlohmann::ordered_json;

RunRecord to_record(const TieSummary& s, std::int64_t run) {
    RunRecord r;
    r.run = run;
    r.seed = s.seed;
    r.duration_observed = s.last_tie_or(-1);
    r.censored = s.censored;
    r.intensity = s.intensity_observed;
    r.final_x1 = s.final_state.x1;
    r.final_x2 = s.final_state.x2;
    r.leader = s.leader;
    return r;
}

RunObservation to_observation(const RunRecord& r) {
    return RunObservation{r.duration_observed, r.intensity, r.leader};
}

void write_records_jsonl(const std::string& path, std::span<const TieSummary> batch) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("records: cannot write " + path);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const RunRecord r = to_record(batch[i], static_cast<std::int64_t>(i));
        ordered_json j;
        j["run"] = r.run;
        j["seed"] = r.seed;
        j["duration_observed"] = r.duration_observed;
        j["censored"] = r.censored;
        j["intensity"] = r.intensity;
        j["final_x1"] = r.final_x1;
        j["final_x2"] = r.final_x2;
        j["leader"] = to_string(r.leader);
        out << j.dump() << "\n";
    }
}

std::vector<RunRecord> read_records_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("records: cannot open " + path);
    std::vector<RunRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error("records: parse error at line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
        RunRecord r;
        r.run = j.at("run").get<std::int64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.duration_observed = j.at("duration_observed").get<std::int64_t>();
        r.censored = j.at("censored").get<bool>();
        r.intensity = j.at("intensity").get<std::int64_t>();
        r.final_x1 = j.at("final_x1").get<std::int64_t>();
        r.final_x2 = j.at("final_x2").get<std::int64_t>();
        r.leader = leader_from_string(j.at("leader").get<std::string>());
        out.push_back(r);
    }
    return out;
}

void write_metadata(const std::string& path, const ExperimentConfig& config) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("records: cannot write " + path);
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    ordered_json j;
    j["config_hash"] = config.hash();
    j["code_version"] = kCodeVersion;
    j["horizon"] = config.horizon;
    j["n_runs"] = config.n_runs;
    j["created_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    out << j.dump(2) << "\n";
}

RecordsMetadata read_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("records: cannot open " + path);
    ordered_json j;
    in >> j;
    RecordsMetadata m;
    m.config_hash = j.at("config_hash").get<std::uint64_t>();
    m.code_version = j.at("code_version").get<std::string>();
    m.horizon = j.at("horizon").get<std::int64_t>();
    m.n_runs = j.at("n_runs").get<std::int64_t>();
    return m;
}

}  // namespace urnlab
