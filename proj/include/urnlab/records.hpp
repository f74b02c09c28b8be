#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urnlab/config.hpp"
#include "urnlab/observables.hpp"
#include "urnlab/params.hpp"

namespace urnlab {

/// One JSONL line of a run-record file.
struct RunRecord {
    std::int64_t run = 0;
    std::uint64_t seed = 0;
    std::int64_t duration_observed = -1;  // last tie, -1 when the run never tied
    bool censored = true;
    std::int64_t intensity = 0;
    std::int64_t final_x1 = 0;
    std::int64_t final_x2 = 0;
    Leader leader = Leader::tied;
};

RunRecord to_record(const TieSummary& summary, std::int64_t run);
RunObservation to_observation(const RunRecord& record);

/// Appends one record per line, ordered by run index; content is a pure
/// function of the batch, so reruns are byte-identical.
void write_records_jsonl(const std::string& path, std::span<const TieSummary> batch);
std::vector<RunRecord> read_records_jsonl(const std::string& path);

/// Sidecar metadata: config hash, code version and creation time (the one
/// field excluded from reproducibility comparisons).
void write_metadata(const std::string& path, const ExperimentConfig& config);

struct RecordsMetadata {
    std::uint64_t config_hash = 0;
    std::string code_version;
    std::int64_t horizon = 0;
    std::int64_t n_runs = 0;
};

RecordsMetadata read_metadata(const std::string& path);

inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace urnlab
