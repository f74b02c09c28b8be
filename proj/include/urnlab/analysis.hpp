#pragma once

#include <string>
#include <vector>

#include "urnlab/config.hpp"
#include "urnlab/observables.hpp"

namespace urnlab {

/// Files produced by one analysis pass.
struct AnalysisOutputs {
    std::vector<std::string> files;
    TailCurve duration;
    TailCurve intensity;
};

/// Builds duration/intensity curves and slope fits from run observations and
/// writes them under out_dir: duration_tail.csv, intensity_tail.csv, fits.csv,
/// and for r > 1 the leader-conditioned duration curves. Fit rows that lack
/// enough usable points are reported in fits.csv with status=insufficient.
AnalysisOutputs write_analysis(const ExperimentConfig& config,
                               std::span<const RunObservation> observations,
                               const std::string& out_dir);

}  // namespace urnlab
