#pragma once

#include <cstdint>
#include <string>

#include "urnlab/observables.hpp"
#include "urnlab/params.hpp"

namespace urnlab {

/// Everything one experiment needs: urn parameters, batch shape, grids,
/// fit windows and the output location. Serialized as JSON.
struct ExperimentConfig {
    UrnParams params;
    std::int64_t horizon = 1'000'000;
    std::int64_t n_runs = 10'000;
    std::uint64_t master_seed = 1;
    int duration_points_per_decade = 12;
    std::int64_t intensity_grid_max = 200;
    FitWindow duration_fit_window{100.0, 10'000.0};
    FitWindow intensity_fit_window{15.0, 50.0};
    std::string out_dir = "out";

    /// Checks batch shape and that the fit windows sit inside the trusted
    /// range horizon/100. Throws std::invalid_argument naming the field.
    void validate() const;

    std::vector<double> duration_grid() const;
    std::vector<double> intensity_grid() const;

    std::string canonical_json() const;  // stable field order and formatting
    std::uint64_t hash() const;          // FNV-1a over canonical_json()

    static ExperimentConfig from_json_text(const std::string& text);
};

/// Desk scale runs in minutes on a laptop; paper scale reproduces the
/// published experiment shape.
ExperimentConfig desk_preset();
ExperimentConfig paper_preset();

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

/// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace urnlab
