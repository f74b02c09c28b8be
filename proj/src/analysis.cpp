#include "urnlab/analysis.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace urnlab {

namespace {

void fit_row(std::ostream& os, const char* metric, const char* subset, FitScale scale,
             const TailCurve& curve, FitWindow window) {
    char buf[256];
    try {
        const auto fit = fit_slope(curve, window, scale);
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%d,ok\n",
                      metric, subset, to_string(scale).c_str(), window.lo, window.hi,
                      fit.slope, fit.intercept, fit.residual_rms, fit.n_points);
        os << buf;
    } catch (const std::exception&) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.17g,%.17g,,,,0,insufficient\n", metric,
                      subset, to_string(scale).c_str(), window.lo, window.hi);
        os << buf;
    }
}

void hash_line(std::ostream& os, std::uint64_t hash) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "# config_hash=%016llx\n",
                  static_cast<unsigned long long>(hash));
    os << buf;
}

std::string write_curve_file(const std::filesystem::path& dir, const std::string& name,
                             const TailCurve& curve, std::uint64_t hash) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("analysis: cannot write " + path.string());
    hash_line(out, hash);
    write_tail_curve_csv(out, curve);
    return path.string();
}

}  // namespace

AnalysisOutputs write_analysis(const ExperimentConfig& config,
                               std::span<const RunObservation> observations,
                               const std::string& out_dir) {
    if (observations.empty()) throw std::invalid_argument("analysis: empty records");
    config.validate();
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    AnalysisOutputs out;
    const std::uint64_t hash = config.hash();
    const auto dgrid = config.duration_grid();
    const auto igrid = config.intensity_grid();
    out.duration = duration_tail(observations, config.horizon, dgrid);
    out.intensity = intensity_tail(observations, config.horizon, igrid);

    out.files.push_back(write_curve_file(dir, "duration_tail.csv", out.duration, hash));
    out.files.push_back(write_curve_file(dir, "intensity_tail.csv", out.intensity, hash));

    const auto fits_path = dir / "fits.csv";
    std::ofstream fits(fits_path, std::ios::trunc);
    if (!fits) throw std::runtime_error("analysis: cannot write " + fits_path.string());
    hash_line(fits, hash);
    fits << "metric,subset,scale,window_lo,window_hi,slope,intercept,residual_rms,"
            "n_points,status\n";
    fit_row(fits, "duration", "all", FitScale::loglog, out.duration,
            config.duration_fit_window);
    fit_row(fits, "intensity", "all", FitScale::semilog, out.intensity,
            config.intensity_fit_window);
    fit_row(fits, "intensity", "all", FitScale::loglog, out.intensity,
            config.intensity_fit_window);

    if (config.params.r > 1.0) {
        const auto split = conditional_duration_tails(observations, config.horizon, dgrid);
        if (!split.leader1.empty())
            out.files.push_back(write_curve_file(dir, "conditional_duration_leader1.csv",
                                                 split.leader1, hash));
        if (!split.leader2.empty())
            out.files.push_back(write_curve_file(dir, "conditional_duration_leader2.csv",
                                                 split.leader2, hash));
        for (auto scale : {FitScale::loglog, FitScale::semilog}) {
            if (!split.leader1.empty())
                fit_row(fits, "duration", "leader1", scale, split.leader1,
                        config.duration_fit_window);
            if (!split.leader2.empty())
                fit_row(fits, "duration", "leader2", scale, split.leader2,
                        config.duration_fit_window);
        }
    }
    out.files.push_back(fits_path.string());
    return out;
}

}  // namespace urnlab
