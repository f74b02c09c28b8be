#include "urnlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace urnlab {

namespace {

using nlohmann::ordered_json;

/// Line/column of a byte offset, for parse errors.
std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
T require_field(const ordered_json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("config: field '") + key +
                                    "' has the wrong type");
    }
}

template <class T>
T optional_field(const ordered_json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("config: field '") + key +
                                    "' has the wrong type");
    }
}

ordered_json to_json(const ExperimentConfig& c, bool include_out_dir) {
    ordered_json j;
    j["params"] = {{"beta", c.params.beta},
                   {"r", c.params.r},
                   {"x0", {c.params.x01, c.params.x02}}};
    j["horizon"] = c.horizon;
    j["n_runs"] = c.n_runs;
    j["master_seed"] = c.master_seed;
    j["grids"] = {{"duration_points_per_decade", c.duration_points_per_decade},
                  {"intensity_max", c.intensity_grid_max}};
    j["fit_windows"] = {
        {"duration", {c.duration_fit_window.lo, c.duration_fit_window.hi}},
        {"intensity", {c.intensity_fit_window.lo, c.intensity_fit_window.hi}}};
    if (include_out_dir) j["out_dir"] = c.out_dir;
    return j;
}

ExperimentConfig from_json(const ordered_json& j) {
    ExperimentConfig c;
    const auto params = require_field<ordered_json>(j, "params");
    c.params.beta = require_field<double>(params, "beta");
    c.params.r = require_field<double>(params, "r");
    const auto x0 = require_field<std::vector<std::int64_t>>(params, "x0");
    if (x0.size() != 2)
        throw std::invalid_argument("config: field 'params.x0' must hold two counts");
    c.params.x01 = x0[0];
    c.params.x02 = x0[1];
    c.horizon = require_field<std::int64_t>(j, "horizon");
    c.n_runs = require_field<std::int64_t>(j, "n_runs");
    c.master_seed = require_field<std::uint64_t>(j, "master_seed");
    if (j.contains("grids")) {
        const auto grids = j.at("grids");
        c.duration_points_per_decade =
            optional_field<int>(grids, "duration_points_per_decade", c.duration_points_per_decade);
        c.intensity_grid_max =
            optional_field<std::int64_t>(grids, "intensity_max", c.intensity_grid_max);
    }
    if (j.contains("fit_windows")) {
        const auto w = j.at("fit_windows");
        if (w.contains("duration")) {
            const auto d = require_field<std::vector<double>>(w, "duration");
            if (d.size() != 2)
                throw std::invalid_argument("config: 'fit_windows.duration' must be [lo, hi]");
            c.duration_fit_window = {d[0], d[1]};
        }
        if (w.contains("intensity")) {
            const auto d = require_field<std::vector<double>>(w, "intensity");
            if (d.size() != 2)
                throw std::invalid_argument("config: 'fit_windows.intensity' must be [lo, hi]");
            c.intensity_fit_window = {d[0], d[1]};
        }
    }
    c.out_dir = optional_field<std::string>(j, "out_dir", c.out_dir);
    return c;
}

}  // namespace

void ExperimentConfig::validate() const {
    params.validate();
    if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
    if (n_runs < 1) throw std::invalid_argument("config: n_runs must be >= 1");
    if (duration_points_per_decade < 1)
        throw std::invalid_argument("config: duration_points_per_decade must be >= 1");
    if (intensity_grid_max < 1)
        throw std::invalid_argument("config: intensity grid max must be >= 1");
    const double trusted = static_cast<double>(horizon) / 100.0;
    if (duration_fit_window.lo < 1.0 || duration_fit_window.hi < duration_fit_window.lo)
        throw std::invalid_argument("config: bad duration fit window");
    if (duration_fit_window.hi > trusted)
        throw std::invalid_argument(
            "config: duration fit window exceeds the trusted range horizon/100");
    if (intensity_fit_window.lo < 1.0 || intensity_fit_window.hi < intensity_fit_window.lo)
        throw std::invalid_argument("config: bad intensity fit window");
    if (intensity_fit_window.hi > trusted)
        throw std::invalid_argument(
            "config: intensity fit window exceeds the trusted range horizon/100");
    if (out_dir.empty()) throw std::invalid_argument("config: out_dir must not be empty");
}

std::vector<double> ExperimentConfig::duration_grid() const {
    return log_spaced_grid(1.0, static_cast<double>(horizon), duration_points_per_decade);
}

std::vector<double> ExperimentConfig::intensity_grid() const {
    return unit_grid(1, intensity_grid_max);
}

std::string ExperimentConfig::canonical_json() const {
    // the output directory is not part of the experiment identity
    return to_json(*this, /*include_out_dir=*/false).dump(2);
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical_json()); }

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config: JSON parse error at " + locate(text, e.byte) +
                                    ": " + e.what());
    }
    auto c = from_json(j);
    c.validate();
    return c;
}

ExperimentConfig desk_preset() {
    ExperimentConfig c;
    c.horizon = 1'000'000;
    c.n_runs = 10'000;
    return c;
}

ExperimentConfig paper_preset() {
    ExperimentConfig c;
    c.horizon = 10'000'000;
    c.n_runs = 100'000;
    c.duration_fit_window = {100.0, 100'000.0};
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ExperimentConfig::from_json_text(ss.str());
}

void save_config(const ExperimentConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot write " + path);
    out << to_json(config, /*include_out_dir=*/true).dump(2) << "\n";
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace urnlab
