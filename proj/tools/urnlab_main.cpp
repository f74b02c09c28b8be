// urnlab - simulation and verification laboratory for two-color nonlinear
// urn competitions with fitness.
//
// Subcommands: simulate, analyze, theory, validate, sweep.
// Exit codes: 0 success, 1 validation failure, 2 check-suite failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "urnlab/analysis.hpp"
#include "urnlab/config.hpp"
#include "urnlab/oracle.hpp"
#include "urnlab/records.hpp"
#include "urnlab/theory.hpp"
#include "urnlab/urn.hpp"
#include "urnlab/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CommonOverrides {
    std::string config_path;
    std::string preset = "desk";
    std::string out_dir;
    double beta = -1.0;
    double r = -1.0;
    std::vector<std::int64_t> x0;
    std::int64_t runs = -1;
    std::int64_t horizon = -1;
    std::int64_t seed = -1;
    int threads = 0;
};

urnlab::ExperimentConfig resolve_config(const CommonOverrides& o) {
    urnlab::ExperimentConfig c;
    if (!o.config_path.empty()) {
        c = urnlab::load_config(o.config_path);
    } else {
        if (o.preset == "desk") c = urnlab::desk_preset();
        else if (o.preset == "paper") c = urnlab::paper_preset();
        else throw std::invalid_argument("unknown preset '" + o.preset + "'");
    }
    if (o.beta >= 0.0) c.params.beta = o.beta;
    if (o.r >= 0.0) c.params.r = o.r;
    if (!o.x0.empty()) {
        if (o.x0.size() != 2) throw std::invalid_argument("--x0 needs two counts");
        c.params.x01 = o.x0[0];
        c.params.x02 = o.x0[1];
    }
    if (o.runs >= 0) c.n_runs = o.runs;
    if (o.horizon >= 0) c.horizon = o.horizon;
    if (o.seed >= 0) c.master_seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    c.validate();
    return c;
}

int cmd_simulate(const CommonOverrides& o) {
    const auto config = resolve_config(o);
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    const auto batch = urnlab::simulate_batch(config.params, config.horizon, config.n_runs,
                                              config.master_seed, o.threads);
    urnlab::write_records_jsonl((dir / "records.jsonl").string(), batch);
    urnlab::write_metadata((dir / "records.meta.json").string(), config);
    urnlab::save_config(config, (dir / "config.json").string());

    std::int64_t censored_late = 0;
    for (const auto& s : batch)
        if (s.last_tie_or(-1) > config.horizon / 100) ++censored_late;
    std::printf("wrote %lld records to %s (config hash %016llx)\n",
                static_cast<long long>(batch.size()), (dir / "records.jsonl").c_str(),
                static_cast<unsigned long long>(config.hash()));
    std::printf("runs with a tie beyond horizon/100: %lld (%.3f%%)\n",
                static_cast<long long>(censored_late),
                100.0 * static_cast<double>(censored_late) / static_cast<double>(batch.size()));
    return 0;
}

int cmd_analyze(const CommonOverrides& o, const std::string& records_path) {
    const auto config = resolve_config(o);
    fs::path records(records_path);
    if (fs::is_directory(records)) records /= "records.jsonl";
    const fs::path meta = records.parent_path() / "records.meta.json";

    if (fs::exists(meta)) {
        const auto m = urnlab::read_metadata(meta.string());
        if (m.config_hash != config.hash()) {
            std::fprintf(stderr,
                         "analyze: records were produced under a different config "
                         "(hash %016llx, expected %016llx)\n",
                         static_cast<unsigned long long>(m.config_hash),
                         static_cast<unsigned long long>(config.hash()));
            return 1;
        }
    } else {
        std::fprintf(stderr, "analyze: missing metadata sidecar %s\n", meta.c_str());
        return 1;
    }

    const auto recs = urnlab::read_records_jsonl(records.string());
    std::vector<urnlab::RunObservation> obs;
    obs.reserve(recs.size());
    for (const auto& r : recs) obs.push_back(urnlab::to_observation(r));

    const std::string out_dir = o.out_dir.empty() ? config.out_dir : o.out_dir;
    const auto outputs = urnlab::write_analysis(config, obs, out_dir);
    for (const auto& f : outputs.files) std::printf("wrote %s\n", f.c_str());
    return 0;
}

std::string law_family(const urnlab::DurationLaw& law) {
    if (std::holds_alternative<urnlab::AlwaysInfinite>(law)) return "never-ends";
    if (std::holds_alternative<urnlab::PowerLaw>(law)) return "power-law";
    if (std::holds_alternative<urnlab::PowerLawRange>(law)) return "power-law-range";
    return "weibull-upper";
}

std::string law_value(const urnlab::DurationLaw& law) {
    char buf[64];
    if (const auto* p = std::get_if<urnlab::PowerLaw>(&law)) {
        std::snprintf(buf, sizeof(buf), "%.10g", p->exponent);
        return buf;
    }
    if (const auto* p = std::get_if<urnlab::PowerLawRange>(&law)) {
        std::snprintf(buf, sizeof(buf), "%.10g..%.10g", p->lo, p->hi);
        return buf;
    }
    if (const auto* p = std::get_if<urnlab::WeibullUpper>(&law)) {
        std::snprintf(buf, sizeof(buf), "%.10g", p->rate);
        return buf;
    }
    return "";
}

std::string intensity_family(const urnlab::IntensityLaw& law) {
    if (std::holds_alternative<urnlab::AlwaysInfinite>(law)) return "never-ends";
    if (std::holds_alternative<urnlab::PowerLawBounds>(law)) return "power-law-bounds";
    return "exponential";
}

std::string intensity_value(const urnlab::IntensityLaw& law) {
    char buf[64];
    if (const auto* p = std::get_if<urnlab::ExponentialTail>(&law)) {
        std::snprintf(buf, sizeof(buf), "%.10g", p->rate);
        return buf;
    }
    if (const auto* p = std::get_if<urnlab::PowerLawBounds>(&law)) {
        std::string lo = p->lower ? std::to_string(*p->lower) : "";
        std::string hi = p->upper ? std::to_string(*p->upper) : "";
        std::snprintf(buf, sizeof(buf), "%s..%s", lo.c_str(), hi.c_str());
        return buf;
    }
    return "";
}

int cmd_theory(double beta, double r, std::vector<std::int64_t> x0, double tol,
               std::vector<double> ts, const std::string& json_out) {
    if (x0.empty()) x0 = {1, 1};
    if (x0.size() != 2) throw std::invalid_argument("--x0 needs two counts");
    const auto regime = urnlab::predict_regime(beta, r, x0[0], x0[1]);

    ordered_json j;
    j["beta"] = beta;
    j["r"] = r;
    j["x0"] = x0;
    j["duration"] = {{"family", law_family(regime.duration)},
                     {"law", urnlab::describe(regime.duration)}};
    j["intensity"] = {{"family", intensity_family(regime.intensity)},
                      {"law", urnlab::describe(regime.intensity)}};

    std::printf("regime (beta=%g, r=%g, x0=(%lld,%lld)):\n", beta, r,
                static_cast<long long>(x0[0]), static_cast<long long>(x0[1]));
    std::printf("  duration : %s\n", urnlab::describe(regime.duration).c_str());
    std::printf("  intensity: %s\n", urnlab::describe(regime.intensity).c_str());

    const bool k_defined = beta > 1.0 || (beta > 0.5 && r == 1.0);
    if (k_defined) {
        try {
            const auto k = urnlab::k_constant(beta, r, x0[0], x0[1], tol);
            std::printf("  K = %.8f (abs err <= %.2g, J=%lld, S=%.3g)\n", k.value,
                        k.abs_error_estimate, static_cast<long long>(k.product_truncation),
                        k.integral_truncation);
            j["k_constant"] = {{"value", k.value},
                               {"abs_error_estimate", k.abs_error_estimate},
                               {"product_truncation", k.product_truncation},
                               {"integral_truncation", k.integral_truncation}};
            if (ts.empty()) ts = {1e2, 1e3, 1e4};
            ordered_json asym = ordered_json::array();
            for (double t : ts) {
                const double v = urnlab::duration_asymptote(beta, r, x0[0], x0[1], t, k.value);
                std::printf("  duration asymptote at t=%g: %.6g\n", t, v);
                asym.push_back({{"t", t}, {"value", v}});
            }
            j["duration_asymptote"] = asym;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "theory: quadrature failed: %s\n", e.what());
            return 1;
        }
    }

    if (!json_out.empty()) {
        std::ofstream out(json_out, std::ios::trunc);
        if (!out) {
            std::fprintf(stderr, "theory: cannot write %s\n", json_out.c_str());
            return 1;
        }
        out << j.dump(2) << "\n";
        std::printf("wrote %s\n", json_out.c_str());
    }
    return 0;
}

int cmd_sweep(const std::vector<double>& betas, const std::vector<double>& rs,
              std::vector<std::int64_t> x0, const std::string& out_path) {
    if (x0.empty()) x0 = {1, 1};
    if (x0.size() != 2) throw std::invalid_argument("--x0 needs two counts");
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "sweep: cannot write %s\n", out_path.c_str());
        return 1;
    }
    out << "beta,r,duration_family,duration_exponent_or_rate,intensity_family,"
           "intensity_rate\n";
    char buf[256];
    for (double r : rs) {
        for (double beta : betas) {
            const auto regime = urnlab::predict_regime(beta, r, x0[0], x0[1]);
            std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%s,%s,%s,%s\n", beta, r,
                          law_family(regime.duration).c_str(),
                          law_value(regime.duration).c_str(),
                          intensity_family(regime.intensity).c_str(),
                          intensity_value(regime.intensity).c_str());
            out << buf;
        }
    }
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), betas.size() * rs.size());
    return 0;
}

int cmd_validate(const std::string& suite, const urnlab::ValidateOptions& options,
                 bool as_json) {
    const auto results = urnlab::run_validate_suite(suite, options);
    bool all_pass = true;
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            arr.push_back({{"suite", r.suite},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"statistic", r.statistic},
                           {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::printf("[%s] %s: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                        r.name.c_str(), r.detail.c_str());
            all_pass = all_pass && r.pass;
        }
        std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES");
    }
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-color nonlinear urn competition laboratory"};
    app.require_subcommand(1);

    CommonOverrides common;
    std::string records_path;
    double beta = 1.0, r = 1.0, tol = 1e-4;
    std::vector<std::int64_t> x0;
    std::vector<double> betas, rs, ts;
    std::string out_path = "sweep.csv", json_out;
    std::string suite = "all";
    urnlab::ValidateOptions vopts;
    bool as_json = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "JSON experiment config");
        cmd->add_option("--preset", common.preset, "desk or paper")
            ->check(CLI::IsMember({"desk", "paper"}));
        cmd->add_option("--out", common.out_dir, "output directory");
        cmd->add_option("--beta", common.beta, "feedback strength");
        cmd->add_option("--r", common.r, "fitness ratio");
        cmd->add_option("--x0", common.x0, "initial counts (two values)")->expected(2);
        cmd->add_option("--runs", common.runs, "number of runs");
        cmd->add_option("--horizon", common.horizon, "steps per run");
        cmd->add_option("--seed", common.seed, "master seed");
        cmd->add_option("--threads", common.threads, "worker threads (0 = auto)");
    };

    auto* sim = app.add_subcommand("simulate", "run a batch and write JSONL records");
    add_common(sim);

    auto* ana = app.add_subcommand("analyze", "build tail curves and slope fits");
    add_common(ana);
    ana->add_option("--records", records_path, "records.jsonl or its directory")->required();

    auto* theory = app.add_subcommand("theory", "predicted regime, K constant, asymptotes");
    theory->add_option("--beta", beta, "feedback strength")->required();
    theory->add_option("--r", r, "fitness ratio")->required();
    theory->add_option("--x0", x0, "initial counts (two values)")->expected(2);
    theory->add_option("--tol", tol, "quadrature tolerance");
    theory->add_option("--t", ts, "times for asymptote evaluation");
    theory->add_option("--json", json_out, "also write a JSON report");

    auto* sweep = app.add_subcommand("sweep", "regime report over a (beta, r) grid");
    sweep->add_option("--betas", betas, "beta values")->required();
    sweep->add_option("--rs", rs, "r values")->required();
    sweep->add_option("--x0", x0, "initial counts (two values)")->expected(2);
    sweep->add_option("--out", out_path, "output CSV path");

    auto* val = app.add_subcommand("validate", "statistical check suites");
    val->add_option("--suite", suite, "oracle|embedding|dominance|bounds|all");
    val->add_option("--runs", vopts.runs, "runs per statistical check");
    val->add_option("--coupled-runs", vopts.coupled_runs, "coupled runs per pair");
    val->add_option("--seed", vopts.seed, "seed");
    val->add_option("--threads", vopts.n_threads, "worker threads (0 = auto)");
    val->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(common);
        if (ana->parsed()) return cmd_analyze(common, records_path);
        if (theory->parsed()) return cmd_theory(beta, r, x0, tol, ts, json_out);
        if (sweep->parsed()) return cmd_sweep(betas, rs, x0, out_path);
        if (val->parsed()) return cmd_validate(suite, vopts, as_json);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
