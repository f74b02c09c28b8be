#include "doctest.h"

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "urnlab/analysis.hpp"
#include "urnlab/config.hpp"
#include "urnlab/records.hpp"
#include "urnlab/urn.hpp"
#include "urnlab/validate.hpp"

using namespace urnlab;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("config_io");

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("urnlab_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config round trip and stable hash") {
    ExperimentConfig c = desk_preset();
    c.params = UrnParams{1.5, 1.0, 1, 1};
    c.n_runs = 500;
    c.horizon = 50'000;
    c.duration_fit_window = {10.0, 500.0};
    const auto text = c.canonical_json();
    const auto back = ExperimentConfig::from_json_text(text);
    CHECK(back.params.beta == c.params.beta);
    CHECK(back.n_runs == c.n_runs);
    CHECK(back.hash() == c.hash());

    // out_dir is not part of the experiment identity
    ExperimentConfig moved = c;
    moved.out_dir = "elsewhere";
    CHECK(moved.hash() == c.hash());

    ExperimentConfig reseeded = c;
    reseeded.master_seed = 999;
    CHECK(reseeded.hash() != c.hash());
}

TEST_CASE("config validation messages name the offending field") {
    ExperimentConfig c = desk_preset();
    c.n_runs = 0;
    CHECK_THROWS_WITH_AS(c.validate(), "config: n_runs must be >= 1", std::invalid_argument);

    c = desk_preset();
    c.duration_fit_window = {100.0, 20'000.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // beyond horizon/100

    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{\"horizon\": 5}"),
                    std::invalid_argument);
}

TEST_CASE("config parse errors carry line and column") {
    try {
        ExperimentConfig::from_json_text("{\n  \"params\": {\n  bad\n}\n}");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("records: round trip, determinism, record count") {
    TempDir tmp;
    const UrnParams p{1.2, 1.1, 1, 1};
    const auto batch = simulate_batch(p, 300, 50, 9, 0);

    const auto path_a = (tmp.path / "a.jsonl").string();
    const auto path_b = (tmp.path / "b.jsonl").string();
    write_records_jsonl(path_a, batch);
    write_records_jsonl(path_b, batch);
    CHECK(slurp(path_a) == slurp(path_b));

    const auto records = read_records_jsonl(path_a);
    REQUIRE(records.size() == batch.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].run == static_cast<std::int64_t>(i));
        CHECK(records[i].seed == batch[i].seed);
        CHECK(records[i].duration_observed == batch[i].last_tie_or(-1));
        CHECK(records[i].intensity == batch[i].intensity_observed);
        CHECK(records[i].final_x1 == batch[i].final_state.x1);
        CHECK(records[i].leader == batch[i].leader);
        CHECK(records[i].censored);
    }
}

TEST_CASE("metadata sidecar carries the config hash") {
    TempDir tmp;
    ExperimentConfig c = desk_preset();
    c.n_runs = 10;
    c.horizon = 1'000;
    c.duration_fit_window = {1.0, 10.0};
    c.intensity_fit_window = {1.0, 10.0};
    const auto meta_path = (tmp.path / "records.meta.json").string();
    write_metadata(meta_path, c);
    const auto m = read_metadata(meta_path);
    CHECK(m.config_hash == c.hash());
    CHECK(m.code_version == kCodeVersion);
    CHECK(m.n_runs == 10);
}

TEST_CASE("analysis writes curves and fits with embedded hash") {
    TempDir tmp;
    ExperimentConfig c;
    c.params = UrnParams{2.0, 1.2, 1, 1};
    c.horizon = 20'000;
    c.n_runs = 2'000;
    c.master_seed = 13;
    c.duration_fit_window = {10.0, 200.0};
    c.intensity_fit_window = {2.0, 12.0};
    c.validate();

    const auto batch = simulate_batch(c.params, c.horizon, c.n_runs, c.master_seed, 0);
    const auto obs = observe(batch);
    const auto outputs = write_analysis(c, obs, (tmp.path / "out").string());

    CHECK(fs::exists(tmp.path / "out" / "duration_tail.csv"));
    CHECK(fs::exists(tmp.path / "out" / "intensity_tail.csv"));
    CHECK(fs::exists(tmp.path / "out" / "fits.csv"));
    // r > 1: conditional curves exist
    CHECK(fs::exists(tmp.path / "out" / "conditional_duration_leader1.csv"));
    CHECK(fs::exists(tmp.path / "out" / "conditional_duration_leader2.csv"));

    char expect[48];
    std::snprintf(expect, sizeof(expect), "# config_hash=%016llx",
                  static_cast<unsigned long long>(c.hash()));
    for (const auto& f : outputs.files) {
        const auto text = slurp(f);
        CHECK(text.find(expect) == 0);
    }

    // byte-identical on rerun
    const auto outputs2 = write_analysis(c, obs, (tmp.path / "out2").string());
    CHECK(slurp(tmp.path / "out" / "duration_tail.csv") ==
          slurp(tmp.path / "out2" / "duration_tail.csv"));
    CHECK(slurp(tmp.path / "out" / "fits.csv") == slurp(tmp.path / "out2" / "fits.csv"));

    CHECK_THROWS_AS(write_analysis(c, std::vector<RunObservation>{}, (tmp.path / "e").string()),
                    std::invalid_argument);
}

TEST_CASE("validate dominance suite runs clean at small scale") {
    ValidateOptions opt;
    opt.runs = 500;
    opt.coupled_runs = 50;
    const auto results = run_validate_suite("dominance", opt);
    CHECK(results.size() == 6);
    for (const auto& r : results) CHECK(r.pass);
    CHECK_THROWS_AS(run_validate_suite("nope", opt), std::invalid_argument);
}

TEST_SUITE_END();
