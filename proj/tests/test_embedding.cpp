#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <vector>

#include "urnlab/embedding.hpp"
#include "urnlab/oracle.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/stats.hpp"
#include "urnlab/urn.hpp"

using namespace urnlab;

TEST_SUITE_BEGIN("embedding");

TEST_CASE("empty clock ranges sum to zero") {
    const UrnParams p{1.0, 1.0, 1, 1};
    CHECK(sample_partial_sum(1, 5, 5, p, 1) == 0.0);
    CHECK(sample_partial_sum(2, 5, 3, p, 1) == 0.0);
    CHECK_THROWS_AS(sample_partial_sum(1, 0, 2, p, 1), std::invalid_argument);
}

TEST_CASE("single clock draw is a unit exponential") {
    const UrnParams p{0.0, 1.0, 1, 1};
    const std::int64_t reps = 100'000;
    double sum = 0.0;
    for (std::int64_t i = 0; i < reps; ++i)
        sum += sample_partial_sum(1, 1, 2, p, derive_run_seed(1, i));
    const double mean = sum / static_cast<double>(reps);
    // Exp(1): se of the mean is 1/sqrt(reps)
    CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("partial sums are positive and increasing in the upper target") {
    const UrnParams p{0.7, 1.0, 1, 1};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        // same seed means the same clock draws, so longer ranges strictly grow
        const double s10 = sample_partial_sum(1, 1, 10, p, seed);
        const double s20 = sample_partial_sum(1, 1, 20, p, seed);
        CHECK(s10 > 0.0);
        CHECK(s20 > s10);
    }
}

TEST_CASE("clock sums match the mean identity within 3 standard errors") {
    // mean of S_1(1, 101) at beta = 1 is the harmonic sum, variance sum 1/j^2
    const UrnParams p{1.0, 1.0, 1, 1};
    double expected = 0.0, var = 0.0;
    for (int j = 1; j <= 100; ++j) {
        expected += 1.0 / j;
        var += 1.0 / (static_cast<double>(j) * j);
    }
    const std::int64_t reps = 100'000;
    double sum = 0.0;
    for (std::int64_t i = 0; i < reps; ++i)
        sum += sample_partial_sum(1, 1, 101, p, derive_run_seed(2, i));
    const double mean = sum / static_cast<double>(reps);
    const double se = std::sqrt(var / static_cast<double>(reps));
    CHECK(std::abs(mean - expected) < 3.0 * se);
    CHECK(expected == doctest::Approx(5.187377517639621).epsilon(1e-12));

    // color 2 carries fitness 1/r: means scale by r
    const UrnParams pr{1.0, 2.0, 1, 1};
    double sum2 = 0.0;
    for (std::int64_t i = 0; i < reps / 10; ++i)
        sum2 += sample_partial_sum(2, 1, 101, pr, derive_run_seed(3, i));
    const double mean2 = sum2 / static_cast<double>(reps / 10);
    const double se2 = std::sqrt(4.0 * var / static_cast<double>(reps / 10));
    CHECK(std::abs(mean2 - 2.0 * expected) < 3.0 * se2);
}

TEST_CASE("embedded one-step probability matches the kernel") {
    // from (2,1) with beta=2, r=1.2 the kernel gives 4.8/5.8
    const UrnParams p{2.0, 1.2, 2, 1};
    const std::int64_t reps = 100'000;
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < reps; ++i) {
        const auto s = embedded_trajectory(p, 1, derive_run_seed(4, i));
        hits += s.final_state.x1 == 3 ? 1 : 0;
    }
    const double target = 4.8 / 5.8;
    const double phat = static_cast<double>(hits) / static_cast<double>(reps);
    const double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(reps));
    CHECK(std::abs(phat - target) < 3.0 * sigma);
}

TEST_CASE("embedded state at t = 2 is uniform for the linear urn") {
    const UrnParams p{1.0, 1.0, 1, 1};
    const std::int64_t reps = 100'000;
    std::int64_t counts[3] = {0, 0, 0};
    for (std::int64_t i = 0; i < reps; ++i) {
        const auto s = embedded_trajectory(p, 2, derive_run_seed(5, i));
        ++counts[s.final_state.x1 - 1];
    }
    for (int k = 0; k < 3; ++k) {
        const double phat = static_cast<double>(counts[k]) / static_cast<double>(reps);
        const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / static_cast<double>(reps));
        CHECK(std::abs(phat - 1.0 / 3) < 3.0 * sigma);
    }
}

TEST_CASE("embedded sampler passes chi-square against the oracle grid") {
    for (const auto& p : {UrnParams{0.0, 1.0, 1, 1}, UrnParams{0.8, 1.0, 1, 1},
                          UrnParams{1.5, 1.0, 1, 1}, UrnParams{0.8, 1.2, 1, 1},
                          UrnParams{2.0, 1.2, 1, 1}}) {
        for (std::int64_t t : {std::int64_t{8}, std::int64_t{16}}) {
            const auto exact = exact_state_distribution(p, t);
            std::vector<std::int64_t> counts(exact.probs.size(), 0);
            const std::int64_t runs = 20'000;
            for (std::int64_t i = 0; i < runs; ++i) {
                const auto s = embedded_trajectory(p, t, derive_run_seed(700 + t, i));
                ++counts[static_cast<std::size_t>(s.final_state.x1 - p.x01)];
            }
            const auto res = chi2_goodness_of_fit(exact.probs, counts);
            CHECK(res.p_value > 1e-3);
        }
    }
}

TEST_CASE("embedded and direct samplers agree in total variation") {
    const UrnParams p{1.5, 1.2, 1, 1};
    const std::int64_t t = 8, runs = 100'000;
    std::vector<double> emp_d(static_cast<std::size_t>(t) + 1, 0.0);
    std::vector<double> emp_e(static_cast<std::size_t>(t) + 1, 0.0);
    for (std::int64_t i = 0; i < runs; ++i) {
        const auto sd = simulate(p, t, derive_run_seed(61, i));
        const auto se = embedded_trajectory(p, t, derive_run_seed(62, i));
        emp_d[static_cast<std::size_t>(sd.final_state.x1 - 1)] += 1.0;
        emp_e[static_cast<std::size_t>(se.final_state.x1 - 1)] += 1.0;
    }
    for (auto& v : emp_d) v /= static_cast<double>(runs);
    for (auto& v : emp_e) v /= static_cast<double>(runs);
    CHECK(total_variation(emp_d, emp_e) < 0.01);
}

TEST_CASE("delta with empty targets is exactly zero") {
    const UrnParams p{1.5, 1.0, 2, 3};
    const auto d = sample_delta(p, 2, 3, 9);
    CHECK(d.value == 0.0);
}

TEST_CASE("delta sign symmetry at equal fitness") {
    const UrnParams p{1.0, 1.0, 1, 1};
    const std::int64_t reps = 100'000;
    std::int64_t pos = 0;
    for (std::int64_t i = 0; i < reps; ++i)
        pos += sample_delta(p, 8, 8, derive_run_seed(71, i)).value > 0 ? 1 : 0;
    const double phat = static_cast<double>(pos) / static_cast<double>(reps);
    CHECK(std::abs(phat - 0.5) < 0.005);
}

TEST_CASE("tie-probability identity links delta to the exact tie law") {
    // P[X(8) = (5,5)] = P[-xi_{1,5} < Delta(x0, 5, 5) < xi_{2,5}] at beta=1.5
    const UrnParams p{1.5, 1.0, 1, 1};
    const auto exact = exact_state_distribution(p, 8);
    const double target = exact.prob(5, 5);
    const std::int64_t reps = 100'000;
    std::int64_t hits = 0;
    const double rate5 = std::pow(5.0, 1.5);
    for (std::int64_t i = 0; i < reps; ++i) {
        const auto d = sample_delta(p, 5, 5, derive_run_seed(81, i));
        Rng g(derive_run_seed(82, i));
        const double xi1 = exponential(g, rate5);
        const double xi2 = exponential(g, rate5);
        if (-xi1 < d.value && d.value < xi2) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(reps);
    const double sigma = std::sqrt(target * (1.0 - target) / static_cast<double>(reps));
    CHECK(std::abs(phat - target) < 3.0 * sigma);
}

TEST_SUITE_END();
