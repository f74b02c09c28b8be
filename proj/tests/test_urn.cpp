#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <set>

#include "urnlab/oracle.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/urn.hpp"

using namespace urnlab;

TEST_SUITE_BEGIN("urn");

TEST_CASE("kernel matches hand-evaluated points") {
    // symmetric start
    const auto sym = transition_probabilities(1, 1, UrnParams{1.0, 1.0, 1, 1});
    CHECK(sym.first == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sym.second == doctest::Approx(0.5).epsilon(1e-15));

    // beta = 0 removes state dependence: r/(r+1)
    const auto rw = transition_probabilities(2, 1, UrnParams{0.0, 3.0, 1, 1});
    CHECK(rw.first == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(rw.second == doctest::Approx(0.25).epsilon(1e-15));

    // nonlinear with fitness: 4.8 / 5.8
    const auto nl = transition_probabilities(2, 1, UrnParams{2.0, 1.2, 1, 1});
    CHECK(nl.first == doctest::Approx(4.8 / 5.8).epsilon(1e-12));
    CHECK(nl.second == doctest::Approx(1.0 / 5.8).epsilon(1e-12));
}

TEST_CASE("kernel normalization and zero-count handling") {
    Rng g(42);
    for (int trial = 0; trial < 2000; ++trial) {
        const double beta = 3.0 * uniform01(g);
        const double r = 1.0 + 2.0 * uniform01(g);
        const std::int64_t x1 = 1 + static_cast<std::int64_t>(uniform01(g) * 1000);
        const std::int64_t x2 = 1 + static_cast<std::int64_t>(uniform01(g) * 1000);
        auto [p1, p2] = transition_probabilities(x1, x2, UrnParams{beta, r, 1, 1});
        CHECK(p1 + p2 == 1.0);  // exact complement
        CHECK(p1 > 0.0);
        CHECK(p1 < 1.0);
    }

    CHECK_THROWS_AS(transition_probabilities(0, 3, UrnParams{1.0, 1.0, 1, 1}),
                    std::invalid_argument);
    // random-walk case allows zero counts
    auto [p1, p2] = transition_probabilities(0, 0, UrnParams{0.0, 3.0, 0, 0});
    CHECK(p1 == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(p2 == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("kernel monotone in x1 and in r") {
    Rng g(7);
    for (int trial = 0; trial < 500; ++trial) {
        const double beta = 2.5 * uniform01(g);
        const double r = 1.0 + uniform01(g);
        const std::int64_t x1 = 1 + static_cast<std::int64_t>(uniform01(g) * 500);
        const std::int64_t x2 = 1 + static_cast<std::int64_t>(uniform01(g) * 500);
        const UrnParams p{beta, r, 1, 1};
        const double base = transition_probabilities(x1, x2, p).first;
        CHECK(transition_probabilities(x1 + 1, x2, p).first >= base);
        const UrnParams p2{beta, r + 0.3, 1, 1};
        CHECK(transition_probabilities(x1, x2, p2).first >= base);
    }
}

TEST_CASE("parameter invariants are enforced") {
    CHECK_THROWS_AS((UrnParams{-0.1, 1.0, 1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((UrnParams{1.0, 0.9, 1, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((UrnParams{1.0, 1.0, 0, 1}).validate(), std::invalid_argument);
    CHECK_NOTHROW((UrnParams{0.0, 1.0, 0, 0}).validate());
}

TEST_CASE("horizon zero records the t = 0 tie") {
    const auto s = simulate(UrnParams{1.3, 1.1, 1, 1}, 0, 99);
    REQUIRE(s.tie_times.size() == 1);
    CHECK(s.tie_times[0] == 0);
    CHECK(s.intensity_observed == 1);
    CHECK(s.last_tie == 0);
    CHECK(s.censored);
}

TEST_CASE("trajectory conservation and tie parity") {
    Rng g(123);
    for (int trial = 0; trial < 40; ++trial) {
        const double beta = 2.0 * uniform01(g);
        UrnParams p{beta, 1.0 + uniform01(g), 1 + static_cast<std::int64_t>(3 * uniform01(g)),
                    1 + static_cast<std::int64_t>(3 * uniform01(g))};
        const std::int64_t horizon = 500;
        const auto s = simulate(p, horizon, 1000 + trial);
        CHECK(s.final_state.x1 + s.final_state.x2 == p.total0() + horizon);
        CHECK(s.final_state.x1 >= p.x01);
        CHECK(s.final_state.x2 >= p.x02);
        CHECK(s.intensity_observed == static_cast<std::int64_t>(s.tie_times.size()));
        for (std::size_t i = 0; i < s.tie_times.size(); ++i) {
            CHECK((s.tie_times[i] + p.total0()) % 2 == 0);
            if (i > 0) CHECK(s.tie_times[i] > s.tie_times[i - 1]);
        }
        if (!s.tie_times.empty()) CHECK(*s.last_tie == s.tie_times.back());
    }
}

TEST_CASE("symmetric random walk ties quickly from (2,1)") {
    const UrnParams p{0.0, 1.0, 2, 1};
    const auto batch = simulate_batch(p, 10'000, 10'000, 5, 2);
    std::int64_t tied = 0;
    for (const auto& s : batch) tied += s.intensity_observed > 0 ? 1 : 0;
    const double frac = static_cast<double>(tied) / static_cast<double>(batch.size());
    CHECK(frac > 0.98);  // recurrence; P[no tie by 1e4] ~ sqrt(2/pi/1e4)
}

TEST_CASE("empirical state distribution matches the path-enumeration oracle") {
    // (beta=1, r=1, x0=(1,1)): P[X(2) = (2,2)] = 1/3
    const UrnParams p{1.0, 1.0, 1, 1};
    const std::int64_t runs = 100'000;
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < runs; ++i) {
        const auto s = simulate(p, 2, derive_run_seed(40, i));
        if (s.final_state.x1 == 2) ++hits;
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(runs);
    const double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(runs));
    CHECK(std::abs(phat - 1.0 / 3.0) < 3.0 * sigma);
}

TEST_CASE("batches are deterministic and thread-count invariant") {
    const UrnParams p{1.5, 1.2, 1, 1};
    const auto a = simulate_batch(p, 400, 64, 2024, 1);
    const auto b = simulate_batch(p, 400, 64, 2024, 2);
    const auto c = simulate_batch(p, 400, 64, 2024, 0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].tie_times == b[i].tie_times);
        CHECK(a[i].final_state.x1 == b[i].final_state.x1);
        CHECK(a[i].tie_times == c[i].tie_times);
        CHECK(a[i].seed == b[i].seed);
    }
    // run i is simulate with the derived seed
    const auto single = simulate_batch(p, 400, 1, 77, 1);
    const auto direct = simulate(p, 400, derive_run_seed(77, 0));
    CHECK(single[0].tie_times == direct.tie_times);
    CHECK(single[0].final_state.x1 == direct.final_state.x1);
}

TEST_CASE("censored runs beyond the trusted cutoff are rare at beta=1.5") {
    const UrnParams p{1.5, 1.0, 1, 1};
    const std::int64_t horizon = 100'000;
    const auto batch = simulate_batch(p, horizon, 10'000, 31, 0);
    std::int64_t late = 0;
    for (const auto& s : batch)
        if (s.last_tie_or(-1) > horizon / 100) ++late;
    CHECK(static_cast<double>(late) / static_cast<double>(batch.size()) < 0.05);
}

TEST_CASE("equal-fitness coupling: identical betas give identical paths") {
    const UrnParams p{1.2, 1.0, 2, 5};
    const auto pair = coupled_equal_fitness(p, p, 3000, 11);
    CHECK(pair.a.x1 == pair.b.x1);
}

TEST_CASE("equal-fitness coupling: pathwise gap and tie-count ordering") {
    const UrnParams strong{1.2, 1.0, 1, 1};
    const UrnParams weak{0.8, 1.0, 1, 1};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto pair = coupled_equal_fitness(strong, weak, 2000, seed);
        std::int64_t ties_a = 0, ties_b = 0;
        for (std::int64_t t = 0; t <= 2000; ++t) {
            const auto ga = pair.a.gap_at(t);
            const auto gb = pair.b.gap_at(t);
            REQUIRE(ga >= gb);
            REQUIRE(gb >= 0);
            ties_a += pair.a.tied_at(t) ? 1 : 0;
            ties_b += pair.b.tied_at(t) ? 1 : 0;
            REQUIRE(ties_a <= ties_b);
        }
    }
}

TEST_CASE("equal-fitness coupling rejects bad parameter pairs") {
    CHECK_THROWS_AS(coupled_equal_fitness(UrnParams{1.0, 1.2, 1, 1}, UrnParams{0.5, 1.2, 1, 1},
                                          10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(coupled_equal_fitness(UrnParams{1.0, 1.0, 1, 1}, UrnParams{0.5, 1.0, 2, 1},
                                          10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(coupled_equal_fitness(UrnParams{0.5, 1.0, 1, 1}, UrnParams{1.0, 1.0, 1, 1},
                                          10, 1),
                    std::invalid_argument);
}

TEST_CASE("first-tie coupling: starting at a tie gives T1 = 0 on both sides") {
    const auto pair = coupled_first_tie(UrnParams{1.5, 1.2, 2, 2}, UrnParams{1.0, 1.1, 2, 2},
                                        100, 3);
    CHECK(pair.a.first_tie() == 0);
    CHECK(pair.b.first_tie() == 0);
}

TEST_CASE("first-tie coupling: pathwise ordering under both conditions") {
    struct Case {
        UrnParams a, b;
    };
    const Case cases[] = {
        {{1.5, 1.2, 3, 1}, {1.0, 1.1, 2, 2}},  // condition (i)
        {{1.0, 1.2, 1, 3}, {0.5, 1.2, 2, 2}},  // condition (ii)
    };
    for (const auto& c : cases) {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto pair = coupled_first_tie(c.a, c.b, 4000, seed);
            const auto ta = pair.a.first_tie();
            const auto tb = pair.b.first_tie();
            if (ta) {
                REQUIRE(tb.has_value());
                REQUIRE(*tb <= *ta);
            }
        }
    }
}

TEST_CASE("first-tie coupling rejects pairs outside both conditions") {
    // r ordered the wrong way for (i), x0 not nested for (ii)
    CHECK_THROWS_AS(coupled_first_tie(UrnParams{1.0, 1.1, 3, 1}, UrnParams{0.5, 1.2, 2, 2},
                                      10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(coupled_first_tie(UrnParams{0.5, 1.2, 3, 1}, UrnParams{1.0, 1.2, 2, 2},
                                      10, 1),
                    std::invalid_argument);
}

TEST_SUITE_END();
