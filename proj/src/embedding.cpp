#include "urnlab/embedding.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "urnlab/urn.hpp"

namespace urnlab {

namespace {

double fitness_of(int color, const UrnParams& p) {
    if (color == 1) return 1.0;
    if (color == 2) return 1.0 / p.r;
    throw std::invalid_argument("color must be 1 or 2");
}

}  // namespace

ClockStream::ClockStream(int color, std::int64_t start_count, const UrnParams& params)
    : count_(start_count), fitness_(fitness_of(color, params)), beta_(params.beta) {
    params.validate();
    if (start_count < 1)
        throw std::invalid_argument("ClockStream: start count must be >= 1");
}

double ClockStream::rate() const {
    return fitness_ * std::pow(static_cast<double>(count_), beta_);
}

double ClockStream::next(Rng& g) {
    const double xi = exponential(g, rate());
    ++count_;
    return xi;
}

double sample_partial_sum(int color, std::int64_t x, std::int64_t y,
                          const UrnParams& params, std::uint64_t seed) {
    params.validate();
    if (y <= x) {
        if (x < 0) throw std::invalid_argument("sample_partial_sum: negative range");
        return 0.0;  // empty sum convention
    }
    if (x < 1) throw std::invalid_argument("sample_partial_sum: nonempty range needs x >= 1");

    Rng gen(seed);
    ClockStream clock(color, x, params);
    double sum = 0.0, carry = 0.0;
    while (clock.count() < y) {
        // Kahan step: long sublinear ranges add many terms far below the total
        const double term = clock.next(gen) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return sum;
}

TieSummary embedded_trajectory(const UrnParams& params, std::int64_t horizon,
                               std::uint64_t seed) {
    params.validate();
    if (horizon < 0) throw std::invalid_argument("embedded_trajectory: negative horizon");
    if (params.x01 < 1 || params.x02 < 1)
        throw std::invalid_argument("embedded_trajectory: requires positive initial counts");

    const auto tab = power_table(params.beta, params.total0() + horizon + 1);
    const double f2 = 1.0 / params.r;

    Rng gen(seed);
    std::int64_t c1 = params.x01;
    std::int64_t c2 = params.x02;
    std::vector<std::int64_t> ties;
    if (c1 == c2) ties.push_back(0);

    // pending arrival times relative to "now"; the loser keeps its remaining
    // time (memorylessness is not used, this is the original draw)
    double t1 = exponential(gen, tab[static_cast<std::size_t>(c1)]);
    double t2 = exponential(gen, f2 * tab[static_cast<std::size_t>(c2)]);
    for (std::int64_t t = 1; t <= horizon; ++t) {
        if (t1 <= t2) {
            t2 -= t1;
            ++c1;
            t1 = exponential(gen, tab[static_cast<std::size_t>(c1)]);
        } else {
            t1 -= t2;
            ++c2;
            t2 = exponential(gen, f2 * tab[static_cast<std::size_t>(c2)]);
        }
        if (c1 == c2) ties.push_back(t);
    }

    TieSummary out;
    out.tie_times = std::move(ties);
    if (!out.tie_times.empty()) out.last_tie = out.tie_times.back();
    out.intensity_observed = static_cast<std::int64_t>(out.tie_times.size());
    out.censored = true;
    out.final_state = UrnState{c1, c2, horizon};
    out.leader = leader_of(c1, c2);
    out.seed = seed;
    return out;
}

DeltaSample sample_delta(const UrnParams& params, std::int64_t y1, std::int64_t y2,
                         std::uint64_t seed) {
    params.validate();
    if (y1 < params.x01 || y2 < params.x02)
        throw std::invalid_argument("sample_delta: targets must not precede x0");

    // one joint draw: color-1 clocks first, then color-2 clocks
    Rng gen(seed);
    double s1 = 0.0, c = 0.0;
    {
        ClockStream clock(1, params.x01, params);
        while (clock.count() < y1) {
            const double term = clock.next(gen) - c;
            const double next = s1 + term;
            c = (next - s1) - term;
            s1 = next;
        }
    }
    double s2 = 0.0;
    c = 0.0;
    {
        ClockStream clock(2, params.x02, params);
        while (clock.count() < y2) {
            const double term = clock.next(gen) - c;
            const double next = s2 + term;
            c = (next - s2) - term;
            s2 = next;
        }
    }
    return DeltaSample{s1 - s2, params.x01, params.x02, y1, y2};
}

}  // namespace urnlab
