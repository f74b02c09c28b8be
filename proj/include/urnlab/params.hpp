#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urnlab {

/// Parameters of a two-color urn with selection weight f_i * x_i^beta.
/// The fitness pair (f1, f2) is carried through its ratio r = f1/f2 >= 1.
struct UrnParams {
    double beta = 1.0;       // feedback strength, >= 0
    double r = 1.0;          // fitness ratio f1/f2, >= 1
    std::int64_t x01 = 1;    // initial balls of color 1
    std::int64_t x02 = 1;    // initial balls of color 2

    std::int64_t total0() const { return x01 + x02; }

    /// Throws std::invalid_argument on violated invariants:
    /// beta >= 0, r >= 1, nonnegative counts, and positive counts when beta > 0
    /// (x^beta is only left unrestricted in the random-walk case beta = 0).
    void validate() const;
};

struct UrnState {
    std::int64_t x1 = 0;
    std::int64_t x2 = 0;
    std::int64_t t = 0;

    std::int64_t total() const { return x1 + x2; }
    bool tied() const { return x1 == x2; }
};

enum class Leader { color1, color2, tied };

std::string to_string(Leader l);
Leader leader_from_string(const std::string& s);

inline Leader leader_of(std::int64_t x1, std::int64_t x2) {
    if (x1 > x2) return Leader::color1;
    if (x2 > x1) return Leader::color2;
    return Leader::tied;
}

/// Per-run observation record. Tie times are step indices t with X1(t) = X2(t),
/// t = 0 included. A run always advances to the horizon, so the observed last
/// tie is a lower bound for the true duration; `censored` records that fact.
struct TieSummary {
    std::vector<std::int64_t> tie_times;          // ascending
    std::optional<std::int64_t> last_tie;         // max(tie_times) when nonempty
    std::int64_t intensity_observed = 0;          // tie_times.size()
    bool censored = true;
    UrnState final_state;
    Leader leader = Leader::tied;
    std::uint64_t seed = 0;

    std::int64_t last_tie_or(std::int64_t none) const {
        return last_tie ? *last_tie : none;
    }
};

}  // namespace urnlab
