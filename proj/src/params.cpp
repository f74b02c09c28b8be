#include "urnlab/params.hpp"

#include <cmath>
#include <stdexcept>

namespace urnlab {

void UrnParams::validate() const {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be finite and >= 0");
    if (!(r >= 1.0) || !std::isfinite(r))
        throw std::invalid_argument("r must be finite and >= 1 (normalize f1 >= f2)");
    if (x01 < 0 || x02 < 0)
        throw std::invalid_argument("initial counts must be nonnegative");
    if (beta > 0.0 && (x01 < 1 || x02 < 1))
        throw std::invalid_argument("beta > 0 requires both initial counts >= 1");
}

std::string to_string(Leader l) {
    switch (l) {
        case Leader::color1: return "1";
        case Leader::color2: return "2";
        case Leader::tied: return "tied";
    }
    return "?";
}

Leader leader_from_string(const std::string& s) {
    if (s == "1") return Leader::color1;
    if (s == "2") return Leader::color2;
    if (s == "tied") return Leader::tied;
    throw std::invalid_argument("unknown leader value: " + s);
}

}  // namespace urnlab
