#include "dnls/scheme.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "dnls/errors.hpp"

namespace dnls {

void SplitScheme::validate() const {
    if (kinetic_coeffs.empty())
        throw ConfigError("scheme '" + name + "': no kinetic coefficients");
    if (kinetic_coeffs.size() != potential_coeffs.size() + 1)
        throw ConfigError("scheme '" + name +
                          "': layout must interleave A B A ... B A "
                          "(one more kinetic than potential coefficient)");
    const double sc = std::accumulate(kinetic_coeffs.begin(), kinetic_coeffs.end(), 0.0);
    const double sd = std::accumulate(potential_coeffs.begin(), potential_coeffs.end(), 0.0);
    if (std::abs(sc - 1.0) > 1e-12 || std::abs(sd - 1.0) > 1e-12)
        throw ConfigError("scheme '" + name + "': coefficients must each sum to 1");
}

SplitScheme SplitScheme::saba2() {
    const double c1 = (3.0 - std::sqrt(3.0)) / 6.0;
    const double c2 = 1.0 / std::sqrt(3.0);
    return SplitScheme{"saba2", {c1, c2, c1}, {0.5, 0.5}};
}

SplitScheme SplitScheme::strang() {
    return SplitScheme{"strang", {0.5, 0.5}, {1.0}};
}

SplitScheme SplitScheme::by_name(const std::string& name) {
    if (name == "saba2") return saba2();
    if (name == "strang") return strang();
    throw ConfigError("unknown scheme '" + name + "' (available: saba2, strang)");
}

}  // namespace dnls
