#include "dnls/model.hpp"

#include <cstdio>
#include <string>

#include "dnls/rng.hpp"

namespace dnls {

DisorderRealization make_disorder(std::uint64_t seed, int size, double W) {
    if (size < 1) throw ConfigError("make_disorder: empty lattice (size must be >= 1)");
    if (W < 0.0) throw ConfigError("make_disorder: disorder width W must be >= 0");
    DisorderRealization d;
    d.W = W;
    d.seed = seed;
    d.epsilons.resize(static_cast<std::size_t>(size));
    SplitMix64 rng(seed);
    for (auto& e : d.epsilons) e = (rng.next_unit() - 0.5) * W;
    return d;
}

WaveFunction initial_wavepacket(int size) {
    if (size < 1) throw ConfigError("initial_wavepacket: size must be >= 1");
    if (size % 2 == 0)
        throw ConfigError("initial_wavepacket: size must be odd so the center site exists");
    WaveFunction psi;
    psi.amp.assign(static_cast<std::size_t>(size), Complex(0.0, 0.0));
    psi.amp[static_cast<std::size_t>(size / 2)] = Complex(1.0, 0.0);
    return psi;
}

Eigen::MatrixXd linear_hamiltonian(const DisorderRealization& disorder, int size_cap) {
    const int n = disorder.size();
    if (n > size_cap)
        throw OracleSizeError("linear_hamiltonian: size " + std::to_string(n) +
                              " exceeds oracle cap " + std::to_string(size_cap));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = disorder.epsilons[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            h(i, i + 1) = -1.0;
            h(i + 1, i) = -1.0;
        }
    }
    return h;
}

std::string disorder_table(const DisorderRealization& disorder) {
    std::string out;
    const int center = disorder.size() / 2;
    char line[64];
    for (int j = 0; j < disorder.size(); ++j) {
        std::snprintf(line, sizeof(line), "%d %.17g\n", j - center,
                      disorder.epsilons[static_cast<std::size_t>(j)]);
        out += line;
    }
    return out;
}

}  // namespace dnls
