#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dnls/errors.hpp"

namespace dnls {

using Complex = std::complex<double>;

// State of the chain: one complex amplitude per site. Site labels n run
// symmetrically about a designated center, storage index j = n + size/2.
struct WaveFunction {
    std::vector<Complex> amp;

    int size() const { return static_cast<int>(amp.size()); }
    int center() const { return size() / 2; }

    // Site label of storage index j, measured from the center.
    int site(int j) const { return j - center(); }
};

// One frozen sample of the on-site energies, with its seed kept for
// provenance. Regenerating with the same (seed, size, W) is bit-exact.
struct DisorderRealization {
    std::vector<double> epsilons;
    double W = 0.0;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(epsilons.size()); }
};

struct ModelParams {
    double beta = 0.0;  // nonlinearity strength, >= 0
    double p = 2.0;     // nonlinearity degree, >= 0
    double W = 0.0;     // disorder width, >= 0
};

// i.i.d. uniform on [-W/2, +W/2], deterministic in the seed.
DisorderRealization make_disorder(std::uint64_t seed, int size, double W);

// Delta packet at the center site; requires odd size so the center is
// symmetric. Norm is exactly 1, second moment exactly 0.
WaveFunction initial_wavepacket(int size);

inline constexpr int kOracleSizeCap = 64;

// Dense open-boundary chain Hamiltonian: H[n][n] = eps_n, H[n][n+-1] = -1.
// Small-instance oracle for exact diagonalization; refuses large lattices.
Eigen::MatrixXd linear_hamiltonian(const DisorderRealization& disorder,
                                   int size_cap = kOracleSizeCap);

// Two-column text table (site label, eps_n) for debugging.
std::string disorder_table(const DisorderRealization& disorder);

}  // namespace dnls
