#pragma once

#include <string>
#include <vector>

#include "dnls/model.hpp"

namespace dnls {

double norm(const WaveFunction& psi);

// Sum n^2 |psi_n|^2 with n measured from the center site.
double second_moment(const WaveFunction& psi);

// Variant measured about the instantaneous centroid <n>.
double second_moment_centroid(const WaveFunction& psi);

// Conserved functional generating the equation of motion: hopping with the
// periodic neighbor convention of the propagator, on-site disorder, and a
// nonlinear term (2 beta / (p+2)) |psi|^(p+2).
double energy(const WaveFunction& psi, const DisorderRealization& disorder,
              const ModelParams& params);

// (sum |psi|^2)^2 / sum |psi|^4, the effective number of occupied sites.
double participation_number(const WaveFunction& psi);

// Probability in the outermost `margin` sites on each edge.
double tail_mass(const WaveFunction& psi, int margin);

inline constexpr int kTailGuardMargin = 16;
inline constexpr double kTailGuardThreshold = 1e-8;

struct ObservableRecord {
    double t = 0.0;
    double m2 = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    double participation = 0.0;
    double tail_mass = 0.0;
};

ObservableRecord measure(double t, const WaveFunction& psi,
                         const DisorderRealization& disorder, const ModelParams& params,
                         bool centroid_m2 = false);

// Time-ordered trajectory records plus the metadata (config, seed, scheme,
// code version) needed to re-derive the run.
struct MomentSeries {
    std::vector<ObservableRecord> records;
    std::string meta_json;

    std::vector<double> times() const;
    std::vector<double> m2() const;

    // Columns t, m2, norm, energy, participation, tail_mass.
    std::string to_csv() const;
    std::string to_json() const;  // embeds meta and all records
};

}  // namespace dnls
