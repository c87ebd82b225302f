#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnls/model.hpp"
#include "dnls/scheme.hpp"

namespace dnls {

// Certified step size for a given nonlinearity strength. Values above
// beta = 1 fall back to 0.1 and carry a warning (see dt_warning).
double default_dt(double beta);

// Everything one trajectory needs: physics, numerics, protocol.
struct SimulationConfig {
    double beta = 1.0;
    double p = 2.0;
    double W = 4.0;

    double dt = 0.0;       // 0 resolves from the beta-keyed table
    double t_max = 1000.0;
    int half_width = 512;  // lattice is [-L, L], size 2L+1
    std::string scheme = "saba2";
    int sample_points = 200;  // geometric grid between t = 1 and t_max
    std::uint64_t seed = 1;

    bool centroid_m2 = false;  // measure m2 about the instantaneous centroid

    int size() const { return 2 * half_width + 1; }
    ModelParams params() const { return ModelParams{beta, p, W}; }
    SplitScheme split_scheme() const { return SplitScheme::by_name(scheme); }

    // Fills dt from the table when unset and checks every field.
    // Returns a warning string for uncertified dt defaults, empty otherwise.
    std::string resolve();
    void validate() const;

    // {0} followed by sample_points log-spaced times in [1, t_max] (or the
    // whole range when t_max <= 1), each snapped to a multiple of dt.
    std::vector<double> make_sample_times() const;

    std::string to_json() const;                         // canonical, sorted keys
    static SimulationConfig from_json(const std::string& text);
};

// Multiline key-by-key diff of two config JSON documents, for refusal
// messages; empty when identical.
std::string config_diff(const std::string& json_a, const std::string& json_b);

}  // namespace dnls
