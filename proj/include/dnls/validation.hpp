#pragma once

#include <string>
#include <vector>

#include "dnls/config.hpp"
#include "dnls/ensemble.hpp"

namespace dnls {

inline constexpr double kT1Threshold = 0.1;
inline constexpr double kT2Threshold = 0.01;

struct CriterionReport {
    std::string criterion;  // "t1", "t2", or "t3"
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string config_json;  // enough metadata to re-run the exact check
    std::string detail;

    std::string to_json() const;
};

// Time-averaged relative deviation between two m2 series sharing a time
// grid: trapezoid of |(a - b)/b| over the positive-time samples, divided by
// the integrated span. The t = 0 record is excluded (m2 = 0 there).
double delta_m2_integral(const std::vector<double>& times, const std::vector<double>& m2_a,
                         const std::vector<double>& m2_b);

// (t1) time reversal: integrate 0 -> T and back with negated substeps;
// delta_tr must stay below 0.1.
CriterionReport check_t1(const SimulationConfig& config, std::uint64_t seed, double T);

// (t2) step halving on one realization: delta_m2 between the dt and dt/2
// runs (same disorder) must stay below 0.01.
CriterionReport check_t2(const SimulationConfig& config, std::uint64_t seed, double T);

// (t3) step halving on ensemble averages; grids and realization counts must
// match.
CriterionReport check_t3(const EnsembleResult& at_dt, const EnsembleResult& at_half_dt);

}  // namespace dnls
