#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// Bad parameters, malformed config files, invalid flag combinations.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State and disorder arrays disagree in length.
struct LatticeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Probability reached the guarded edge band of the lattice.
struct BoundaryContaminationError : std::runtime_error {
    BoundaryContaminationError(double t, double mass, double threshold)
        : std::runtime_error("tail mass " + std::to_string(mass) + " exceeds " +
                             std::to_string(threshold) + " at t = " + std::to_string(t)),
          time(t), tail_mass(mass) {}
    double time;
    double tail_mass;
};

// Dense-matrix helpers refuse lattices above their size cap.
struct OracleSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Aggregate run cannot be trusted (too many guard failures, grid mismatch, ...).
struct EnsembleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Power-law fit problems: nonpositive data in window, too few points, short span.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dnls
