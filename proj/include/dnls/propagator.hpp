#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dnls/model.hpp"
#include "dnls/observables.hpp"
#include "dnls/scheme.hpp"

namespace dnls {

// Position-diagonal substep: psi_n <- psi_n * exp(-i (eps_n + beta |psi_n|^p) tau).
// Exact for the disorder + nonlinearity part since |psi_n| is constant under it.
WaveFunction potential_phase_step(const WaveFunction& psi, const DisorderRealization& disorder,
                                  const ModelParams& params, double tau);

// Momentum-diagonal substep: mode k_m = 2 pi m / N picks up exp(+2i cos(k_m) tau).
// Periodic boundaries via the discrete Fourier transform.
WaveFunction kinetic_step(const WaveFunction& psi, double tau);

// One full split step A(c1 dt) B(d1 dt) ... A(cK dt).
WaveFunction saba_step(const WaveFunction& psi, const DisorderRealization& disorder,
                       const ModelParams& params, const SplitScheme& scheme, double dt);

struct EvolveOptions {
    std::string meta_json;      // copied into the returned series
    bool centroid_m2 = false;
    double tail_threshold = kTailGuardThreshold;
    int tail_margin = kTailGuardMargin;
};

struct EvolveResult {
    MomentSeries series;
    WaveFunction final_state;
};

// Steps from 0 to t_max recording observables at each sample time (t = 0 is
// always recorded). Sample times must be multiples of dt within 1e-9
// relative tolerance. Throws BoundaryContaminationError when the tail-mass
// guard trips.
EvolveResult evolve(const WaveFunction& psi0, const DisorderRealization& disorder,
                    const ModelParams& params, const SplitScheme& scheme, double dt,
                    double t_max, const std::vector<double>& sample_times,
                    const EvolveOptions& opts = {});

struct TimeReversalResult {
    double delta_tr = 0.0;  // sum_n |psi_initial_n - psi_reversed_n|
    WaveFunction reversed;
};

// Integrates 0 -> T, then back with every substep duration negated.
TimeReversalResult time_reverse_run(const WaveFunction& psi0, const DisorderRealization& disorder,
                                    const ModelParams& params, const SplitScheme& scheme,
                                    double dt, double T,
                                    const EvolveOptions& opts = {});

// Split-step engine for one trajectory. Owns the FFT plans and the phase
// tables; the state lives in the transform buffer for the whole run.
// Consecutive kinetic substeps are merged (they share the diagonal basis)
// except across flush points, where the state must be in position space.
class Propagator {
  public:
    Propagator(const DisorderRealization& disorder, const ModelParams& params,
               const SplitScheme& scheme, double dt);
    ~Propagator();
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;

    void load(const WaveFunction& psi);
    void store(WaveFunction& psi) const;

    // Advances n_steps, invoking on_flush(step) at each listed step (sorted,
    // within [1, n_steps]); the final step always flushes.
    void run(long long n_steps, const std::vector<long long>& flush_steps,
             const std::function<void(long long)>& on_flush);

    void step();  // single unfused step

    int size() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace dnls
