#pragma once

// Brute-force references used only by tests: dense eigendecomposition
// propagation, Bessel-function free-lattice moments, deterministic random
// states. Nothing here touches the spectral propagator under test.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dnls/model.hpp"

namespace dnls::testing {

// Periodic hopping + on-site matrix; wraparound bonds accumulate, so N = 2
// gets the doubled off-diagonal the mode picture predicts.
Eigen::MatrixXd periodic_hamiltonian(const std::vector<double>& eps);

// psi(t) = U exp(-i lambda t) U^T psi0 for a real symmetric H.
Eigen::VectorXcd exact_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi0, double t);

// Free-lattice second moment and norm from the Bessel solution
// psi_n(t) = i^n J_n(2t), truncated at |n| <= nmax.
double bessel_m2(double t, int nmax);
double bessel_norm(double t, int nmax);

WaveFunction random_state(int size, std::uint64_t seed);

Eigen::VectorXcd to_eigen(const WaveFunction& psi);
WaveFunction from_eigen(const Eigen::VectorXcd& v);

}  // namespace dnls::testing
