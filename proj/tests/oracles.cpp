#include "oracles.hpp"

#include <cmath>
#include <complex>

#include "dnls/observables.hpp"
#include "dnls/rng.hpp"

namespace dnls::testing {

Eigen::MatrixXd periodic_hamiltonian(const std::vector<double>& eps) {
    const int n = static_cast<int>(eps.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = eps[static_cast<std::size_t>(i)];
        if (n > 1) {
            h(i, (i + 1) % n) += -1.0;
            h(i, (i - 1 + n) % n) += -1.0;
        }
    }
    return h;
}

Eigen::VectorXcd exact_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi0, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& u = es.eigenvectors();
    const auto& lam = es.eigenvalues();
    Eigen::VectorXcd modes = u.transpose() * psi0;
    for (int m = 0; m < modes.size(); ++m)
        modes(m) *= std::polar(1.0, -lam(m) * t);
    return u * modes;
}

double bessel_m2(double t, int nmax) {
    double s = 0.0;
    for (int n = 1; n <= nmax; ++n) {
        const double j = std::cyl_bessel_j(n, 2.0 * t);
        s += 2.0 * static_cast<double>(n) * n * j * j;  // J_{-n}^2 = J_n^2
    }
    return s;
}

double bessel_norm(double t, int nmax) {
    const double j0 = std::cyl_bessel_j(0, 2.0 * t);
    double s = j0 * j0;
    for (int n = 1; n <= nmax; ++n) {
        const double j = std::cyl_bessel_j(n, 2.0 * t);
        s += 2.0 * j * j;
    }
    return s;
}

WaveFunction random_state(int size, std::uint64_t seed) {
    SplitMix64 rng(seed);
    WaveFunction psi;
    psi.amp.resize(static_cast<std::size_t>(size));
    for (auto& a : psi.amp)
        a = Complex(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
    const double n = std::sqrt(norm(psi));
    for (auto& a : psi.amp) a /= n;
    return psi;
}

Eigen::VectorXcd to_eigen(const WaveFunction& psi) {
    Eigen::VectorXcd v(psi.size());
    for (int i = 0; i < psi.size(); ++i) v(i) = psi.amp[static_cast<std::size_t>(i)];
    return v;
}

WaveFunction from_eigen(const Eigen::VectorXcd& v) {
    WaveFunction psi;
    psi.amp.resize(static_cast<std::size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) psi.amp[static_cast<std::size_t>(i)] = v(i);
    return psi;
}

}  // namespace dnls::testing
