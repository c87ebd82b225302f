#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dnls/observables.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

WaveFunction two_site_state(int size, int n1, int n2) {
    WaveFunction psi;
    psi.amp.assign(static_cast<std::size_t>(size), Complex(0.0, 0.0));
    const int c = size / 2;
    psi.amp[static_cast<std::size_t>(c + n1)] = Complex(std::sqrt(0.5), 0.0);
    psi.amp[static_cast<std::size_t>(c + n2)] = Complex(0.0, std::sqrt(0.5));
    return psi;
}

}  // namespace

TEST_CASE("norm of the delta packet is 1, scaling is quadratic") {
    auto psi = initial_wavepacket(7);
    CHECK(norm(psi) == 1.0);
    for (auto& a : psi.amp) a *= 2.0;
    CHECK(norm(psi) == doctest::Approx(4.0).epsilon(1e-15));
    WaveFunction zero;
    zero.amp.assign(5, Complex(0.0, 0.0));
    CHECK(norm(zero) == 0.0);
}

TEST_CASE("second moment sums n^2 weights") {
    CHECK(second_moment(initial_wavepacket(11)) == 0.0);
    CHECK(second_moment(two_site_state(11, -1, +1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(second_moment(two_site_state(11, -3, +3)) == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("second moment is reflection and phase invariant") {
    auto psi = testing::random_state(21, 5);
    const double m = second_moment(psi);
    WaveFunction mirror;
    mirror.amp.assign(psi.amp.rbegin(), psi.amp.rend());
    CHECK(second_moment(mirror) == doctest::Approx(m).epsilon(1e-12));
    for (auto& a : psi.amp) a *= std::polar(1.0, 0.7);
    CHECK(second_moment(psi) == doctest::Approx(m).epsilon(1e-12));
}

TEST_CASE("centroid-referenced m2 subtracts the mean position") {
    WaveFunction psi;
    psi.amp.assign(9, Complex(0.0, 0.0));
    psi.amp[6] = Complex(1.0, 0.0);  // all mass at n = +2
    CHECK(second_moment(psi) == doctest::Approx(4.0));
    CHECK(second_moment_centroid(psi) == doctest::Approx(0.0));
}

TEST_CASE("energy of the delta packet is the on-site nonlinear term") {
    for (double p : {0.0, 1.0, 2.0, 4.0}) {
        for (double beta : {0.0, 0.5, 1.0}) {
            const auto psi = initial_wavepacket(9);
            const auto d = make_disorder(1, 9, 0.0);
            const double e = energy(psi, d, ModelParams{beta, p, 0.0});
            CHECK(e == doctest::Approx(2.0 * beta / (p + 2.0)).epsilon(1e-14));
        }
    }
}

TEST_CASE("linear energy of an eigenvector equals its eigenvalue") {
    // Strong disorder keeps the eigenvector away from the edges, where the
    // open-chain oracle and the periodic energy convention differ.
    const int n = 63;
    const auto d = make_disorder(11, n, 10.0);
    const auto h = linear_hamiltonian(d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);

    int best = -1;
    double best_edge = 1e300;
    for (int m = 0; m < n; ++m) {
        const double edge = std::abs(es.eigenvectors()(0, m)) +
                            std::abs(es.eigenvectors()(n - 1, m));
        if (edge < best_edge) {
            best_edge = edge;
            best = m;
        }
    }
    WaveFunction psi;
    psi.amp.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) psi.amp[static_cast<std::size_t>(i)] =
        Complex(es.eigenvectors()(i, best), 0.0);
    const double e = energy(psi, d, ModelParams{0.0, 2.0, 10.0});
    CHECK(e == doctest::Approx(es.eigenvalues()(best)).epsilon(1e-10));
}

TEST_CASE("energy is invariant under a global phase") {
    const auto d = make_disorder(4, 15, 4.0);
    auto psi = testing::random_state(15, 8);
    const ModelParams prm{1.0, 2.0, 4.0};
    const double e = energy(psi, d, prm);
    for (auto& a : psi.amp) a *= std::polar(1.0, 1.234);
    CHECK(energy(psi, d, prm) == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("participation number counts occupied sites") {
    CHECK(participation_number(initial_wavepacket(9)) == doctest::Approx(1.0));
    WaveFunction uniform;
    uniform.amp.assign(16, Complex(0.25, 0.0));
    CHECK(participation_number(uniform) == doctest::Approx(16.0));
    CHECK(participation_number(two_site_state(9, -1, 1)) == doctest::Approx(2.0));
    WaveFunction zero;
    zero.amp.assign(5, Complex(0.0, 0.0));
    CHECK_THROWS_AS(participation_number(zero), FitError);
}

TEST_CASE("participation never exceeds the lattice size") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto psi = testing::random_state(33, s);
        CHECK(participation_number(psi) <= 33.0 + 1e-12);
    }
}

TEST_CASE("tail mass sums the edge bands") {
    CHECK(tail_mass(initial_wavepacket(65), 16) == 0.0);
    WaveFunction uniform;
    uniform.amp.assign(64, Complex(0.125, 0.0));
    CHECK(tail_mass(uniform, 8) == doctest::Approx(2.0 * 8.0 / 64.0));
    WaveFunction edge;
    edge.amp.assign(32, Complex(0.0, 0.0));
    edge.amp[0] = Complex(1.0, 0.0);
    CHECK(tail_mass(edge, 4) == doctest::Approx(norm(edge)));
    CHECK_THROWS_AS(tail_mass(edge, 16), ConfigError);
}

TEST_CASE("series CSV has the documented columns") {
    MomentSeries s;
    s.records.push_back(ObservableRecord{0.0, 0.0, 1.0, 0.5, 1.0, 0.0});
    s.records.push_back(ObservableRecord{1.0, 2.0, 1.0, 0.5, 3.0, 0.0});
    const auto csv = s.to_csv();
    CHECK(csv.rfind("t,m2,norm,energy,participation,tail_mass\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
