#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dnls/model.hpp"
#include "dnls/observables.hpp"
#include "dnls/rng.hpp"

using namespace dnls;

TEST_CASE("disorder samples stay in [-W/2, W/2]") {
    const auto d = make_disorder(7, 5, 4.0);
    REQUIRE(d.size() == 5);
    for (double e : d.epsilons) {
        CHECK(e >= -2.0);
        CHECK(e <= 2.0);
    }
}

TEST_CASE("zero-width disorder is identically zero") {
    const auto d = make_disorder(7, 100, 0.0);
    for (double e : d.epsilons) CHECK(e == 0.0);
}

TEST_CASE("disorder is deterministic in the seed") {
    const auto a = make_disorder(7, 5, 4.0);
    const auto b = make_disorder(7, 5, 4.0);
    CHECK(a.epsilons == b.epsilons);
}

TEST_CASE("distinct seeds give distinct arrays") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto a = make_disorder(s, 16, 4.0);
        const auto b = make_disorder(s + 1, 16, 4.0);
        CHECK(a.epsilons != b.epsilons);
    }
}

TEST_CASE("disorder moments match the uniform law") {
    const int n = 200000;
    const double w = 4.0;
    const auto d = make_disorder(123, n, w);
    double mean = 0.0;
    for (double e : d.epsilons) mean += e;
    mean /= n;
    double var = 0.0;
    for (double e : d.epsilons) var += (e - mean) * (e - mean);
    var /= n - 1;
    const double expected_var = w * w / 12.0;
    // 3 sigma on the mean of n uniform samples
    CHECK(std::abs(mean) < 3.0 * std::sqrt(expected_var / n));
    CHECK(var == doctest::Approx(expected_var).epsilon(0.05));
}

TEST_CASE("empty lattice is rejected") {
    CHECK_THROWS_AS(make_disorder(1, 0, 4.0), ConfigError);
}

TEST_CASE("initial wavepacket populates the center site") {
    const auto psi = initial_wavepacket(5);
    for (int j = 0; j < 5; ++j)
        CHECK(psi.amp[static_cast<std::size_t>(j)] ==
              (j == 2 ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
    CHECK(norm(psi) == 1.0);
    CHECK(second_moment(psi) == 0.0);
}

TEST_CASE("even lattice size is rejected") {
    CHECK_THROWS_AS(initial_wavepacket(4), ConfigError);
}

TEST_CASE("storage index maps sites into [0, size)") {
    const auto psi = initial_wavepacket(9);
    CHECK(psi.center() == 4);
    CHECK(psi.site(0) == -4);
    CHECK(psi.site(8) == 4);
}

TEST_CASE("2x2 hamiltonian matches hand diagonalization") {
    DisorderRealization d;
    d.epsilons = {0.0, 0.0};
    const auto h = linear_hamiltonian(d);
    CHECK(h(0, 0) == 0.0);
    CHECK(h(0, 1) == -1.0);
    CHECK(h(1, 0) == -1.0);
    CHECK(h(1, 1) == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(+1.0));
}

TEST_CASE("clean open chain has the cosine spectrum") {
    const int n = 12;
    const auto d = make_disorder(1, n, 0.0);
    const auto h = linear_hamiltonian(d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    std::vector<double> expected;
    for (int m = n; m >= 1; --m) expected.push_back(-2.0 * std::cos(M_PI * m / (n + 1)));
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i)
        CHECK(es.eigenvalues()(i) == doctest::Approx(expected[static_cast<std::size_t>(i)])
                                         .epsilon(1e-12));
}

TEST_CASE("hamiltonian is symmetric for any disorder") {
    const auto d = make_disorder(99, 17, 4.0);
    const auto h = linear_hamiltonian(d);
    CHECK((h - h.transpose()).norm() == 0.0);
}

TEST_CASE("oracle cap is enforced") {
    const auto d = make_disorder(1, 65, 1.0);
    CHECK_THROWS_AS(linear_hamiltonian(d), OracleSizeError);
}

TEST_CASE("disorder table lists site labels and energies") {
    const auto d = make_disorder(3, 3, 2.0);
    const auto table = disorder_table(d);
    CHECK(table.find("-1 ") == 0);
    CHECK(table.find("\n0 ") != std::string::npos);
    CHECK(table.find("\n1 ") != std::string::npos);
}

TEST_CASE("mix_seed decorrelates grid points") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 20; ++a)
        for (std::uint64_t b = 0; b < 20; ++b) seen.insert(mix_seed(42, a, b));
    CHECK(seen.size() == 400);
}
