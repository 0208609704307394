#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rho/samplers.hpp"

using namespace rho;

namespace {

struct MeanSe {
    double mean;
    double se;
};

template <typename F>
MeanSe monte_carlo(int count, F&& draw) {
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < count; ++i) {
        const double x = draw();
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / count;
    const double var = (s2 - count * mean * mean) / (count - 1);
    return {mean, std::sqrt(var / count)};
}

} // namespace

TEST_CASE("induced sampler produces density matrices") {
    RngStream rng(1001, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho_mat = sample_induced(3, 4, rng);
        CHECK(std::abs(rho_mat.mat.trace().real() - 1.0) < 1e-12);
        CHECK(rho_mat.mat.hermiticity_defect() < 1e-12);
        for (double lam : rho_mat.eigenvalues()) {
            CHECK(lam > -1e-12);
            CHECK(lam < 1.0 + 1e-12);
        }
    }
}

TEST_CASE("induced purity matches exact second moments") {
    // targets: <Tr rho^2> = (K+N)/(KN+1)
    struct Row {
        int n, k;
        double target;
    };
    const Row rows[] = {{2, 2, 4.0 / 5.0}, {2, 3, 5.0 / 7.0}, {3, 3, 3.0 / 5.0},
                        {3, 4, 7.0 / 13.0}};
    std::uint64_t seed = 9000;
    for (const auto& row : rows) {
        RngStream rng(seed++, 0);
        const auto r = monte_carlo(20000, [&] { return sample_induced(row.n, row.k, rng).purity(); });
        CHECK(std::abs(r.mean - row.target) < 4.5 * r.se);
    }
}

TEST_CASE("hs sampler is the k = n case") {
    RngStream rng(77, 0);
    const auto r = monte_carlo(20000, [&] { return sample_hs(3, rng).purity(); });
    CHECK(std::abs(r.mean - 0.6) < 4.5 * r.se);
}

TEST_CASE("fewer environment dimensions give rank deficiency") {
    RngStream rng(31337, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rho_mat = sample_induced(4, 2, rng);
        const auto lam = rho_mat.eigenvalues();
        REQUIRE(lam.size() == 4);
        int zeros = 0;
        for (double l : lam)
            if (std::abs(l) < 1e-10) ++zeros;
        CHECK(zeros == 2);
        CHECK(std::abs(rho_mat.mat.trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("dirichlet(1/2) simplex samples") {
    RngStream rng(515, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = sample_dirichlet_half(4, rng);
        double sum = 0.0;
        for (double x : s.values) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }

    // for n = 2 the first component is arcsine-distributed
    const int m = 2000;
    std::vector<double> xs(m);
    for (auto& x : xs) x = sample_dirichlet_half(2, rng).values[0];
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < m; ++i) {
        const double f = 2.0 / 3.14159265358979323846 * std::asin(std::sqrt(xs[static_cast<std::size_t>(i)]));
        d = std::max(d, std::abs(f - (i + 1) / static_cast<double>(m)));
        d = std::max(d, std::abs(f - i / static_cast<double>(m)));
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("bures rejection sampler acceptance rates") {
    RngStream rng(606, 0);
    BuresRejectionStats stats;
    for (int i = 0; i < 20000; ++i) sample_bures_spectrum_rejection(2, rng, &stats);
    // exact acceptance probability at n=2 is 1/2
    const double se = std::sqrt(0.25 / static_cast<double>(stats.proposals));
    CHECK(std::abs(stats.acceptance_rate() - 0.5) < 4.5 * se);

    // n=3: frozen regression value 0.0143 (+- MC error of the pin itself)
    RngStream rng3(607, 0);
    BuresRejectionStats stats3;
    for (int i = 0; i < 300; ++i) sample_bures_spectrum_rejection(3, rng3, &stats3);
    CHECK(stats3.acceptance_rate() > 0.008);
    CHECK(stats3.acceptance_rate() < 0.022);
}

TEST_CASE("bures rejection spectra match exact purity") {
    RngStream rng(608, 0);
    const auto r = monte_carlo(20000, [&] {
        const auto lam = sample_bures_spectrum_rejection(2, rng).values;
        double s = 0.0;
        for (double l : lam) s += l * l;
        return s;
    });
    CHECK(std::abs(r.mean - 7.0 / 8.0) < 4.5 * r.se);  // exact: 7/8
}

TEST_CASE("bures mcmc chain matches exact purity at n=3") {
    BuresMcmcChain chain(3, RngStream(609, 0), 2000, 30);
    const auto r = monte_carlo(5000, [&] {
        const auto lam = chain.next().values;
        double s = 0.0;
        for (double l : lam) s += l * l;
        return s;
    });
    CHECK(std::abs(r.mean - 23.0 / 33.0) < 4.5 * r.se);  // exact: 23/33
}

TEST_CASE("bures mcmc chain enforces a minimum burn-in") {
    CHECK_THROWS_AS(BuresMcmcChain(3, RngStream(1, 0), 999, 10), std::invalid_argument);
    CHECK_THROWS_AS(BuresMcmcChain(3, RngStream(1, 0), 1000, 0), std::invalid_argument);
    CHECK_THROWS_AS(BuresMcmcChain(1, RngStream(1, 0), 1000, 10), std::invalid_argument);
}

TEST_CASE("bures state sampler") {
    RngStream rng(610, 0);
    const auto r = monte_carlo(10000, [&] {
        const auto rho_mat = sample_bures_state(2, rng);
        CHECK(std::abs(rho_mat.mat.trace().real() - 1.0) < 1e-12);
        return rho_mat.purity();
    });
    CHECK(std::abs(r.mean - 7.0 / 8.0) < 4.5 * r.se);
}

TEST_CASE("spectrum dispatcher covers all ensembles") {
    RngStream rng(611, 0);
    for (const auto& spec : {EnsembleSpec::hs(3), EnsembleSpec::induced(2, 5), EnsembleSpec::bures(3)}) {
        const auto lam = sample_spectrum(spec, rng);
        double sum = 0.0;
        for (double l : lam) sum += l;
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
    // above the rejection cutoff the dispatcher switches to MCMC and stays exact in trace
    const auto lam = sample_spectrum(EnsembleSpec::bures(6), rng);
    CHECK(lam.size() == 6);
    double sum = 0.0;
    for (double l : lam) sum += l;
    CHECK(std::abs(sum - 1.0) < 1e-10);
}

TEST_CASE("spectrum sample validation") {
    CHECK_THROWS_AS(SpectrumSample({0.5, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumSample({-0.1, 1.1}), std::invalid_argument);
    CHECK_NOTHROW(SpectrumSample({0.25, 0.75}));
}

TEST_CASE("samplers are deterministic per stream") {
    RngStream a(99, 4), b(99, 4);
    const auto x = sample_induced(3, 3, a).eigenvalues();
    const auto y = sample_induced(3, 3, b).eigenvalues();
    CHECK(x == y);
}
