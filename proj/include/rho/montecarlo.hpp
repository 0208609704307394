#pragma once

// Statistical verification layer: batched spectrum sampling with
// deterministic stream-ordered reduction, moment/entropy estimators with
// z-score verdicts against exact targets, and rescaled-spectrum histograms
// compared to the limiting densities.
//
// Determinism contract: results depend only on (spec, count, seed), never on
// the worker count.  Sample i is always drawn from stream (i mod 64) at
// position i/64, and reductions run in sample order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rho/asymptotics.hpp"
#include "rho/ensemble.hpp"
#include "rho/exact.hpp"
#include "rho/laguerre.hpp"
#include "rho/quadrature.hpp"
#include "rho/samplers.hpp"

namespace rho {

// Worker count: explicit request, else hardware concurrency, always capped
// by the RHO_ENSEMBLES_THREADS environment variable when set.
inline int worker_count(int requested = 0) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("RHO_ENSEMBLES_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n) n = cap;
    }
    return std::min(n, 64);
}

namespace detail {

inline constexpr int kSampleStreams = 64;

// MCMC schedule for Bures spectra beyond the rejection regime, in elementary
// pair updates (see BuresMcmcChain).
inline long bures_batch_burn_in(int n) {
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    return std::max<long>(1000, 40 * pairs);
}
inline long bures_batch_thinning(int n) {
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    return std::max<long>(1, 10 * pairs);
}

} // namespace detail

// Draw `count` spectra (ascending eigenvalues) of the given ensemble.
// HS/induced samples are eigendecomposed Wishart-quotient matrices; Bures
// uses exact rejection for n <= 4 and one persistent Metropolis chain per
// stream above that (burn-in is paid once per stream, not per sample).
// Sampler variant for the Bures ensemble.  Auto picks exact rejection for
// n <= 4 (acceptance rate is tolerable there) and the MCMC chain above that;
// the explicit choices exist so the two routes can be compared head to head.
enum class BuresSampler { Auto, Rejection, Mcmc };

inline std::vector<std::vector<double>> sample_spectra(const EnsembleSpec& spec, long count,
                                                       std::uint64_t seed, int threads = 0,
                                                       BuresSampler variant = BuresSampler::Auto) {
    if (count < 1) throw std::invalid_argument("sample_spectra: count must be >= 1");
    if (variant != BuresSampler::Auto && spec.kind != Ensemble::Bures)
        throw std::invalid_argument("sample_spectra: sampler variant applies to Bures only");
    const bool use_mcmc =
        spec.kind == Ensemble::Bures &&
        (variant == BuresSampler::Mcmc || (variant == BuresSampler::Auto && spec.n > 4));
    const int streams = detail::kSampleStreams;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(count));

    std::atomic<int> next_stream{0};
    auto run_stream = [&](int s) {
        if (use_mcmc) {
            BuresMcmcChain chain(spec.n, RngStream(seed, static_cast<std::uint64_t>(s)),
                                 detail::bures_batch_burn_in(spec.n),
                                 detail::bures_batch_thinning(spec.n));
            for (long i = s; i < count; i += streams) {
                auto lam = chain.next().values;
                std::sort(lam.begin(), lam.end());
                out[static_cast<std::size_t>(i)] = std::move(lam);
            }
            return;
        }
        RngStream rng(seed, static_cast<std::uint64_t>(s));
        for (long i = s; i < count; i += streams) {
            std::vector<double> lam;
            if (spec.kind == Ensemble::Bures) {
                lam = sample_bures_spectrum_rejection(spec.n, rng).values;
            } else {
                lam = sample_induced(spec.n, spec.k, rng).eigenvalues();
            }
            std::sort(lam.begin(), lam.end());
            out[static_cast<std::size_t>(i)] = std::move(lam);
        }
    };

    const int workers = std::min(worker_count(threads), streams);
    if (workers <= 1) {
        for (int s = 0; s < streams; ++s) run_stream(s);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int s = next_stream.fetch_add(1); s < streams; s = next_stream.fetch_add(1))
                    run_stream(s);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

struct EstimateReport {
    std::string quantity;
    long count = 0;
    double estimate = 0.0;
    double std_error = 0.0;    // sample standard deviation / sqrt(count)
    bool has_target = false;
    double target = 0.0;
    std::string target_repr;   // exact rational rendering when available
    double z = 0.0;
    double z_threshold = 4.0;
    double abs_tol = 0.0;      // when > 0, verdict is |estimate - target| <= abs_tol
    bool pass = true;
};

namespace detail {

inline void finish_report(EstimateReport& r, const std::vector<double>& values) {
    r.count = static_cast<long>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = values.size() > 1
                          ? std::sqrt(ss / static_cast<double>(values.size() - 1))
                          : 0.0;
    r.estimate = mean;
    r.std_error = sd / std::sqrt(static_cast<double>(values.size()));
    if (!r.has_target) {
        r.pass = true;
        return;
    }
    if (r.abs_tol > 0.0) {
        r.pass = std::abs(r.estimate - r.target) <= r.abs_tol;
        return;
    }
    if (r.std_error == 0.0) {
        r.z = (r.estimate == r.target) ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.z = (r.estimate - r.target) / r.std_error;
    }
    r.pass = std::abs(r.z) <= r.z_threshold;
}

inline double spectrum_entropy(const std::vector<double>& lam) {
    double s = 0.0;
    for (double x : lam)
        if (x > 1e-15) s -= x * std::log(x);
    return s;
}

} // namespace detail

// Monte Carlo <Tr rho^q> with a z-verdict against the exact value: the
// W-matrix moments for HS/induced (any q), the jet pipeline for Bures up to
// n = 4.  Larger Bures n has no exact target and the report says so.
inline EstimateReport estimate_trace_moment(const EnsembleSpec& spec, int q, long count,
                                            std::uint64_t seed, double z_threshold = 4.0,
                                            int threads = 0) {
    if (count < 1000) throw std::invalid_argument("estimate_trace_moment: count must be >= 1000");
    if (q < 1) throw std::invalid_argument("estimate_trace_moment: q must be >= 1");
    EstimateReport r;
    r.quantity = std::string(ensemble_name(spec.kind)) + " n=" + std::to_string(spec.n) +
                 (spec.kind == Ensemble::Induced ? " k=" + std::to_string(spec.k) : "") +
                 " Tr rho^" + std::to_string(q);
    r.z_threshold = z_threshold;
    if (spec.kind == Ensemble::Bures) {
        if (spec.n <= 4) {
            const BigRational t = bures_trace_moment(spec.n, q);
            r.has_target = true;
            r.target = to_double(t);
            r.target_repr = rational_to_string(t);
        }
    } else {
        const BigRational t = BigRational(std::min(spec.n, spec.k)) *
                              induced_moment(spec.n, spec.k, q);
        r.has_target = true;
        r.target = to_double(t);
        r.target_repr = rational_to_string(t);
    }

    const auto spectra = sample_spectra(spec, count, seed, threads);
    std::vector<double> values(spectra.size());
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        double s = 0.0;
        for (double lam : spectra[i]) s += std::pow(lam, q);
        values[i] = s;
    }
    detail::finish_report(r, values);
    return r;
}

// Monte Carlo mean von Neumann entropy.  HS/induced get a z-verdict against
// the exact rational mean; Bures is judged against the asymptotic value
// ln n - ln 2 within an absolute tolerance, since no exact finite-n value is
// available for it.
inline EstimateReport estimate_entropy(const EnsembleSpec& spec, long count, std::uint64_t seed,
                                       double z_threshold = 4.0, int threads = 0,
                                       double bures_abs_tol = 0.1) {
    if (count < 1000) throw std::invalid_argument("estimate_entropy: count must be >= 1000");
    EstimateReport r;
    r.quantity = std::string(ensemble_name(spec.kind)) + " n=" + std::to_string(spec.n) +
                 (spec.kind == Ensemble::Induced ? " k=" + std::to_string(spec.k) : "") +
                 " entropy";
    r.z_threshold = z_threshold;
    if (spec.kind == Ensemble::Bures) {
        r.has_target = true;
        r.target = std::log(static_cast<double>(spec.n)) - std::log(2.0);
        r.target_repr = "ln(n) - ln(2) (asymptotic)";
        r.abs_tol = bures_abs_tol;
    } else {
        const BigRational t = mean_entropy(spec.n, spec.k);
        r.has_target = true;
        r.target = to_double(t);
        r.target_repr = rational_to_string(t);
    }

    const auto spectra = sample_spectra(spec, count, seed, threads);
    std::vector<double> values(spectra.size());
    for (std::size_t i = 0; i < spectra.size(); ++i)
        values[i] = detail::spectrum_entropy(spectra[i]);
    detail::finish_report(r, values);
    return r;
}

struct SpectralHistogram {
    std::vector<double> edges;    // bins + 1 ascending edges, starting at 0
    std::vector<double> density;  // normalized: sum(width * density) = 1
    long total_count = 0;         // pooled eigenvalues
    double max_value = 0.0;       // largest rescaled eigenvalue seen
};

// Histogram of the rescaled spectrum x = n*lambda pooled over all
// eigenvalues of all samples.  The range is the limiting support with 5%
// headroom ((1+sqrt(n/k))^2 covers HS and the induced family); rare
// overshoots land in the last bin so the normalization stays exact, and the
// true maximum is reported separately.
inline SpectralHistogram spectral_histogram(const EnsembleSpec& spec, long count, int bins,
                                            std::uint64_t seed, int threads = 0) {
    if (bins < 20) throw std::invalid_argument("spectral_histogram: need at least 20 bins");
    if (count * spec.n < 10000)
        throw std::invalid_argument("spectral_histogram: need count * n >= 10^4 eigenvalues");

    double support = 0.0;
    if (spec.kind == Ensemble::Bures) {
        support = AsymptoticMeasure::bures_edge();
    } else {
        const double ratio = static_cast<double>(spec.n) / static_cast<double>(spec.k);
        support = (1.0 + std::sqrt(ratio)) * (1.0 + std::sqrt(ratio));
    }
    const double upper = support * 1.05;

    SpectralHistogram h;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[static_cast<std::size_t>(b)] = upper * b / bins;
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);

    const auto spectra = sample_spectra(spec, count, seed, threads);
    for (const auto& lam : spectra)
        for (double v : lam) {
            const double x = v * spec.n;
            h.max_value = std::max(h.max_value, x);
            int b = static_cast<int>(x / upper * bins);
            if (b >= bins) b = bins - 1;  // clip overshoot into the last bin
            if (b < 0) b = 0;
            ++counts[static_cast<std::size_t>(b)];
            ++h.total_count;
        }

    const double width = upper / bins;
    h.density.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b)
        h.density[static_cast<std::size_t>(b)] =
            static_cast<double>(counts[static_cast<std::size_t>(b)]) /
            (static_cast<double>(h.total_count) * width);
    return h;
}

struct DensityComparison {
    double l1 = 0.0;                 // sum of width * |empirical - analytic|
    std::vector<double> residuals;   // per-bin empirical - analytic
    std::vector<double> analytic;    // per-bin analytic bin averages
};

// Compare a histogram against a limiting density.  The analytic value per
// bin is the bin average of the density (for the singular first bin via the
// substitution that absorbs the x^{-1/2} or x^{-2/3} divergence); at the
// histogram's resolution this agrees with the bin-center value to O(width^2)
// everywhere the density is smooth.
inline DensityComparison compare_density(const SpectralHistogram& h, AsymptoticTag tag) {
    const bool hs = (tag == AsymptoticTag::HS);
    auto dens = [hs](double x) { return hs ? hs_density(x) : bures_density(x); };

    DensityComparison c;
    const std::size_t bins = h.density.size();
    c.residuals.resize(bins);
    c.analytic.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double lo = h.edges[b];
        const double hi = h.edges[b + 1];
        double integral;
        if (lo <= 0.0) {
            // substitution x = u^2 (HS) or u^3 (Bures) regularizes the origin
            if (hs)
                integral = integrate_adaptive(
                    [&](double u) { return dens(u * u) * 2.0 * u; }, 0.0, std::sqrt(hi));
            else
                integral = integrate_adaptive(
                    [&](double u) { return dens(u * u * u) * 3.0 * u * u; }, 0.0, std::cbrt(hi));
        } else {
            integral = integrate_adaptive(dens, lo, hi);
        }
        const double avg = integral / (hi - lo);
        c.analytic[b] = avg;
        c.residuals[b] = h.density[b] - avg;
        c.l1 += (hi - lo) * std::abs(c.residuals[b]);
    }
    return c;
}

// Two-sample Kolmogorov-Smirnov statistic and its 1% critical value
// 1.628 sqrt((m + n)/(m n)) -- used to compare sampler variants.
struct KsResult {
    double statistic = 0.0;
    double critical_1pct = 0.0;
    bool pass = false;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        // step both empirical CDFs past the smaller value together so that
        // ties across the samples never register a spurious gap
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult r;
    r.statistic = d;
    r.critical_1pct = 1.628 * std::sqrt((na + nb) / (na * nb));
    r.pass = r.statistic < r.critical_1pct;
    return r;
}

} // namespace rho
