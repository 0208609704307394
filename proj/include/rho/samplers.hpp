#pragma once

// Samplers for random density matrices and eigenvalue vectors: the induced
// family (partial trace of bipartite pure states, HS as the K = N special
// case) and the Bures measure.  Bures eigenvalues come from an exact
// rejection sampler where affordable and a pair-update Metropolis chain
// beyond that; eigenvectors are attached Haar-distributed.

#include <vector>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <algorithm>

#include "rho/ensemble.hpp"
#include "rho/matrix.hpp"
#include "rho/rng.hpp"

namespace rho {

struct DensityMatrix {
    ComplexMatrix mat;

    int dim() const { return mat.rows(); }

    explicit DensityMatrix(ComplexMatrix m) : mat(std::move(m)) {
        if (!mat.is_square()) throw std::invalid_argument("DensityMatrix: not square");
        const double defect = mat.hermiticity_defect();
        if (defect >= 1e-12)
            throw std::invalid_argument("DensityMatrix: not Hermitian, defect " + std::to_string(defect));
        if (std::abs(mat.trace() - Complex(1.0)) >= 1e-12)
            throw std::invalid_argument("DensityMatrix: trace differs from one");
        mat.set_hermitian_flag();
#ifndef NDEBUG
        for (double lam : hermitian_eigenvalues(mat))
            if (lam < -1e-10) throw std::logic_error("DensityMatrix: negative eigenvalue");
#endif
    }

    std::vector<double> eigenvalues() const { return hermitian_eigenvalues(mat); }

    double trace_power(int q) const {
        ComplexMatrix acc = mat;
        for (int i = 1; i < q; ++i) acc = acc * mat;
        return acc.trace().real();
    }

    double purity() const { return trace_power(2); }

    // von Neumann entropy -sum lambda ln lambda (0 ln 0 := 0).
    double entropy() const {
        double s = 0.0;
        for (double lam : eigenvalues())
            if (lam > 1e-15) s -= lam * std::log(lam);
        return s;
    }
};

struct SpectrumSample {
    std::vector<double> values;  // nonnegative, summing to one

    explicit SpectrumSample(std::vector<double> v) : values(std::move(v)) {
        double sum = 0.0;
        for (double x : values) {
            if (x < 0.0) throw std::invalid_argument("SpectrumSample: negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) >= 1e-12) throw std::invalid_argument("SpectrumSample: entries do not sum to 1");
    }
};

// rho = X X^dagger / Tr(X X^dagger) with X an n x k Ginibre matrix.  The
// output dimension is n regardless of the n/k order; for k < n the matrix
// has rank k, so n - k eigenvalues vanish identically.
inline DensityMatrix sample_induced(int n, int k, RngStream& rng) {
    ComplexMatrix x = gaussian_complex_matrix(n, k, rng);
    ComplexMatrix g = x * x.adjoint();
    const double tr = g.trace().real();
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = g(i, j) / tr;
    // exact Hermitian symmetrization: XX^dagger is Hermitian up to roundoff
    for (int i = 0; i < n; ++i) {
        m(i, i) = Complex(m(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    return DensityMatrix(std::move(m));
}

// K = N: the Hilbert-Schmidt measure.
inline DensityMatrix sample_hs(int n, RngStream& rng) {
    return sample_induced(n, n, rng);
}

// Dirichlet(1/2, ..., 1/2): normalized squares of real standard normals.
inline SpectrumSample sample_dirichlet_half(int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_dirichlet_half: n must be >= 1");
    std::vector<double> g(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : g) {
        const double z = rng.normal();
        x = z * z;
        sum += x;
    }
    if (sum == 0.0) return sample_dirichlet_half(n, rng);  // essentially impossible
    for (double& x : g) x /= sum;
    return SpectrumSample(std::move(g));
}

struct BuresRejectionStats {
    std::uint64_t proposals = 0;
    std::uint64_t accepts = 0;

    double acceptance_rate() const {
        return proposals == 0 ? 0.0 : static_cast<double>(accepts) / static_cast<double>(proposals);
    }
};

namespace detail {

// prod_{i<j} (l_i - l_j)^2 / (l_i + l_j); always <= 1 on the simplex since
// (l_i - l_j)^2 <= (l_i + l_j)^2 and prod_{i<j} (l_i + l_j) <= 1.
inline double bures_weight(const std::vector<double>& lam) {
    double w = 1.0;
    const std::size_t n = lam.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = lam[i] - lam[j];
            w *= d * d / (lam[i] + lam[j]);
        }
    return w;
}

} // namespace detail

// Exact rejection sampler for the Bures eigenvalue density: propose from
// Dirichlet(1/2), accept with probability bures_weight.  Practical for
// n <= 6 or so; the acceptance rate decays fast with n (about 0.5 at n = 2,
// 0.014 at n = 3, 5e-5 at n = 4).
inline SpectrumSample sample_bures_spectrum_rejection(int n, RngStream& rng,
                                                      BuresRejectionStats* stats = nullptr) {
    if (n < 1) throw std::invalid_argument("sample_bures_spectrum_rejection: n must be >= 1");
    std::uint64_t consecutive_rejects = 0;
    for (;;) {
        SpectrumSample prop = sample_dirichlet_half(n, rng);
        if (stats) ++stats->proposals;
        const double w = detail::bures_weight(prop.values);
        if (rng.uniform() < w) {
            if (stats) ++stats->accepts;
            return prop;
        }
        if (++consecutive_rejects >= 1000000)
            throw std::runtime_error(
                "sample_bures_spectrum_rejection: 10^6 consecutive proposals rejected at n = " +
                std::to_string(n) + "; use the MCMC sampler for this dimension");
    }
}

namespace detail {

// One Metropolis-Hastings pair update.  A random pair (i, j) is redrawn
// keeping its sum fixed, the new split Beta(1/2,1/2)-distributed.  That
// proposal density is itself proportional to the prod lambda^{-1/2} factor
// of the target, so the acceptance ratio reduces to the Vandermonde-type
// factors, accumulated in log space to survive n ~ 32.
inline void bures_mcmc_update(std::vector<double>& lam, RngStream& rng) {
    const std::size_t n = lam.size();
    const std::size_t i = rng.uniform_index(n);
    std::size_t j = rng.uniform_index(n - 1);
    if (j >= i) ++j;

    const double s = lam[i] + lam[j];
    const double b = rng.beta_half_half();
    const double li = s * b, lj = s * (1.0 - b);
    if (li <= 0.0 || lj <= 0.0 || li == lj) return;  // zero-density proposal

    double log_ratio = 2.0 * (std::log(std::abs(li - lj)) - std::log(std::abs(lam[i] - lam[j])));
    for (std::size_t m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        log_ratio += 2.0 * (std::log(std::abs(li - lam[m])) - std::log(std::abs(lam[i] - lam[m])));
        log_ratio += 2.0 * (std::log(std::abs(lj - lam[m])) - std::log(std::abs(lam[j] - lam[m])));
        log_ratio -= std::log(li + lam[m]) - std::log(lam[i] + lam[m]);
        log_ratio -= std::log(lj + lam[m]) - std::log(lam[j] + lam[m]);
    }
    if (log_ratio >= 0.0 || std::log(rng.uniform_open_zero()) < log_ratio) {
        lam[i] = li;
        lam[j] = lj;
    }
}

} // namespace detail

// Metropolis-Hastings chain targeting the Bures eigenvalue density.
// burn_in and thinning are counted in elementary pair updates.
class BuresMcmcChain {
public:
    BuresMcmcChain(int n, RngStream rng, std::uint64_t burn_in, std::uint64_t thinning)
        : n_(n), rng_(rng), thinning_(thinning) {
        if (n < 2) throw std::invalid_argument("BuresMcmcChain: n must be >= 2");
        if (burn_in < 1000) throw std::invalid_argument("BuresMcmcChain: burn_in below 10^3 rejected");
        if (thinning < 1) throw std::invalid_argument("BuresMcmcChain: thinning must be >= 1");
        lam_ = sample_dirichlet_half(n, rng_).values;
        for (std::uint64_t t = 0; t < burn_in; ++t) detail::bures_mcmc_update(lam_, rng_);
    }

    SpectrumSample next() {
        for (std::uint64_t t = 0; t < thinning_; ++t) detail::bures_mcmc_update(lam_, rng_);
        return SpectrumSample(std::vector<double>(lam_));
    }

    int dim() const { return n_; }

private:
    int n_;
    RngStream rng_;
    std::uint64_t thinning_;
    std::vector<double> lam_;
};

// One-shot MCMC draw (fresh chain, full burn-in).  Batch consumers should
// hold a BuresMcmcChain instead of paying the burn-in per sample.
inline SpectrumSample sample_bures_spectrum_mcmc(int n, RngStream& rng,
                                                 std::uint64_t burn_in, std::uint64_t thinning) {
    BuresMcmcChain chain(n, rng, burn_in, thinning);
    return chain.next();
}

// Assemble rho = U diag(lambda) U^dagger with lambda from the Bures
// eigenvalue sampler (exact rejection for n <= 4, MCMC beyond) and U Haar.
inline DensityMatrix sample_bures_state(int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_bures_state: n must be >= 1");
    std::vector<double> lam;
    if (n <= 4) {
        lam = sample_bures_spectrum_rejection(n, rng).values;
    } else {
        const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        lam = sample_bures_spectrum_mcmc(n, rng, std::max<std::uint64_t>(1000, 40 * pairs), 10 * pairs).values;
    }
    ComplexMatrix u = haar_unitary(n, rng);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Complex s = 0.0;
            for (int l = 0; l < n; ++l) s += u(i, l) * lam[static_cast<std::size_t>(l)] * std::conj(u(j, l));
            m(i, j) = (i == j) ? Complex(s.real(), 0.0) : s;
            if (i != j) m(j, i) = std::conj(s);
        }
    // compensate accumulated roundoff in the trace before validation
    const double tr = m.trace().real();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) /= tr;
    return DensityMatrix(std::move(m));
}

// Spectrum of one sample of the given ensemble, self-contained (used by the
// batch drivers).  For Bures this is the eigenvalue sampler directly; for
// HS/induced it diagonalizes a sampled matrix.
inline std::vector<double> sample_spectrum(const EnsembleSpec& spec, RngStream& rng) {
    switch (spec.kind) {
        case Ensemble::HS:
            return sample_hs(spec.n, rng).eigenvalues();
        case Ensemble::Induced:
            return sample_induced(spec.n, spec.k, rng).eigenvalues();
        case Ensemble::Bures: {
            if (spec.n <= 4) return sample_bures_spectrum_rejection(spec.n, rng).values;
            const std::uint64_t pairs = static_cast<std::uint64_t>(spec.n) * (spec.n - 1) / 2;
            return sample_bures_spectrum_mcmc(spec.n, rng, std::max<std::uint64_t>(1000, 40 * pairs),
                                              10 * pairs).values;
        }
    }
    throw std::logic_error("sample_spectrum: bad ensemble");
}

} // namespace rho
