#pragma once

// Exact rational evaluation of the finite-N spectral statistics of the
// induced measures: the W moment matrix and its inverse (computed twice, by
// elimination and by the explicit sum formula, and required to agree), the
// one- and two-point densities, spectral moments, mean von Neumann entropy,
// and the entropy autocorrelation.  Everything stays in BigRational until a
// caller asks for doubles.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>
#include <cmath>

#include "rho/ensemble.hpp"
#include "rho/rational.hpp"

namespace rho {

struct MomentMatrix {
    int n;         // N, rows of the spectral problem (post-interchange: n <= k)
    int k;         // K, environment dimension
    bool swapped;  // true iff the constructor arguments arrived as k < n
    std::vector<std::vector<BigRational>> w;      // W_ij = Gamma(K - N + i + j - 1)
    std::vector<std::vector<BigRational>> w_inv;  // exact inverse
};

namespace detail {

// Exact Gauss-Jordan inverse; the matrices here are tiny (N <= 12-ish).
inline std::vector<std::vector<BigRational>> invert_exact(std::vector<std::vector<BigRational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<BigRational>> inv(n, std::vector<BigRational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::logic_error("invert_exact: singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        const BigRational piv = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const BigRational f = m[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Explicit closed form for (W^-1)_ij (1-based i, j):
// (-1)^{i+j} sum_{m = max(i,j)}^{N} C(m-1, i-1) C(m-1, j-1)
//            Gamma(K-N+m) / (Gamma(m) Gamma(K-N+i) Gamma(K-N+j)).
inline BigRational w_inv_entry(int n, int k, int i, int j) {
    BigRational s = 0;
    for (int m = std::max(i, j); m <= n; ++m) {
        const BigRational num(binomial(m - 1, i - 1) * binomial(m - 1, j - 1) * gamma_int(k - n + m));
        const BigRational den(gamma_int(m) * gamma_int(k - n + i) * gamma_int(k - n + j));
        s += num / den;
    }
    return ((i + j) % 2 == 0) ? s : -s;
}

} // namespace detail

// W and W^-1 for the induced measure (N, K), interchanging the arguments
// when k < n.  The inverse is computed by exact elimination AND by the
// explicit formula; any disagreement is a hard error.  Results are memoized
// process-wide (single-writer insertion behind a mutex).
inline std::shared_ptr<const MomentMatrix> w_matrix(int n_in, int k_in) {
    if (n_in < 1 || k_in < 1) throw std::invalid_argument("w_matrix: n and k must be >= 1");
    const bool swapped = k_in < n_in;
    const int n = swapped ? k_in : n_in;
    const int k = swapped ? n_in : k_in;

    static std::map<std::pair<int, int>, std::shared_ptr<const MomentMatrix>> memo;
    static std::mutex memo_mutex;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find({n, k});
        if (it != memo.end()) {
            if (it->second->swapped == swapped) return it->second;
            auto copy = std::make_shared<MomentMatrix>(*it->second);
            copy->swapped = swapped;
            return copy;
        }
    }

    auto mm = std::make_shared<MomentMatrix>();
    mm->n = n;
    mm->k = k;
    mm->swapped = swapped;
    mm->w.assign(static_cast<std::size_t>(n), std::vector<BigRational>(static_cast<std::size_t>(n), 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            mm->w[i - 1][j - 1] = BigRational(gamma_int(k - n + i + j - 1));

    mm->w_inv = detail::invert_exact(mm->w);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (mm->w_inv[i - 1][j - 1] != detail::w_inv_entry(n, k, i, j))
                throw std::logic_error("w_matrix: elimination and explicit-formula inverses disagree");

    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(std::make_pair(n, k), mm);
    return mm;
}

// <lambda^q> under the one-point density of the induced measure:
// Gamma(KN) / (N Gamma(KN+q)) sum_ij (W^-1)_ji Gamma(K-N+i+j-1+q).
inline BigRational induced_moment(int n_in, int k_in, int q) {
    if (q < 1) throw std::invalid_argument("induced_moment: q must be >= 1");
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    BigRational s = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            s += mm->w_inv[j - 1][i - 1] * BigRational(gamma_int(k - n + i + j - 1 + q));
    return BigRational(gamma_int(k * n)) / (n * BigRational(gamma_int(k * n + q))) * s;
}

// Mean von Neumann entropy <S> of the induced measure, exactly rational:
// digammas at integers reduce to harmonic numbers and Euler's constant
// cancels between the two terms.
inline BigRational mean_entropy(int n_in, int k_in) {
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    const long kn = static_cast<long>(k) * n;
    BigRational s = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int m = k - n + i + j;
            s += mm->w_inv[j - 1][i - 1] * BigRational(gamma_int(m)) * harmonic(m - 1);
        }
    return harmonic(kn) - s / kn;
}

// One-point eigenvalue density P(lambda), exact coefficients evaluated in
// floating point at the very end.
inline double one_point_density(int n_in, int k_in, double lambda) {
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    if (n < 2)
        throw std::invalid_argument("one_point_density: N = 1 is a point mass at lambda = 1, not a density");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("one_point_density: lambda must lie in (0, 1)");
    const long kn = static_cast<long>(k) * n;

    // group exact coefficients by the exponent a - 1 of lambda, a = K-N+i+j-1
    std::map<int, BigRational> by_a;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int a = k - n + i + j - 1;
            by_a[a] += mm->w_inv[j - 1][i - 1] / BigRational(gamma_int(static_cast<long>(kn) - a));
        }
    const BigRational global = BigRational(gamma_int(kn)) / n;
    double p = 0.0;
    for (const auto& [a, c] : by_a)
        p += to_double(global * c) * std::pow(lambda, a - 1) *
             std::pow(1.0 - lambda, static_cast<double>(kn - a - 1));
    return p;
}

// Two-point eigenvalue density P(lambda, mu).  Terms whose (1-lambda-mu)
// exponent would be negative carry an exact zero coefficient because
// 1/Gamma(nonpositive integer) = 0; for N = 2 every term is of that kind
// (the unit trace makes P a line distribution), so N = 2 is rejected.
inline double two_point_density(int n_in, int k_in, double lambda, double mu) {
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    if (n < 3)
        throw std::invalid_argument("two_point_density: pointwise evaluation needs N >= 3 "
                                    "(for N = 2 the trace constraint makes it distributional)");
    if (!(lambda > 0.0 && mu > 0.0 && lambda + mu < 1.0))
        throw std::invalid_argument("two_point_density: (lambda, mu) must lie in the open simplex");
    const long kn = static_cast<long>(k) * n;

    std::map<std::pair<int, int>, BigRational> by_ab;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int kk = 1; kk <= n; ++kk)
                for (int l = 1; l <= n; ++l) {
                    const BigRational b = mm->w_inv[j - 1][i - 1] * mm->w_inv[l - 1][kk - 1] -
                                          mm->w_inv[l - 1][i - 1] * mm->w_inv[j - 1][kk - 1];
                    if (b == 0) continue;
                    const int a1 = k - n + i + j - 1;
                    const int a2 = k - n + kk + l - 1;
                    if (kn - a1 - a2 - 1 < 0) continue;  // exact zero: 1/Gamma(<=0)
                    by_ab[{a1, a2}] += b / BigRational(gamma_int(kn - a1 - a2));
                }
    const BigRational global = BigRational(gamma_int(kn)) / (static_cast<long>(n) * (n - 1));
    double p = 0.0;
    for (const auto& [ab, c] : by_ab)
        p += to_double(global * c) * std::pow(lambda, ab.first - 1) * std::pow(mu, ab.second - 1) *
             std::pow(1.0 - lambda - mu, static_cast<double>(kn - ab.first - ab.second - 1));
    return p;
}

// <lambda^L mu^M> under the two-point density; exact for all N >= 2 (the
// Beta-integral route never meets a Gamma pole).
inline BigRational two_point_moment(int n_in, int k_in, int L, int M) {
    if (L < 1 || M < 1) throw std::invalid_argument("two_point_moment: L and M must be >= 1");
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    if (n < 2) throw std::invalid_argument("two_point_moment: needs N >= 2");
    const long kn = static_cast<long>(k) * n;
    BigRational s = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int kk = 1; kk <= n; ++kk)
                for (int l = 1; l <= n; ++l) {
                    const BigRational b = mm->w_inv[j - 1][i - 1] * mm->w_inv[l - 1][kk - 1] -
                                          mm->w_inv[l - 1][i - 1] * mm->w_inv[j - 1][kk - 1];
                    if (b == 0) continue;
                    const int a1 = k - n + i + j - 1;
                    const int a2 = k - n + kk + l - 1;
                    s += b * BigRational(gamma_int(a1 + L)) * BigRational(gamma_int(a2 + M));
                }
    return BigRational(gamma_int(kn)) /
           (static_cast<long>(n) * (n - 1) * BigRational(gamma_int(kn + L + M))) * s;
}

// <lambda^2 (ln lambda)^2> under the one-point density: the single-eigenvalue
// contribution to <S S>.  Purely rational (the trigamma difference
// psi'(a+2) - psi'(KN+2) leaves only harmonic numbers).
inline BigRational squared_log_moment(int n_in, int k_in) {
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    const long kn = static_cast<long>(k) * n;
    const BigRational h1_kn = harmonic(kn + 1);
    const BigRational h2_kn = harmonic(kn + 1, 2);
    BigRational s = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int a = k - n + i + j - 1;
            const BigRational h = harmonic(a + 1) - h1_kn;
            s += mm->w_inv[j - 1][i - 1] * BigRational(gamma_int(a + 2)) *
                 (h * h + h2_kn - harmonic(a + 1, 2));
        }
    return BigRational(gamma_int(kn)) / (n * BigRational(gamma_int(kn + 2))) * s;
}

// Entropy autocorrelation <S S> = N(N-1) <lambda ln lambda mu ln mu>
//                               + N <lambda^2 (ln lambda)^2>,
// assembled from digamma/trigamma values at integers; the surviving pi^2/6
// comes from the cross term's trigamma at the overall normalization.
inline PiSquareValue entropy_correlation(int n_in, int k_in) {
    const auto mm = w_matrix(n_in, k_in);
    const int n = mm->n, k = mm->k;
    if (n < 2) throw std::invalid_argument("entropy_correlation: needs N >= 2");
    const long kn = static_cast<long>(k) * n;
    const BigRational h1_kn = harmonic(kn + 1);
    const BigRational h2_kn = harmonic(kn + 1, 2);

    // cross term: d^2/dx dy <lambda^{1+x} mu^{1+y}> at x = y = 0
    BigRational s_hh = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int kk = 1; kk <= n; ++kk)
                for (int l = 1; l <= n; ++l) {
                    const BigRational b = mm->w_inv[j - 1][i - 1] * mm->w_inv[l - 1][kk - 1] -
                                          mm->w_inv[l - 1][i - 1] * mm->w_inv[j - 1][kk - 1];
                    if (b == 0) continue;
                    const int a1 = k - n + i + j - 1;
                    const int a2 = k - n + kk + l - 1;
                    s_hh += b * BigRational(gamma_int(a1 + 1)) * BigRational(gamma_int(a2 + 1)) *
                            (harmonic(a1) - h1_kn) * (harmonic(a2) - h1_kn);
                }
    s_hh *= BigRational(gamma_int(kn)) /
            (static_cast<long>(n) * (n - 1) * BigRational(gamma_int(kn + 2)));

    const BigRational lm = two_point_moment(n, k, 1, 1);
    // <l ln l m ln m> = s_hh - lm psi'(KN+2), psi'(KN+2) = pi^2/6 - H2_{KN+1}
    const BigRational cross_a = s_hh + lm * h2_kn;
    const BigRational cross_b = -lm / 6;

    const long nn1 = static_cast<long>(n) * (n - 1);
    return PiSquareValue(nn1 * cross_a + n * squared_log_moment(n, k), nn1 * cross_b);
}

// Printed closed forms for <Tr rho^q>.  HS and Bures support q in {2,3,4};
// the induced family has printed forms for q in {2,3} only.  For the
// induced measures the result must agree exactly with N * induced_moment --
// a cross-module consistency gate exercised by the test suite.
inline BigRational closed_form_trace(const EnsembleSpec& spec, int q) {
    const BigInt n = spec.formula_n();
    const BigInt k = spec.formula_k();
    const BigInt n2 = n * n;
    switch (spec.kind) {
        case Ensemble::HS:
            if (q == 2) return BigRational(2 * n, n2 + 1);
            if (q == 3) return BigRational(5 * n2 + 1, (n2 + 1) * (n2 + 2));
            if (q == 4) return BigRational(14 * n2 * n + 10 * n, (n2 + 1) * (n2 + 2) * (n2 + 3));
            break;
        case Ensemble::Bures:
            if (q == 2) return BigRational(5 * n2 + 1, 2 * n * (n2 + 2));
            if (q == 3) return BigRational(8 * n2 + 7, (n2 + 2) * (n2 + 4));
            if (q == 4)
                return BigRational(21 * (11 * n2 * n2 + 25 * n2 + 4),
                                   8 * n * (n2 + 2) * (n2 + 4) * (n2 + 6));
            break;
        case Ensemble::Induced: {
            const BigInt kn = k * n;
            if (q == 2) return BigRational(k + n, kn + 1);
            if (q == 3) return BigRational((k + n) * (k + n) + kn + 1, (kn + 1) * (kn + 2));
            if (q == 4)
                throw std::invalid_argument("closed_form_trace: no printed induced closed form at q = 4 "
                                            "(use N * induced_moment)");
            break;
        }
    }
    throw std::invalid_argument("closed_form_trace: q must be in {2,3,4}");
}

} // namespace rho
