#pragma once

// Trace moments of the Laguerre-type (unconstrained-trace) companion
// ensembles via truncated multivariate series: build the generating
// function as a jet in E_1..E_n, multiply by the Vandermonde factor,
// differentiate, divide the Vandermonde back out, and read off the
// constant term.  Rescaling by a telescoping Gamma ratio converts the
// Laguerre moments to fixed-trace moments, giving a derivation route for
// <Tr rho^q> that is independent of the closed forms in exact.hpp.

#include <stdexcept>
#include <vector>

#include "rho/poly.hpp"
#include "rho/rational.hpp"

namespace rho {

struct GeneratingJet {
    int n;    // number of variables E_1..E_n
    int cap;  // total-degree truncation
    TruncatedPolynomial series;
};

namespace detail {

inline void check_jet_args(int n, int cap) {
    if (n < 1) throw std::invalid_argument("generating jet: n must be >= 1");
    if (cap < 1) throw std::invalid_argument("generating jet: cap must be >= 1");
}

} // namespace detail

// Z_B^L(E) = prod over all ordered pairs (i, j) of 2/(sqrt(1+E_i)+sqrt(1+E_j)):
// diagonal factors reduce to (1+E_i)^{-1/2} and each unordered off-diagonal
// pair contributes its factor squared.  Expansion through second order:
// 1 - (n/2) sum E_i + (n^2/8 + 1/16)(sum E_i)^2 + (3n/16) sum E_i^2 + ...
inline GeneratingJet bures_laguerre_jet(int n, int cap) {
    detail::check_jet_args(n, cap);
    std::vector<TruncatedPolynomial> sqrt1p;
    sqrt1p.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        sqrt1p.push_back(poly_ops::sqrt_one_plus(TruncatedPolynomial::variable(n, cap, i)));

    auto z = TruncatedPolynomial::constant(n, cap, 1);
    for (int i = 0; i < n; ++i) z = z * poly_ops::reciprocal(sqrt1p[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto f = poly_ops::reciprocal(sqrt1p[static_cast<std::size_t>(i)] +
                                          sqrt1p[static_cast<std::size_t>(j)])
                         .scaled(2);
            z = z * f * f;
        }
    return {n, cap, std::move(z)};
}

// Z_HS^L(E) = prod_i (1+E_i)^{-n}; expansion
// 1 - n sum E_i + (n^2/2)(sum E_i)^2 + (n/2) sum E_i^2 + ...
inline GeneratingJet hs_laguerre_jet(int n, int cap) {
    detail::check_jet_args(n, cap);
    auto z = TruncatedPolynomial::constant(n, cap, 1);
    for (int i = 0; i < n; ++i) {
        const auto one_plus_e =
            TruncatedPolynomial::constant(n, cap, 1) + TruncatedPolynomial::variable(n, cap, i);
        const auto r = poly_ops::reciprocal(one_plus_e);
        for (int p = 0; p < n; ++p) z = z * r;
    }
    return {n, cap, std::move(z)};
}

// Vandermonde factor prod_{i<j} (E_i - E_j).
inline TruncatedPolynomial vandermonde_factor(int n, int cap) {
    auto d = TruncatedPolynomial::constant(n, cap, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            d = d * (TruncatedPolynomial::variable(n, cap, i) -
                     TruncatedPolynomial::variable(n, cap, j));
    return d;
}

// Exact quotient p / prod_{i<j} (E_i - E_j).  Antisymmetry under every
// transposition is checked first (it is what guarantees divisibility), then
// the linear factors are divided out one at a time; a nonzero remainder can
// only mean an upstream bug and is a hard failure.
inline TruncatedPolynomial vandermonde_divide(const TruncatedPolynomial& p, int n) {
    if (n < 1) throw std::invalid_argument("vandermonde_divide: n must be >= 1");
    if (p.num_vars() != n)
        throw std::invalid_argument("vandermonde_divide: variable count mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!p.antisymmetric_under_swap(i, j))
                throw std::invalid_argument(
                    "vandermonde_divide: polynomial is not antisymmetric under all transpositions");
    auto q = p;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto div = poly_ops::divide_by_linear_difference(q, i, j);
            if (!div.remainder.is_zero())
                throw std::runtime_error(
                    "vandermonde_divide: nonzero remainder (upstream antisymmetry bug)");
            q = std::move(div.quotient);
        }
    return q;
}

namespace detail {

// Shared extraction: <sum_i lambda_i^q> of the Laguerre ensemble whose
// generating function is the given jet, via
//   (1/Delta) sum_i (-d/dE_i)^q [Delta(E) Z(E)]  at E = 0.
// The jet must have been built with cap = q + n(n-1)/2: q derivatives spend
// q degrees and the Vandermonde division spends the rest, leaving an exact
// constant term.
inline BigRational extract_laguerre_moment(const GeneratingJet& jet, int q) {
    const int n = jet.n;
    const auto dz = vandermonde_factor(n, jet.cap) * jet.series;
    TruncatedPolynomial total = TruncatedPolynomial::constant(n, jet.cap, 0);
    for (int i = 0; i < n; ++i) {
        auto term = dz;
        for (int d = 0; d < q; ++d) term = term.derivative(i);
        total = (q % 2 == 0) ? total + term : total - term;
    }
    return vandermonde_divide(total, n).constant_term();
}

inline void check_moment_args(int n, int q) {
    if (n < 1) throw std::invalid_argument("trace moment: n must be >= 1");
    if (q < 1) throw std::invalid_argument("trace moment: q must be >= 1");
}

} // namespace detail

// <Tr rho^q> of the Laguerre-type Bures ensemble (trace unconstrained).
inline BigRational laguerre_trace_moment(int n, int q) {
    detail::check_moment_args(n, q);
    const int cap = q + n * (n - 1) / 2;
    return detail::extract_laguerre_moment(bures_laguerre_jet(n, cap), q);
}

// Fixed-trace Bures moment: the Laguerre moment divided by the telescoping
// Gamma ratio prod_{m=0}^{q-1} (n^2/2 + m).  The half-integer arguments at
// odd n never touch a Gamma evaluation.
inline BigRational bures_trace_moment(int n, int q) {
    detail::check_moment_args(n, q);
    BigRational scale = 1;
    for (int m = 0; m < q; ++m) scale *= BigRational(static_cast<long>(n) * n, 2) + m;
    return laguerre_trace_moment(n, q) / scale;
}

// Same extraction run on the HS jet and rescaled by prod_{m=0}^{q-1} (n^2 + m):
// a cross-check of the pipeline against the simpler ensemble, expected to
// reproduce the HS closed forms.
inline BigRational hs_jet_trace_moment(int n, int q) {
    detail::check_moment_args(n, q);
    const int cap = q + n * (n - 1) / 2;
    const BigRational lag = detail::extract_laguerre_moment(hs_laguerre_jet(n, cap), q);
    BigRational scale = 1;
    for (int m = 0; m < q; ++m) scale *= BigRational(static_cast<long>(n) * n + m);
    return lag / scale;
}

} // namespace rho
