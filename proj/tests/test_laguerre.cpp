#include <catch2/catch_amalgamated.hpp>

#include "rho/exact.hpp"
#include "rho/laguerre.hpp"

using namespace rho;
using P = TruncatedPolynomial;
using E = TruncatedPolynomial::Exponents;

namespace {

BigRational r(long num, long den = 1) { return BigRational(num, den); }

} // namespace

TEST_CASE("univariate generating series") {
    // n=1 the generating function is (1+E)^(-1/2):
    // 1 - E/2 + 3E^2/8 - 5E^3/16 + ...
    const auto jet = bures_laguerre_jet(1, 3);
    CHECK(jet.n == 1);
    CHECK(jet.cap == 3);
    CHECK(jet.series.get(E{0}) == 1);
    CHECK(jet.series.get(E{1}) == r(-1, 2));
    CHECK(jet.series.get(E{2}) == r(3, 8));
    CHECK(jet.series.get(E{3}) == r(-5, 16));
}

TEST_CASE("second-order jet coefficients") {
    for (int n = 2; n <= 4; ++n) {
        const auto series = bures_laguerre_jet(n, 2).series;
        const BigRational nr(n);
        E e1(static_cast<std::size_t>(n), 0), e11 = e1, e2 = e1;
        e1[0] = 1;
        e11[0] = 1;
        e11[1] = 1;
        e2[0] = 2;
        CHECK(series.get(E(static_cast<std::size_t>(n), 0)) == 1);
        CHECK(series.get(e1) == -nr / 2);
        CHECK(series.get(e11) == nr * nr / 4 + r(1, 8));
        CHECK(series.get(e2) == nr * nr / 8 + r(1, 16) + nr * r(3, 16));

        const auto ref = hs_laguerre_jet(n, 2).series;
        CHECK(ref.get(e1) == -nr);
        CHECK(ref.get(e11) == nr * nr);
        CHECK(ref.get(e2) == nr * nr / 2 + nr / 2);
    }
}

TEST_CASE("jet is symmetric under variable exchange") {
    const auto series = bures_laguerre_jet(3, 3).series;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(series.symmetric_under_swap(i, j));
}

TEST_CASE("raw moments of the squared-singular-value ensemble") {
    const struct {
        int n, q;
        long num, den;
    } table[] = {
        {1, 1, 1, 2},    {1, 2, 3, 4},    {1, 3, 15, 8},   {1, 4, 105, 16},
        {2, 1, 2, 1},    {2, 2, 21, 4},   {2, 3, 39, 2},   {2, 4, 735, 8},
        {3, 1, 9, 2},    {3, 2, 69, 4},   {3, 3, 711, 8},  {3, 4, 2205, 4},
        {4, 1, 8, 1},    {4, 2, 81, 2},   {4, 3, 270, 1},  {4, 4, 16905, 8},
    };
    for (const auto& row : table)
        CHECK(laguerre_trace_moment(row.n, row.q) == r(row.num, row.den));

    // first moment is n^2/2 for any n
    for (int n = 5; n <= 6; ++n) CHECK(laguerre_trace_moment(n, 1) == r(static_cast<long>(n) * n, 2));
}

TEST_CASE("fixed-trace moments") {
    const struct {
        int n, q;
        long num, den;
    } table[] = {
        {2, 1, 1, 1},  {2, 2, 7, 8},     {2, 3, 13, 16},  {2, 4, 49, 64},
        {3, 1, 1, 1},  {3, 2, 23, 33},   {3, 3, 79, 143}, {3, 4, 196, 429},
        {4, 1, 1, 1},  {4, 2, 9, 16},    {4, 3, 3, 8},    {4, 4, 1127, 4224},
    };
    for (const auto& row : table)
        CHECK(bures_trace_moment(row.n, row.q) == r(row.num, row.den));

    // agreement with the closed forms
    for (int n = 2; n <= 4; ++n)
        for (int q = 2; q <= 4; ++q)
            CHECK(bures_trace_moment(n, q) == closed_form_trace(EnsembleSpec::bures(n), q));
}

TEST_CASE("reference-ensemble jet route") {
    CHECK(hs_jet_trace_moment(2, 2) == r(4, 5));
    CHECK(hs_jet_trace_moment(2, 3) == r(7, 10));
    CHECK(hs_jet_trace_moment(3, 2) == r(3, 5));
    CHECK(hs_jet_trace_moment(3, 3) == r(23, 55));
}

TEST_CASE("vandermonde factor and division") {
    const int cap = 5;
    const auto delta = vandermonde_factor(3, cap);
    // explicit product (E0-E1)(E0-E2)(E1-E2)
    auto lin = [&](int i, int j) {
        return P::variable(3, cap, i) - P::variable(3, cap, j);
    };
    CHECK(delta == lin(0, 1) * lin(0, 2) * lin(1, 2));

    // roundtrip: (delta * q) / delta == q for a symmetric q
    P q(3, cap);
    q.set(E{0, 0, 0}, r(1));
    q.set(E{1, 0, 0}, r(2, 3));
    q.set(E{0, 1, 0}, r(2, 3));
    q.set(E{0, 0, 1}, r(2, 3));
    const P p = delta * q;
    CHECK(vandermonde_divide(p, 3) == q);

    // a polynomial that is not antisymmetric is rejected
    CHECK_THROWS_AS(vandermonde_divide(P::variable(2, 2, 0), 2), std::invalid_argument);
}
