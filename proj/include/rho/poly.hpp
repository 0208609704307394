#pragma once

// Exact truncated multivariate polynomial algebra over BigRational: the jets
// used to expand generating functions.  Storage is a sparse map keyed by the
// exponent multi-index; truncation is by total degree, applied identically
// by every ring operation, so products of truncations equal truncations of
// products up to the cap.

#include <cstdint>
#include <map>
#include <vector>
#include <stdexcept>
#include <algorithm>
#include <numeric>

#include "rho/rational.hpp"

namespace rho {

class TruncatedPolynomial {
public:
    using Exponents = std::vector<std::uint8_t>;

    TruncatedPolynomial(int num_vars, int max_total_degree)
        : nvars_(num_vars), cap_(max_total_degree) {
        if (num_vars < 1) throw std::invalid_argument("TruncatedPolynomial: need at least one variable");
        if (max_total_degree < 0) throw std::invalid_argument("TruncatedPolynomial: negative degree cap");
    }

    static TruncatedPolynomial constant(int num_vars, int cap, const BigRational& c) {
        TruncatedPolynomial p(num_vars, cap);
        p.set(Exponents(num_vars, 0), c);
        return p;
    }

    // The single variable E_i (zero polynomial if the cap cannot hold it).
    static TruncatedPolynomial variable(int num_vars, int cap, int i) {
        TruncatedPolynomial p(num_vars, cap);
        if (i < 0 || i >= num_vars) throw std::invalid_argument("variable: index out of range");
        Exponents e(num_vars, 0);
        e[i] = 1;
        if (cap >= 1) p.set(e, 1);
        return p;
    }

    int num_vars() const { return nvars_; }
    int max_total_degree() const { return cap_; }
    const std::map<Exponents, BigRational>& terms() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    static int total_degree(const Exponents& e) {
        return std::accumulate(e.begin(), e.end(), 0);
    }

    BigRational get(const Exponents& e) const {
        auto it = coef_.find(e);
        return it == coef_.end() ? BigRational(0) : it->second;
    }

    BigRational constant_term() const { return get(Exponents(nvars_, 0)); }

    void set(const Exponents& e, const BigRational& c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("set: exponent arity mismatch");
        if (total_degree(e) > cap_) return;  // truncated away
        if (c == 0) coef_.erase(e);
        else coef_[e] = c;
    }

    void add_to(const Exponents& e, const BigRational& c) {
        if (total_degree(e) > cap_) return;
        auto it = coef_.find(e);
        if (it == coef_.end()) {
            if (c != 0) coef_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coef_.erase(it);
        }
    }

    bool operator==(const TruncatedPolynomial& o) const {
        return nvars_ == o.nvars_ && cap_ == o.cap_ && coef_ == o.coef_;
    }

    TruncatedPolynomial operator+(const TruncatedPolynomial& o) const {
        check_compatible(o);
        TruncatedPolynomial r = *this;
        for (const auto& [e, c] : o.coef_) r.add_to(e, c);
        return r;
    }

    TruncatedPolynomial operator-(const TruncatedPolynomial& o) const {
        check_compatible(o);
        TruncatedPolynomial r = *this;
        for (const auto& [e, c] : o.coef_) r.add_to(e, -c);
        return r;
    }

    TruncatedPolynomial operator-() const {
        TruncatedPolynomial r(nvars_, cap_);
        for (const auto& [e, c] : coef_) r.coef_.emplace(e, -c);
        return r;
    }

    TruncatedPolynomial operator*(const TruncatedPolynomial& o) const {
        check_compatible(o);
        TruncatedPolynomial r(nvars_, cap_);
        for (const auto& [ea, ca] : coef_) {
            const int da = total_degree(ea);
            for (const auto& [eb, cb] : o.coef_) {
                if (da + total_degree(eb) > cap_) continue;
                Exponents e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
                r.add_to(e, ca * cb);
            }
        }
        return r;
    }

    TruncatedPolynomial scaled(const BigRational& c) const {
        TruncatedPolynomial r(nvars_, cap_);
        if (c == 0) return r;
        for (const auto& [e, k] : coef_) r.coef_.emplace(e, k * c);
        return r;
    }

    // Formal partial derivative with respect to variable i.
    TruncatedPolynomial derivative(int i) const {
        if (i < 0 || i >= nvars_) throw std::invalid_argument("derivative: index out of range");
        TruncatedPolynomial r(nvars_, cap_);
        for (const auto& [e, c] : coef_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_to(d, c * e[i]);
        }
        return r;
    }

    // Exchange variables i and j in every monomial.
    TruncatedPolynomial swapped_vars(int i, int j) const {
        TruncatedPolynomial r(nvars_, cap_);
        for (const auto& [e, c] : coef_) {
            Exponents d = e;
            std::swap(d[i], d[j]);
            r.coef_.emplace(std::move(d), c);
        }
        return r;
    }

    // Substitute E_i = E_j (total degree is preserved, so nothing truncates).
    TruncatedPolynomial substituted(int i, int j) const {
        TruncatedPolynomial r(nvars_, cap_);
        for (const auto& [e, c] : coef_) {
            Exponents d = e;
            d[j] = static_cast<std::uint8_t>(d[j] + d[i]);
            d[i] = 0;
            r.add_to(d, c);
        }
        return r;
    }

    bool antisymmetric_under_swap(int i, int j) const {
        return swapped_vars(i, j) == -*this;
    }

    bool symmetric_under_swap(int i, int j) const {
        return swapped_vars(i, j) == *this;
    }

private:
    void check_compatible(const TruncatedPolynomial& o) const {
        if (nvars_ != o.nvars_ || cap_ != o.cap_)
            throw std::invalid_argument("TruncatedPolynomial: mixed arity or degree cap");
    }

    int nvars_;
    int cap_;
    std::map<Exponents, BigRational> coef_;
};

namespace poly_ops {

// Exact rational square root, or throws.
inline BigRational rational_sqrt(const BigRational& r) {
    if (r < 0) throw std::domain_error("rational_sqrt: negative argument");
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    const BigInt sn = boost::multiprecision::sqrt(num);
    const BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den)
        throw std::domain_error("rational_sqrt: argument is not a perfect rational square");
    return BigRational(sn, sd);
}

// sqrt(1 + p) as a truncated series.  Needs 1 + p's constant term to be a
// positive perfect rational square s0^2; then
// sqrt(1 + p) = s0 * sum_k C(1/2, k) u^k with u = (p - p0) / (1 + p0).
inline TruncatedPolynomial sqrt_one_plus(const TruncatedPolynomial& p) {
    const int nv = p.num_vars(), cap = p.max_total_degree();
    const BigRational c0 = 1 + p.constant_term();
    if (c0 <= 0) throw std::domain_error("sqrt_one_plus: constant term of (1 + p) must be positive");
    const BigRational s0 = rational_sqrt(c0);

    TruncatedPolynomial u = (p - TruncatedPolynomial::constant(nv, cap, p.constant_term())).scaled(1 / c0);
    TruncatedPolynomial acc = TruncatedPolynomial::constant(nv, cap, 1);
    TruncatedPolynomial upow = TruncatedPolynomial::constant(nv, cap, 1);
    BigRational coeff = 1;  // C(1/2, k), built iteratively
    for (int k = 1; k <= cap; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        coeff *= BigRational(3 - 2 * k, 2 * k);  // C(1/2,k) = C(1/2,k-1) * (1/2 - (k-1)) / k
        acc = acc + upow.scaled(coeff);
    }
    return acc.scaled(s0);
}

// 1 / p as a truncated series (geometric series around the constant term,
// which must be nonzero).
inline TruncatedPolynomial reciprocal(const TruncatedPolynomial& p) {
    const int nv = p.num_vars(), cap = p.max_total_degree();
    const BigRational c0 = p.constant_term();
    if (c0 == 0) throw std::domain_error("reciprocal: zero constant term");

    TruncatedPolynomial u = (p - TruncatedPolynomial::constant(nv, cap, c0)).scaled(1 / c0);
    TruncatedPolynomial acc = TruncatedPolynomial::constant(nv, cap, 1);
    TruncatedPolynomial upow = TruncatedPolynomial::constant(nv, cap, 1);
    BigRational sign = 1;
    for (int k = 1; k <= cap; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        sign = -sign;
        acc = acc + upow.scaled(sign);
    }
    return acc.scaled(1 / c0);
}

// Synthetic division of p by (E_i - E_j).  The quotient is exact; the
// remainder p|_{E_i = E_j} is returned alongside so callers can enforce
// exact divisibility.
struct LinearDivision {
    TruncatedPolynomial quotient;
    TruncatedPolynomial remainder;
};

inline LinearDivision divide_by_linear_difference(const TruncatedPolynomial& p, int i, int j) {
    const int nv = p.num_vars(), cap = p.max_total_degree();
    if (i == j || i < 0 || j < 0 || i >= nv || j >= nv)
        throw std::invalid_argument("divide_by_linear_difference: bad variable pair");

    // Split p by the degree of E_i: p = sum_d a_d(other vars) E_i^d.
    int dmax = 0;
    for (const auto& [e, c] : p.terms()) dmax = std::max(dmax, static_cast<int>(e[i]));
    std::vector<TruncatedPolynomial> a(static_cast<std::size_t>(dmax) + 1, TruncatedPolynomial(nv, cap));
    for (const auto& [e, c] : p.terms()) {
        TruncatedPolynomial::Exponents d = e;
        const int deg = d[i];
        d[i] = 0;
        a[static_cast<std::size_t>(deg)].add_to(d, c);
    }

    const TruncatedPolynomial ej = TruncatedPolynomial::variable(nv, cap, j);
    // Horner-style synthetic division at the "root" E_i = E_j:
    // q_{d-1} = a_d, q_{k-1} = a_k + E_j q_k, remainder = a_0 + E_j q_0.
    std::vector<TruncatedPolynomial> q(std::max(dmax, 1), TruncatedPolynomial(nv, cap));
    TruncatedPolynomial carry(nv, cap);
    for (int d = dmax; d >= 1; --d) {
        carry = (d == dmax) ? a[static_cast<std::size_t>(d)]
                            : a[static_cast<std::size_t>(d)] + ej * carry;
        q[static_cast<std::size_t>(d - 1)] = carry;
    }
    TruncatedPolynomial remainder = dmax == 0 ? a[0] : a[0] + ej * carry;

    TruncatedPolynomial quotient(nv, cap);
    for (int d = 0; d < dmax; ++d) {
        for (const auto& [e, c] : q[static_cast<std::size_t>(d)].terms()) {
            TruncatedPolynomial::Exponents m = e;
            m[i] = static_cast<std::uint8_t>(m[i] + d);
            quotient.add_to(m, c);
        }
    }
    return {std::move(quotient), std::move(remainder)};
}

} // namespace poly_ops

} // namespace rho
