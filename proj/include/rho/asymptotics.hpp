#pragma once

// Large-N limits: the rescaled level densities and their moments, the
// associated Green functions (with branch selection by analytic continuation
// from the t -> -infinity asymptote), the generalized Pastur equation with a
// Newton continuation solver, and the leading-order trace/entropy values.
// Throughout, x is the rescaled eigenvalue N*lambda, so both limiting
// densities have unit mass and unit mean.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rho/quadrature.hpp"

namespace rho {

enum class AsymptoticTag { HS, Bures };

struct AsymptoticMeasure {
    AsymptoticTag tag;
    double support_upper;  // 4 for HS, 3*sqrt(3) for Bures

    static AsymptoticMeasure hs() { return {AsymptoticTag::HS, 4.0}; }
    static AsymptoticMeasure bures() { return {AsymptoticTag::Bures, bures_edge()}; }
    static double bures_edge() { return 3.0 * std::sqrt(3.0); }
};

// P_HS(x) = (1/2pi) sqrt(4/x - 1) on (0, 4]; 0 outside.  Diverges as
// x^{-1/2} toward the origin.
inline double hs_density(double x) {
    if (!(x > 0.0 && x <= 4.0)) return 0.0;
    return std::sqrt(4.0 / x - 1.0) / (2.0 * std::numbers::pi);
}

// Bures limit density on (0, 3*sqrt(3)].  With T = a/x + sqrt((a/x)^2 - 1),
// P_B(x) = 3/(4 a pi) (T^{2/3} - T^{-2/3}) -- an algebraic rewriting of the
// two-cube-root form that stays real and stable near both edges.  Diverges
// as x^{-2/3} toward the origin, vanishes at x = a.
inline double bures_density(double x) {
    const double a = AsymptoticMeasure::bures_edge();
    if (!(x > 0.0 && x <= a)) return 0.0;
    const double r = a / x;
    const double s = std::sqrt(std::fmax(r * r - 1.0, 0.0));  // clamp rounding at x = a
    const double tpow = std::cbrt((r + s) * (r + s));
    return 3.0 / (4.0 * a * std::numbers::pi) * (tpow - 1.0 / tpow);
}

namespace detail {

inline void check_moment_exponent(AsymptoticTag tag, double q) {
    const double threshold = (tag == AsymptoticTag::HS) ? -0.5 : -1.0 / 3.0;
    if (!(q > threshold))
        throw std::invalid_argument("density moment: q must exceed " + std::to_string(threshold) +
                                    " for an integrable moment");
}

} // namespace detail

// Moment integral x^q against the limiting density, by adaptive quadrature
// after substituting x = u^p.  Near the origin the integrand behaves like
// x^{q - sigma} (sigma = 1/2 for HS, 2/3 for Bures), which transforms to
// u^{p(q + 1 - sigma) - 1}; p is chosen so that exponent is at least 1, so
// the transformed integrand vanishes at u = 0 for every admissible q,
// including negative orders.
inline double density_moment(const AsymptoticMeasure& m, double q) {
    detail::check_moment_exponent(m.tag, q);
    const bool is_hs = (m.tag == AsymptoticTag::HS);
    const double sigma = is_hs ? 0.5 : 2.0 / 3.0;
    const double p = std::max(is_hs ? 2.0 : 3.0, std::ceil(2.0 / (q + 1.0 - sigma)));
    const double upper = std::pow(m.support_upper, 1.0 / p);
    return integrate_adaptive(
        [q, p, is_hs](double u) {
            const double x = std::pow(u, p);
            const double dens = is_hs ? hs_density(x) : bures_density(x);
            return std::pow(x, q) * dens * p * std::pow(u, p - 1.0);
        },
        0.0, upper);
}

// The same moments in closed form:
//   f_HS(q) = (1/pi) 4^q Gamma(q+1/2) Gamma(1/2) / Gamma(q+2)
//   f_B(q)  = (1/2pi) 2^q 3^{3q/2} Gamma(q/2+1/6) Gamma(q/2+5/6) / Gamma(q+2)
inline double exact_density_moment(const AsymptoticMeasure& m, double q) {
    detail::check_moment_exponent(m.tag, q);
    if (m.tag == AsymptoticTag::HS)
        return std::exp(q * std::log(4.0) + std::lgamma(q + 0.5) + std::lgamma(0.5) -
                        std::lgamma(q + 2.0)) /
               std::numbers::pi;
    return std::exp(q * std::log(2.0) + 1.5 * q * std::log(3.0) + std::lgamma(q / 2.0 + 1.0 / 6.0) +
                    std::lgamma(q / 2.0 + 5.0 / 6.0) - std::lgamma(q + 2.0)) /
           (2.0 * std::numbers::pi);
}

struct GreenValue {
    std::complex<double> t;
    std::complex<double> g;
};

namespace detail {

inline void check_green_argument(std::complex<double> t, double support_upper) {
    if (t == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("green function: t = 0 is the pole of -1/t");
    if (t.imag() == 0.0 && t.real() > 0.0 && t.real() <= support_upper)
        throw std::invalid_argument(
            "green function: real t inside the support needs a positive imaginary part");
}

// The three Green-function candidates at one point, from the closed form
// z = (-a/t)^{2/3} (1 - sqrt(1-(t/a)^2))^{2/3}, G = (z + 1/z - 1)/6: the
// principal-branch z times each cube root of unity.  Which candidate is the
// analytic continuation from t -> -infinity is decided by the caller.
inline std::array<std::complex<double>, 3> bures_green_candidates(std::complex<double> t) {
    const double a = AsymptoticMeasure::bures_edge();
    const std::complex<double> v = (-a / t) * (1.0 - std::sqrt(1.0 - (t / a) * (t / a)));
    const std::complex<double> z0 = std::pow(v, 2.0 / 3.0);
    constexpr double two_pi_thirds = 2.0 * std::numbers::pi / 3.0;
    const std::complex<double> omega = std::polar(1.0, two_pi_thirds);
    std::array<std::complex<double>, 3> out{};
    std::complex<double> z = z0;
    for (int k = 0; k < 3; ++k, z *= omega) out[static_cast<std::size_t>(k)] = (z + 1.0 / z - 1.0) / 6.0;
    return out;
}

} // namespace detail

// G_HS(t) = (1/2)(sqrt(1 - 4/t) - 1).  The principal square root is already
// the right branch everywhere off the support: 1 - 4/t maps the upper half
// plane into itself, so the Herglotz property holds with no intervention.
inline GreenValue hs_green(std::complex<double> t) {
    detail::check_green_argument(t, 4.0);
    if (t.imag() < 0.0) {
        auto g = hs_green(std::conj(t));
        return {t, std::conj(g.g)};
    }
    return {t, 0.5 * (std::sqrt(1.0 - 4.0 / t) - 1.0)};
}

// Bures Green function.  On the negative real axis the principal-branch
// closed form is already the continuation from -infinity (everything inside
// is real and positive there, and G(-a) = 1/6 lands exactly).  Elsewhere the
// principal powers silently hop roots, so the value is carried from
// t = -10^6 along a path over the support (climb, traverse at fixed height,
// descend onto the target), at each step picking the closed-form candidate
// nearest the carried value.  The lower half plane is the Schwarz reflection.
inline GreenValue bures_green(std::complex<double> t) {
    const double a = AsymptoticMeasure::bures_edge();
    detail::check_green_argument(t, a);
    if (t.imag() < 0.0) {
        auto g = bures_green(std::conj(t));
        return {t, std::conj(g.g)};
    }
    if (t.imag() == 0.0 && t.real() < 0.0) return {t, detail::bures_green_candidates(t)[0]};

    const double t0 = -1e6;
    const double height = std::fmax(2.0 * a, t.imag());
    std::vector<std::complex<double>> path;
    for (int j = 1; j <= 8; ++j) path.emplace_back(t0, height * j / 8.0);
    const int n_traverse = 240;  // cubic clustering toward the target abscissa
    const double span = t.real() - t0;
    for (int j = 1; j <= n_traverse; ++j) {
        const double frac = static_cast<double>(n_traverse - j) / n_traverse;
        path.emplace_back(t.real() - span * frac * frac * frac, height);
    }
    const int n_descend = 200;  // cubic clustering toward the target ordinate
    for (int j = 1; j <= n_descend; ++j) {
        const double frac = static_cast<double>(n_descend - j) / n_descend;
        path.emplace_back(t.real(), t.imag() + (height - t.imag()) * frac * frac * frac);
    }

    std::complex<double> g = -1.0 / t0;
    for (const auto& s : path) {
        const auto cands = detail::bures_green_candidates(s);
        double best = std::abs(cands[0] - g);
        std::size_t pick = 0;
        for (std::size_t k = 1; k < 3; ++k)
            if (const double d = std::abs(cands[k] - g); d < best) {
                best = d;
                pick = k;
            }
        g = cands[pick];
    }
    return {t, g};
}

// Residual of the generalized Pastur equation G [1 + alpha G]^{1/alpha} + 1/t,
// zero at the physical Green function (alpha = 1: HS, alpha = 2: Bures).
inline std::complex<double> pastur_residual(double alpha, std::complex<double> t,
                                            std::complex<double> g) {
    if (alpha < 1.0) throw std::invalid_argument("pastur_residual: alpha must be >= 1");
    return g * std::pow(1.0 + alpha * g, 1.0 / alpha) + 1.0 / t;
}

// Solve the Pastur equation by damped Newton iteration, continued along a
// straight homotopy from t0 = -10^6 (where G = -1/t is nearly exact) to the
// target; the path stays off the support because its interior has strictly
// positive imaginary part whenever the target does.
inline std::complex<double> pastur_solve(double alpha, std::complex<double> t) {
    if (alpha < 1.0) throw std::invalid_argument("pastur_solve: alpha must be >= 1");
    if (t == std::complex<double>(0.0, 0.0))
        throw std::invalid_argument("pastur_solve: t = 0 is the pole of -1/t");
    if (t.imag() == 0.0 && t.real() > 0.0)
        throw std::invalid_argument("pastur_solve: t on the positive real axis needs Im t != 0");
    if (t.imag() < 0.0) return std::conj(pastur_solve(alpha, std::conj(t)));

    const std::complex<double> start(-1e6, 0.0);
    const int n_steps = 250;
    std::complex<double> g = -1.0 / start;
    int newton_budget = n_steps * 40;
    for (int j = 1; j <= n_steps; ++j) {
        const double frac = static_cast<double>(n_steps - j) / n_steps;
        const std::complex<double> s = t + (start - t) * frac * frac * frac;
        for (int it = 0; it < 40; ++it) {
            const std::complex<double> r = pastur_residual(alpha, s, g);
            if (std::abs(r) < 1e-14 * (1.0 + std::abs(1.0 / s))) break;
            if (--newton_budget < 0)
                throw std::runtime_error("pastur_solve: Newton budget exhausted, last |residual| = " +
                                         std::to_string(std::abs(r)));
            // d/dG of G (1+aG)^{1/a} = (1+aG)^{1/a-1} (1 + (a+1)G)
            const std::complex<double> fp = std::pow(1.0 + alpha * g, 1.0 / alpha - 1.0) *
                                            (1.0 + (alpha + 1.0) * g);
            std::complex<double> step = -r / fp;
            double damp = 1.0;
            while (damp > 1.0 / 1024.0 &&
                   std::abs(pastur_residual(alpha, s, g + damp * step)) > std::abs(r))
                damp *= 0.5;
            g += damp * step;
        }
    }
    const std::complex<double> r = pastur_residual(alpha, t, g);
    if (std::abs(r) > 1e-12 * (1.0 + std::abs(1.0 / t)))
        throw std::runtime_error("pastur_solve: did not converge, last |residual| = " +
                                 std::to_string(std::abs(r)));
    return g;
}

// Leading-order <Tr rho^q> = N^{1-q} f(q) and mean entropy ln N - c
// (c = 1/2 for HS, ln 2 for Bures).
inline double asymptotic_trace(const AsymptoticMeasure& m, double q, int n) {
    if (n < 2) throw std::invalid_argument("asymptotic_trace: n must be >= 2");
    if (!(q > 0.0)) throw std::invalid_argument("asymptotic_trace: q must be positive");
    return std::pow(static_cast<double>(n), 1.0 - q) * exact_density_moment(m, q);
}

inline double asymptotic_entropy(const AsymptoticMeasure& m, int n) {
    if (n < 2) throw std::invalid_argument("asymptotic_entropy: n must be >= 2");
    const double c = (m.tag == AsymptoticTag::HS) ? 0.5 : std::log(2.0);
    return std::log(static_cast<double>(n)) - c;
}

} // namespace rho
