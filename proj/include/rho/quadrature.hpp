#pragma once

// Thin wrappers around Boost.Math quadrature: adaptive Gauss-Kronrod for
// general integrands and a fixed-order Gauss-Legendre rule for the
// polynomial densities (exact through degree 59, far beyond anything the
// finite-N densities produce).

#include <functional>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rho {

// Adaptive Gauss-Kronrod (15-point base rule) on [a, b].
inline double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                 double target_rel_err = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15,
                                                                         target_rel_err);
}

// Fixed 30-point Gauss-Legendre on [a, b]; exact for polynomials of degree <= 59.
inline double integrate_gauss30(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

} // namespace rho
