#pragma once

// Dense complex matrices sized for this library's needs (N <= 256), a cyclic
// Jacobi eigensolver for Hermitian matrices, modified Gram-Schmidt QR, and
// Gaussian matrix generation.  Jacobi is chosen over faster tridiagonal
// methods for its simplicity and unconditional stability at these sizes.

#include <complex>
#include <vector>
#include <cmath>
#include <stdexcept>
#include <string>
#include <algorithm>
#include <numeric>

#include "rho/rng.hpp"

namespace rho {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    Complex trace() const {
        if (!is_square()) throw std::logic_error("trace: matrix not square");
        Complex t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    ComplexMatrix operator*(const ComplexMatrix& b) const {
        if (cols_ != b.rows_) throw std::logic_error("operator*: dimension mismatch");
        ComplexMatrix c(rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int l = 0; l < cols_; ++l) {
                const Complex ail = (*this)(i, l);
                if (ail == Complex(0.0)) continue;
                for (int j = 0; j < b.cols_; ++j)
                    c(i, j) += ail * b(l, j);
            }
        return c;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    // max |a_ij - conj(a_ji)|: zero for an exactly Hermitian matrix.
    double hermiticity_defect() const {
        if (!is_square()) throw std::logic_error("hermiticity_defect: matrix not square");
        double d = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    bool hermitian_flag() const { return hermitian_; }

    // The flag may only be set after verifying the defect bound.
    void set_hermitian_flag() {
        const double d = hermiticity_defect();
        if (d >= 1e-12)
            throw std::logic_error("set_hermitian_flag: defect " + std::to_string(d) + " exceeds 1e-12");
        hermitian_ = true;
    }

private:
    int rows_, cols_;
    std::vector<Complex> a_;
    bool hermitian_ = false;
};

// n x k matrix of independent complex Gaussians with E|X_ij|^2 = 1
// (real and imaginary parts each N(0, 1/2)).
inline ComplexMatrix gaussian_complex_matrix(int n, int k, RngStream& rng) {
    if (n < 1 || k < 1) throw std::invalid_argument("gaussian_complex_matrix: dimensions must be positive");
    ComplexMatrix x(n, k);
    constexpr double root_half = 0.70710678118654752440084436210485;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            x(i, j) = Complex(rng.normal() * root_half, rng.normal() * root_half);
    return x;
}

struct EigenSystem {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // columns aligned with values
};

namespace detail {

// One complex Jacobi rotation zeroing A(p,q), accumulating into V if present.
inline void jacobi_rotate(ComplexMatrix& a, int p, int q, ComplexMatrix* v) {
    const Complex apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * abs_apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = c * t;
    const Complex u = apq / abs_apq;

    const int n = a.rows();
    // A <- A J, with J(p,p) = c, J(p,q) = s u, J(q,p) = -s conj(u), J(q,q) = c
    for (int m = 0; m < n; ++m) {
        const Complex amp = a(m, p), amq = a(m, q);
        a(m, p) = c * amp - s * std::conj(u) * amq;
        a(m, q) = s * u * amp + c * amq;
    }
    // A <- J^dagger A
    for (int m = 0; m < n; ++m) {
        const Complex apm = a(p, m), aqm = a(q, m);
        a(p, m) = c * apm - s * u * aqm;
        a(q, m) = s * std::conj(u) * apm + c * aqm;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);

    if (v) {
        for (int m = 0; m < n; ++m) {
            const Complex vmp = (*v)(m, p), vmq = (*v)(m, q);
            (*v)(m, p) = c * vmp - s * std::conj(u) * vmq;
            (*v)(m, q) = s * u * vmp + c * vmq;
        }
    }
}

inline double offdiagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace detail

// Full eigensystem of a Hermitian matrix by cyclic Jacobi sweeps.
// Convergence: off-diagonal Frobenius norm < 1e-13 * ||H||_F.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
    if (!h.is_square()) throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    const double defect = h.hermiticity_defect();
    if (defect >= 1e-12)
        throw std::invalid_argument("hermitian_eigensystem: input not Hermitian, max asymmetry " +
                                    std::to_string(defect));
    const int n = h.rows();
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));  // exact-symmetrize roundoff

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm = a.frobenius_norm();
    const double tol = 1e-13 * (norm > 0.0 ? norm : 1.0);

    if (n > 1) {
        bool converged = false;
        for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q)
                    if (std::abs(a(p, q)) > tol / n)
                        detail::jacobi_rotate(a, p, q, &v);
            converged = detail::offdiagonal_norm(a) < tol;
        }
        if (!converged) throw std::runtime_error("hermitian_eigensystem: Jacobi iteration did not converge");
    }

    EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int j = 0; j < n; ++j) {
        es.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[j]);
    }
    return es;
}

// Eigenvalues only, ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return hermitian_eigensystem(h).values;
}

// QR by modified Gram-Schmidt with one re-orthogonalization pass.  R's
// diagonal comes out real and positive, which is exactly the phase
// convention that makes Q of a Ginibre matrix Haar-distributed.
inline ComplexMatrix mgs_unitary(const ComplexMatrix& z) {
    if (!z.is_square()) throw std::invalid_argument("mgs_unitary: matrix not square");
    const int n = z.rows();
    ComplexMatrix q = z;
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                Complex r = 0.0;
                for (int m = 0; m < n; ++m) r += std::conj(q(m, i)) * q(m, j);
                for (int m = 0; m < n; ++m) q(m, j) -= r * q(m, i);
            }
        }
        double norm = 0.0;
        for (int m = 0; m < n; ++m) norm += std::norm(q(m, j));
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("mgs_unitary: rank-deficient input");
        for (int m = 0; m < n; ++m) q(m, j) /= norm;
    }
    return q;
}

// Haar-distributed unitary.
inline ComplexMatrix haar_unitary(int n, RngStream& rng) {
    return mgs_unitary(gaussian_complex_matrix(n, n, rng));
}

} // namespace rho
