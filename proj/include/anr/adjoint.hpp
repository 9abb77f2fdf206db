#pragma once

// A-adjoint calculus: Douglas range test, T^#A = A^+ T* A, A-real/imaginary
// parts, A-selfadjoint/positive/unitary predicates and the reduced operator.

#include <cmath>
#include <complex>

#include "anr/frame.hpp"

namespace anr {

/// r x r compression U* A^{1/2} T (A^{1/2})^+ U onto an orthonormal basis of R(A).
/// Every A-gauge of T is the classical gauge of `mat`.
template <typename Real>
struct ReducedOp {
    CMatrix<Real> mat;
    Eigen::Index source_dim = 0;

    ReducedOp operator+(const ReducedOp& o) const { return {mat + o.mat, source_dim}; }
    ReducedOp operator*(const ReducedOp& o) const { return {mat * o.mat, source_dim}; }
};

/// Residual of the range condition R(T*A) in R(A), i.e. ||(I - P_A) T* A||_F.
template <typename Real>
Real douglas_residual(const AFrame<Real>& f, const CMatrix<Real>& t) {
    detail::require_operator_dim(f, t);
    const CMatrix<Real> ta = t.adjoint() * f.A();
    return (ta - f.projector() * ta).norm();
}

template <typename Real>
bool admits_a_adjoint(const AFrame<Real>& f, const CMatrix<Real>& t) {
    return douglas_residual(f, t) <= f.rank_tol() * (Real(1) + t.norm() * f.A().norm());
}

namespace detail {
template <typename Real>
void require_adjoint(const AFrame<Real>& f, const CMatrix<Real>& t) {
    if (!admits_a_adjoint(f, t))
        throw Error(ErrorCode::NoAdjoint, "operator fails the range condition R(T*A) in R(A), residual " +
                                              std::to_string(double(douglas_residual(f, t))));
}
} // namespace detail

/// The distinguished A-adjoint A^+ T* A.
template <typename Real>
CMatrix<Real> sharp(const AFrame<Real>& f, const CMatrix<Real>& t) {
    detail::require_adjoint(f, t);
    return f.pinvA() * t.adjoint() * f.A();
}

template <typename Real>
CMatrix<Real> re_a(const AFrame<Real>& f, const CMatrix<Real>& t) {
    return (t + sharp(f, t)) / Real(2);
}

template <typename Real>
CMatrix<Real> im_a(const AFrame<Real>& f, const CMatrix<Real>& t) {
    const std::complex<Real> two_i(0, 2);
    return (t - sharp(f, t)) / two_i;
}

template <typename Real>
bool is_a_selfadjoint(const AFrame<Real>& f, const CMatrix<Real>& t, Real tol = Real(kDefaultTol)) {
    detail::require_operator_dim(f, t);
    const CMatrix<Real> at = f.A() * t;
    return (at - t.adjoint() * f.A()).norm() <= tol * (Real(1) + at.norm());
}

template <typename Real>
bool is_a_positive(const AFrame<Real>& f, const CMatrix<Real>& t, Real tol = Real(kDefaultTol)) {
    if (!is_a_selfadjoint(f, t, tol)) return false;
    const CMatrix<Real> at = f.A() * t;
    if (at.size() == 0) return true;
    const auto dec = herm_eig(CMatrix<Real>(hermitian_part(at)));
    return dec.eigenvalues(0) >= -tol * (Real(1) + spectral_norm(at));
}

template <typename Real>
bool is_a_unitary(const AFrame<Real>& f, const CMatrix<Real>& u, Real tol = Real(kDefaultTol)) {
    const CMatrix<Real> us = sharp(f, u);
    const CMatrix<Real> uss = sharp(f, us);
    const Real bound = tol * (Real(1) + f.projector().norm());
    return (us * u - f.projector()).norm() <= bound && (uss * us - f.projector()).norm() <= bound;
}

template <typename Real>
ReducedOp<Real> reduced(const AFrame<Real>& f, const CMatrix<Real>& t) {
    detail::require_adjoint(f, t);
    return {f.rangeU().adjoint() * f.sqrtA() * t * f.pinv_sqrtA() * f.rangeU(), f.dim()};
}

/// Lift a reduced operator back to the full space: A^{+1/2} U M U* A^{1/2}.
/// Inverse of `reduced` on operators of the form P_A T P_A.
template <typename Real>
CMatrix<Real> lift(const AFrame<Real>& f, const ReducedOp<Real>& m) {
    return f.pinv_sqrtA() * f.rangeU() * m.mat * f.rangeU().adjoint() * f.sqrtA();
}

} // namespace anr
