#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "anr/matrix_core.hpp"

namespace anr {

/// A validated positive metric operator A together with everything the
/// A-calculus derives from it. Built once from a single eigendecomposition
/// and immutable afterwards.
template <typename Real>
class AFrame {
public:
    using Mat = CMatrix<Real>;

    Eigen::Index dim() const { return a_.rows(); }
    Eigen::Index rank() const { return range_.cols(); }
    bool strictly_positive() const { return rank() == dim(); }
    Real rank_tol() const { return rank_tol_; }

    const Mat& A() const { return a_; }
    const Mat& sqrtA() const { return sqrt_a_; }
    const Mat& pinv_sqrtA() const { return pinv_sqrt_a_; }
    const Mat& pinvA() const { return pinv_a_; }
    const Mat& rangeU() const { return range_; }
    const Mat& nullU() const { return null_; }
    const Mat& projector() const { return proj_; }
    /// Spectral norm of A.
    Real a_norm() const { return a_spec_norm_; }

    static AFrame build(const Mat& a, Real rank_tol) {
        require_square(a, "metric operator A");
        require_finite(a, "metric operator A");
        const auto dec = herm_eig(a);
        const Eigen::Index n = a.rows();

        AFrame f;
        f.rank_tol_ = rank_tol;
        f.a_ = hermitian_part(a);
        Real lmax = n > 0 ? std::max(std::abs(dec.eigenvalues(0)), std::abs(dec.eigenvalues(n - 1))) : Real(0);
        f.a_spec_norm_ = lmax;
        if (n > 0 && dec.eigenvalues(0) < -rank_tol * lmax)
            throw Error(ErrorCode::NotPSD, "metric operator has eigenvalue " +
                                               std::to_string(double(dec.eigenvalues(0))));

        Eigen::Index first = n;
        while (first > 0 && dec.eigenvalues(first - 1) > rank_tol * lmax && lmax > Real(0)) --first;
        const Eigen::Index r = n - first;

        RVector<Real> root = RVector<Real>::Zero(n), inv_root = RVector<Real>::Zero(n),
                      inv = RVector<Real>::Zero(n);
        for (Eigen::Index k = first; k < n; ++k) {
            const Real lam = dec.eigenvalues(k);
            root(k) = std::sqrt(lam);
            inv_root(k) = Real(1) / root(k);
            inv(k) = Real(1) / lam;
        }
        const Mat& v = dec.eigenvectors;
        f.sqrt_a_ = v * root.asDiagonal() * v.adjoint();
        f.pinv_sqrt_a_ = v * inv_root.asDiagonal() * v.adjoint();
        f.pinv_a_ = v * inv.asDiagonal() * v.adjoint();
        f.range_ = v.rightCols(r);
        f.null_ = v.leftCols(first);
        f.proj_ = f.range_ * f.range_.adjoint();
        return f;
    }

    /// Frame of B = diag(A, A) on the doubled space, assembled blockwise.
    AFrame doubled() const {
        const Eigen::Index n = dim(), r = rank();
        AFrame f;
        f.rank_tol_ = rank_tol_;
        f.a_spec_norm_ = a_spec_norm_;
        f.a_ = blockdiag(a_);
        f.sqrt_a_ = blockdiag(sqrt_a_);
        f.pinv_sqrt_a_ = blockdiag(pinv_sqrt_a_);
        f.pinv_a_ = blockdiag(pinv_a_);
        f.proj_ = blockdiag(proj_);
        f.range_ = Mat::Zero(2 * n, 2 * r);
        f.range_.topLeftCorner(n, r) = range_;
        f.range_.bottomRightCorner(n, r) = range_;
        f.null_ = Mat::Zero(2 * n, 2 * (n - r));
        f.null_.topLeftCorner(n, n - r) = null_;
        f.null_.bottomRightCorner(n, n - r) = null_;
        return f;
    }

private:
    static Mat blockdiag(const Mat& m) {
        const Eigen::Index n = m.rows();
        Mat out = Mat::Zero(2 * n, 2 * n);
        out.topLeftCorner(n, n) = m;
        out.bottomRightCorner(n, n) = m;
        return out;
    }

    Mat a_, sqrt_a_, pinv_sqrt_a_, pinv_a_, range_, null_, proj_;
    Real rank_tol_ = Real(kDefaultRankTol);
    Real a_spec_norm_ = Real(0);
};

using Frame = AFrame<double>;

template <typename Real>
AFrame<Real> new_frame(const CMatrix<Real>& a, Real rank_tol = Real(kDefaultRankTol)) {
    return AFrame<Real>::build(a, rank_tol);
}

template <typename Real>
AFrame<Real> direct_sum(const AFrame<Real>& f) {
    return f.doubled();
}

namespace detail {
template <typename Real>
void require_vector_dim(const AFrame<Real>& f, const CVector<Real>& x) {
    if (x.size() != f.dim())
        throw Error(ErrorCode::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                      " against frame of dimension " + std::to_string(f.dim()));
}
template <typename Real>
void require_operator_dim(const AFrame<Real>& f, const CMatrix<Real>& t) {
    if (t.rows() != f.dim() || t.cols() != f.dim())
        throw Error(ErrorCode::DimensionMismatch, "operator is " + std::to_string(t.rows()) + "x" +
                                                      std::to_string(t.cols()) + ", frame dimension is " +
                                                      std::to_string(f.dim()));
}
} // namespace detail

/// <x, y>_A = <Ax, y>, conjugate-linear in y.
template <typename Real>
std::complex<Real> a_inner(const AFrame<Real>& f, const CVector<Real>& x, const CVector<Real>& y) {
    detail::require_vector_dim(f, x);
    detail::require_vector_dim(f, y);
    return y.dot(f.A() * x);
}

template <typename Real>
Real a_norm_vec(const AFrame<Real>& f, const CVector<Real>& x) {
    detail::require_vector_dim(f, x);
    return (f.sqrtA() * x).norm();
}

/// Numerical membership of x in N(A).
template <typename Real>
bool in_null_space(const AFrame<Real>& f, const CVector<Real>& x) {
    return a_norm_vec(f, x) <= f.rank_tol() * (Real(1) + x.norm() * std::sqrt(f.a_norm()));
}

} // namespace anr
