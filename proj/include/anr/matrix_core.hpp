#pragma once

// Dense complex matrix layer: aliases over Eigen plus the spectral primitives
// (Hermitian eigendecomposition, SVD, pseudoinverse, PSD square root, range
// basis) that the rest of the library is written against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "anr/error.hpp"

namespace anr {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMat = CMatrix<double>;
using CVec = CVector<double>;
using RVec = RVector<double>;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kDefaultTol = 1e-9;

template <typename Real>
struct EigDecomp {
    RVector<Real> eigenvalues;   // ascending
    CMatrix<Real> eigenvectors;  // orthonormal columns
};

template <typename Real>
struct SvdResult {
    CMatrix<Real> U;
    RVector<Real> singular_values;  // nonnegative, descending
    CMatrix<Real> V;
};

template <typename Real>
struct RangeBasis {
    CMatrix<Real> U;  // n x r, orthonormal columns
    Eigen::Index rank = 0;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const auto& z = m(i, j);
            if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
        }
    return true;
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (!all_finite(m)) throw Error(ErrorCode::InvalidInput, std::string(what) + " has non-finite entries");
}

/// (M + M*) / 2. Exactly Hermitian in floating point.
template <typename Real>
CMatrix<Real> hermitian_part(const CMatrix<Real>& m) {
    return (m + m.adjoint()) / Real(2);
}

template <typename Real>
CMatrix<Real> identity(Eigen::Index n) {
    return CMatrix<Real>::Identity(n, n);
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
template <typename Real>
EigDecomp<Real> herm_eig(const CMatrix<Real>& h, Real tol = Real(kDefaultTol)) {
    require_square(h, "herm_eig input");
    const Real scale = h.norm();
    if ((h - h.adjoint()).norm() > tol * (Real(1) + scale))
        throw Error(ErrorCode::NotHermitian, "matrix fails the Hermitian symmetry check");
    if (h.rows() == 0) return {RVector<Real>(0), CMatrix<Real>(0, 0)};
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(hermitian_part(h));
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Full SVD, M = U diag(s) V*.
template <typename Real>
SvdResult<Real> svd(const CMatrix<Real>& m) {
    if (m.size() == 0)
        return {CMatrix<Real>::Identity(m.rows(), m.rows()), RVector<Real>(0),
                CMatrix<Real>::Identity(m.cols(), m.cols())};
    Eigen::JacobiSVD<CMatrix<Real>> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NoConvergence, "SVD did not converge");
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

template <typename Real>
Real spectral_norm(const CMatrix<Real>& m) {
    if (m.size() == 0) return Real(0);
    return svd(m).singular_values(0);
}

/// Smallest singular value of a square matrix (0 for the empty matrix).
template <typename Real>
Real min_singular_value(const CMatrix<Real>& m) {
    if (m.size() == 0) return Real(0);
    const auto s = svd(m).singular_values;
    return s(s.size() - 1);
}

/// Moore-Penrose pseudoinverse; singular values <= rel_rank_tol * sigma_max are dropped.
template <typename Real>
CMatrix<Real> pinv(const CMatrix<Real>& m, Real rel_rank_tol = Real(kDefaultRankTol)) {
    CMatrix<Real> out = CMatrix<Real>::Zero(m.cols(), m.rows());
    if (m.size() == 0) return out;
    const auto dec = svd(m);
    const Real cutoff = rel_rank_tol * dec.singular_values(0);
    for (Eigen::Index k = 0; k < dec.singular_values.size(); ++k) {
        const Real s = dec.singular_values(k);
        if (s <= cutoff || s == Real(0)) break;
        out += (dec.V.col(k) / s) * dec.U.col(k).adjoint();
    }
    return out;
}

/// Hermitian PSD square root. Eigenvalues at or below rel_rank_tol * lambda_max are
/// clamped to zero; anything below -rel_rank_tol * ||A|| raises NotPSD.
template <typename Real>
CMatrix<Real> psd_sqrt(const CMatrix<Real>& a, Real rel_rank_tol = Real(kDefaultRankTol)) {
    const auto dec = herm_eig(a);
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    const Real norm = std::max(std::abs(dec.eigenvalues(0)), std::abs(dec.eigenvalues(n - 1)));
    if (dec.eigenvalues(0) < -rel_rank_tol * norm)
        throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(double(dec.eigenvalues(0))) +
                                           " is below the PSD tolerance");
    RVector<Real> root(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Real lam = dec.eigenvalues(k);
        root(k) = lam > rel_rank_tol * norm ? std::sqrt(lam) : Real(0);
    }
    return dec.eigenvectors * root.asDiagonal() * dec.eigenvectors.adjoint();
}

/// Orthonormal basis of the numerical range of a Hermitian PSD matrix.
template <typename Real>
RangeBasis<Real> range_basis(const CMatrix<Real>& a, Real rel_rank_tol = Real(kDefaultRankTol)) {
    const auto dec = herm_eig(a);
    const Eigen::Index n = a.rows();
    RangeBasis<Real> out{CMatrix<Real>(n, 0), 0};
    if (n == 0) return out;
    const Real lmax = dec.eigenvalues(n - 1);
    if (!(lmax > Real(0))) return out;
    Eigen::Index first = n;
    while (first > 0 && dec.eigenvalues(first - 1) > rel_rank_tol * lmax) --first;
    out.rank = n - first;
    out.U = dec.eigenvectors.rightCols(out.rank);
    return out;
}

} // namespace anr
