#pragma once

// Classical and A-weighted gauges. The classical ones are computed by sweeping
// the rotation angle theta over [0, 2pi) and optimizing a spectral function of
// Re(e^{i theta} M) = (e^{i theta} M + e^{-i theta} M*) / 2:
//
//   w(M) = max_theta lambda_max(Re(e^{i theta} M))
//   c(M) = max(0, -min_theta lambda_max(Re(e^{i theta} M)))   (support function)
//   C(M) = min_theta sigma_min(Re(e^{i theta} M))
//
// The A-gauges apply the classical ones to the reduced operator.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "anr/adjoint.hpp"

namespace anr {

struct SweepConfig {
    int grid_points = 1024;
    double refine_tol = 1e-12;
    int refine_max_iter = 200;

    void validate() const {
        if (grid_points < 16) throw Error(ErrorCode::InvalidInput, "grid_points must be >= 16");
        if (!(refine_tol > 0)) throw Error(ErrorCode::InvalidInput, "refine_tol must be > 0");
        if (refine_max_iter < 1) throw Error(ErrorCode::InvalidInput, "refine_max_iter must be >= 1");
    }
};

namespace detail {

/// Evaluates spectral functions of Re(e^{i theta} M) with a reusable solver.
template <typename Real>
class RotatedRealPart {
public:
    explicit RotatedRealPart(const CMatrix<Real>& m) : m_(m), h_(m.rows(), m.cols()), solver_(m.rows()) {}

    const RVector<Real>& eigenvalues(Real theta) {
        const std::complex<Real> phase(std::cos(theta), std::sin(theta));
        h_.noalias() = phase * m_;
        h_ = (h_ + h_.adjoint().eval()) / Real(2);
        solver_.compute(h_, Eigen::EigenvaluesOnly);
        if (solver_.info() != Eigen::Success)
            throw Error(ErrorCode::NoConvergence, "eigensolver failed inside the theta sweep");
        return solver_.eigenvalues();
    }

    Real lambda_max(Real theta) {
        const auto& ev = eigenvalues(theta);
        return ev(ev.size() - 1);
    }

    Real sigma_min(Real theta) {
        const auto& ev = eigenvalues(theta);
        return ev.cwiseAbs().minCoeff();
    }

private:
    const CMatrix<Real>& m_;
    CMatrix<Real> h_;
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver_;
};

/// Golden-section search for a maximum of f on [lo, hi].
template <typename Real, typename F>
Real golden_max(F& f, Real lo, Real hi, const SweepConfig& cfg) {
    const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
    Real a = lo, b = hi;
    Real x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    Real f1 = f(x1), f2 = f(x2);
    Real best = std::max(f1, f2);
    for (int it = 0; it < cfg.refine_max_iter && (b - a) > Real(cfg.refine_tol); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            best = std::max(best, f2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            best = std::max(best, f1);
        }
    }
    return best;
}

/// Global maximum of a 2pi-periodic function: uniform grid, then golden-section
/// refinement of every local grid maximum that could still beat the best grid
/// value given the Lipschitz bound `lipschitz`.
template <typename Real, typename F>
Real periodic_max(F&& f, Real lipschitz, const SweepConfig& cfg) {
    cfg.validate();
    const int n = cfg.grid_points;
    const Real step = Real(2) * std::numbers::pi_v<Real> / Real(n);
    std::vector<Real> v(n);
    for (int k = 0; k < n; ++k) v[k] = f(step * Real(k));
    Real best = *std::max_element(v.begin(), v.end());
    const Real margin = Real(2) * lipschitz * step;
    for (int k = 0; k < n; ++k) {
        const Real prev = v[(k + n - 1) % n], next = v[(k + 1) % n];
        if (!(v[k] > prev && v[k] >= next)) continue;
        if (v[k] < best - margin) continue;
        const Real center = step * Real(k);
        best = std::max(best, golden_max(f, center - step, center + step, cfg));
    }
    return best;
}

template <typename Real, typename F>
Real periodic_min(F&& f, Real lipschitz, const SweepConfig& cfg) {
    auto neg = [&f](Real t) { return -f(t); };
    return -periodic_max(neg, lipschitz, cfg);
}

} // namespace detail

/// Classical numerical radius max_{|x|=1} |<Mx, x>|.
template <typename Real>
Real numerical_radius(const CMatrix<Real>& m, const SweepConfig& cfg = {}) {
    require_square(m, "numerical_radius input");
    if (m.size() == 0) return Real(0);
    detail::RotatedRealPart<Real> rot(m);
    const Real w = detail::periodic_max([&rot](Real t) { return rot.lambda_max(t); }, m.norm(), cfg);
    return std::max(w, Real(0));
}

/// Classical Crawford number: distance from 0 to the numerical range of M.
template <typename Real>
Real crawford(const CMatrix<Real>& m, const SweepConfig& cfg = {}) {
    require_square(m, "crawford input");
    if (m.size() == 0) return Real(0);
    detail::RotatedRealPart<Real> rot(m);
    const Real lowest = detail::periodic_min([&rot](Real t) { return rot.lambda_max(t); }, m.norm(), cfg);
    return std::max(Real(0), -lowest);
}

/// min over phi of the smallest singular value of Re(e^{i phi} M).
template <typename Real>
Real crawford_C(const CMatrix<Real>& m, const SweepConfig& cfg = {}) {
    require_square(m, "crawford_C input");
    if (m.size() == 0) return Real(0);
    detail::RotatedRealPart<Real> rot(m);
    return detail::periodic_min([&rot](Real t) { return rot.sigma_min(t); }, m.norm(), cfg);
}

namespace detail {
template <typename Real>
ReducedOp<Real> reduced_nonempty(const AFrame<Real>& f, const CMatrix<Real>& t) {
    if (f.rank() == 0) throw Error(ErrorCode::EmptyRange, "rank(A) = 0, A-gauges are undefined");
    return reduced(f, t);
}
} // namespace detail

template <typename Real>
Real a_seminorm(const AFrame<Real>& f, const CMatrix<Real>& t) {
    return spectral_norm(detail::reduced_nonempty(f, t).mat);
}

template <typename Real>
Real a_min_modulus(const AFrame<Real>& f, const CMatrix<Real>& t) {
    return min_singular_value(detail::reduced_nonempty(f, t).mat);
}

template <typename Real>
Real a_numerical_radius(const AFrame<Real>& f, const CMatrix<Real>& t, const SweepConfig& cfg = {}) {
    return numerical_radius(detail::reduced_nonempty(f, t).mat, cfg);
}

template <typename Real>
Real a_crawford(const AFrame<Real>& f, const CMatrix<Real>& t, const SweepConfig& cfg = {}) {
    return crawford(detail::reduced_nonempty(f, t).mat, cfg);
}

template <typename Real>
Real a_crawford_C(const AFrame<Real>& f, const CMatrix<Real>& t, const SweepConfig& cfg = {}) {
    return crawford_C(detail::reduced_nonempty(f, t).mat, cfg);
}

/// PSD power of a Hermitian matrix by functional calculus; negative dust is clamped.
template <typename Real>
CMatrix<Real> psd_power(const CMatrix<Real>& h, Real r) {
    const auto dec = herm_eig(h);
    RVector<Real> p(dec.eigenvalues.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = std::pow(std::max(dec.eigenvalues(k), Real(0)), r);
    return dec.eigenvectors * p.asDiagonal() * dec.eigenvectors.adjoint();
}

/// Reduced operator of S^r for an A-positive S and r >= 1. Non-integer r is only
/// supported on a strictly positive frame.
template <typename Real>
ReducedOp<Real> a_positive_power(const AFrame<Real>& f, const CMatrix<Real>& s, Real r,
                                 Real tol = Real(kDefaultTol)) {
    if (!(r >= Real(1))) throw Error(ErrorCode::UnsupportedExponent, "exponent must be >= 1");
    if (r != std::floor(r) && !f.strictly_positive())
        throw Error(ErrorCode::UnsupportedExponent, "non-integer exponent requires a strictly positive A");
    if (!is_a_positive(f, s, tol)) throw Error(ErrorCode::NotAPositive, "operator is not A-positive");
    const auto red = reduced(f, s);
    return {psd_power(CMatrix<Real>(hermitian_part(red.mat)), r), red.source_dim};
}

} // namespace anr
