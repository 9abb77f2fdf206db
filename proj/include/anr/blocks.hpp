#pragma once

// 2x2 operator matrices over H + H measured in the doubled frame B = diag(A, A).

#include <algorithm>
#include <cmath>
#include <complex>
#include <string_view>

#include "anr/gauges.hpp"

namespace anr {

template <typename Real>
struct BlockOp {
    CMatrix<Real> t11, t12, t21, t22;
    CMatrix<Real> assembled;
};

template <typename Real>
BlockOp<Real> assemble(const CMatrix<Real>& t11, const CMatrix<Real>& t12, const CMatrix<Real>& t21,
                       const CMatrix<Real>& t22) {
    const Eigen::Index n = t11.rows();
    for (const auto* b : {&t11, &t12, &t21, &t22})
        if (b->rows() != n || b->cols() != n)
            throw Error(ErrorCode::DimensionMismatch, "all four blocks must be " + std::to_string(n) + "x" +
                                                          std::to_string(n));
    CMatrix<Real> m(2 * n, 2 * n);
    m << t11, t12, t21, t22;
    return {t11, t12, t21, t22, std::move(m)};
}

/// ||T^#B - (T_ji^#A)|| for the assembled operator, both sides computed independently.
template <typename Real>
Real b_sharp_blockwise_check(const AFrame<Real>& f, const BlockOp<Real>& t) {
    const auto b = direct_sum(f);
    const CMatrix<Real> whole = sharp(b, t.assembled);
    const auto blockwise = assemble(sharp(f, t.t11), sharp(f, t.t21), sharp(f, t.t12), sharp(f, t.t22));
    return (whole - blockwise.assembled).norm();
}

enum class BlockPattern { diag, antidiag, antidiag_phase, symmetric };

constexpr std::string_view to_string(BlockPattern p) {
    switch (p) {
        case BlockPattern::diag: return "diag";
        case BlockPattern::antidiag: return "antidiag";
        case BlockPattern::antidiag_phase: return "antidiag_phase";
        case BlockPattern::symmetric: return "symmetric";
    }
    return "?";
}

template <typename Real>
struct BlockGaugeResult {
    Real wB = 0;            // w_B of the assembled pattern
    Real identity_rhs = 0;  // closed form the identity predicts
    bool within_hypothesis = true;
};

/// w_B of [[0, X], [Y, 0]].
template <typename Real>
Real antidiag_radius(const AFrame<Real>& f, const CMatrix<Real>& x, const CMatrix<Real>& y, const SweepConfig& cfg = {}) {
    const CMatrix<Real> zero = CMatrix<Real>::Zero(x.rows(), x.cols());
    return a_numerical_radius(direct_sum(f), assemble(zero, x, y, zero).assembled, cfg);
}

/// Evaluates one block identity. Patterns other than `diag` need A > 0; with
/// `exploration` set they run on singular A too and are flagged outside the hypothesis.
template <typename Real>
BlockGaugeResult<Real> block_gauge(const AFrame<Real>& f, BlockPattern pattern, const CMatrix<Real>& x,
                                   const CMatrix<Real>& y, Real theta = Real(0), const SweepConfig& cfg = {},
                                   bool exploration = false) {
    detail::require_adjoint(f, x);
    detail::require_adjoint(f, y);
    BlockGaugeResult<Real> out;
    if (pattern != BlockPattern::diag && !f.strictly_positive()) {
        if (!exploration)
            throw Error(ErrorCode::RequiresStrictPositivity,
                        std::string("pattern ") + std::string(to_string(pattern)) + " requires A > 0");
        out.within_hypothesis = false;
    }
    const auto b = direct_sum(f);
    const CMatrix<Real> zero = CMatrix<Real>::Zero(x.rows(), x.cols());
    auto wb = [&](const CMatrix<Real>& t11, const CMatrix<Real>& t12, const CMatrix<Real>& t21,
                  const CMatrix<Real>& t22) { return a_numerical_radius(b, assemble(t11, t12, t21, t22).assembled, cfg); };

    switch (pattern) {
        case BlockPattern::diag:
            out.wB = wb(x, zero, zero, y);
            out.identity_rhs = std::max(a_numerical_radius(f, x, cfg), a_numerical_radius(f, y, cfg));
            break;
        case BlockPattern::antidiag:
            out.wB = wb(zero, x, y, zero);
            out.identity_rhs = wb(zero, y, x, zero);
            break;
        case BlockPattern::antidiag_phase: {
            const std::complex<Real> phase(std::cos(theta), std::sin(theta));
            out.wB = wb(zero, x, CMatrix<Real>(phase * y), zero);
            out.identity_rhs = wb(zero, x, y, zero);
            break;
        }
        case BlockPattern::symmetric:
            out.wB = wb(x, y, y, x);
            out.identity_rhs =
                std::max(a_numerical_radius(f, CMatrix<Real>(x + y), cfg), a_numerical_radius(f, CMatrix<Real>(x - y), cfg));
            break;
    }
    return out;
}

} // namespace anr
