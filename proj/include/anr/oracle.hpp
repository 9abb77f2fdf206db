#pragma once

// Direct-definition estimates of the A-gauges. Nothing here goes through the
// reduced operator or the theta sweep: vectors live in the full space, are
// normalized in the A-seminorm computed from A itself, and the objective is
// optimized by random restarts plus a derivative-free hill climb. The result
// is an attained value, so it lower-bounds sup-type gauges and upper-bounds
// inf-type gauges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "anr/adjoint.hpp"
#include "anr/rng.hpp"

namespace anr {

enum class GaugeKind { w, c, norm, minmod, C };

struct OracleConfig {
    int restart_rounds = 60;   // perturbation rounds per random start
    double initial_step = 0.3;
    double step_decay = 0.9;
    int polish_starts = 32;    // best starts that get polished
    int polish_rounds = 4000;  // adaptive hill climb per polished start
    double polish_min_step = 1e-9;
};

namespace detail {

template <typename Real>
class DirectObjective {
public:
    DirectObjective(const AFrame<Real>& f, const CMatrix<Real>& t, GaugeKind kind) : f_(f), t_(t), kind_(kind) {
        if (kind == GaugeKind::C) t_sharp_ = sharp(f, t);
    }

    bool maximize() const { return kind_ == GaugeKind::w || kind_ == GaugeKind::norm; }

    Real a_norm_sq(const CVector<Real>& x) const { return std::max(Real(0), std::real(x.dot(f_.A() * x))); }

    /// Objective at x, which is assumed to satisfy ||x||_A = 1.
    Real operator()(const CVector<Real>& x) const {
        switch (kind_) {
            case GaugeKind::w:
            case GaugeKind::c: return std::abs(x.dot(f_.A() * (t_ * x)));
            case GaugeKind::norm:
            case GaugeKind::minmod: return std::sqrt(a_norm_sq(t_ * x));
            case GaugeKind::C: {
                // min over phi of ||(e^{i phi} a + e^{-i phi} b) / 2||_A^2
                //   = (||a||_A^2 + ||b||_A^2 - 2 |<a, b>_A|) / 4
                const CVector<Real> a = t_ * x, b = t_sharp_ * x;
                const Real cross = std::abs(b.dot(f_.A() * a));
                return std::sqrt(std::max(Real(0), (a_norm_sq(a) + a_norm_sq(b) - Real(2) * cross) / Real(4)));
            }
        }
        return Real(0);
    }

private:
    const AFrame<Real>& f_;
    const CMatrix<Real>& t_;
    CMatrix<Real> t_sharp_;
    GaugeKind kind_;
};

} // namespace detail

template <typename Real>
Real oracle_gauge(const AFrame<Real>& f, const CMatrix<Real>& t, GaugeKind kind, int samples, std::uint64_t seed,
                  const OracleConfig& cfg = {}) {
    if (samples < 1) throw Error(ErrorCode::InvalidInput, "oracle needs at least one sample");
    if (f.rank() == 0) throw Error(ErrorCode::EmptyRange, "rank(A) = 0, A-gauges are undefined");
    detail::require_adjoint(f, t);

    const detail::DirectObjective<Real> objective(f, t, kind);
    const bool maximize = objective.maximize();
    auto better = [maximize](Real a, Real b) { return maximize ? a > b : a < b; };

    Rng rng(seed);
    const Eigen::Index n = f.dim();
    // Random direction in R(A) with unit A-seminorm.
    auto direction = [&]() {
        for (;;) {
            CVector<Real> d = f.projector() * rng.gaussian_vector<Real>(n);
            const Real s = std::sqrt(objective.a_norm_sq(d));
            if (s > Real(1e-8) * (Real(1) + d.norm())) return CVector<Real>(d / s);
        }
    };
    auto normalize = [&](CVector<Real> x) { return CVector<Real>(x / std::sqrt(objective.a_norm_sq(x))); };

    std::vector<std::pair<Real, CVector<Real>>> starts;
    starts.reserve(std::size_t(samples));
    for (int s = 0; s < samples; ++s) {
        CVector<Real> x = direction();
        Real val = objective(x);
        Real step = Real(cfg.initial_step);
        for (int round = 0; round < cfg.restart_rounds; ++round) {
            CVector<Real> cand = normalize(x + step * direction());
            const Real cv = objective(cand);
            if (better(cv, val)) {
                x = std::move(cand);
                val = cv;
                step *= Real(1.5);
            } else {
                step *= Real(cfg.step_decay);
            }
        }
        starts.emplace_back(val, std::move(x));
    }
    const auto keep = std::min<std::size_t>(starts.size(), std::size_t(std::max(1, cfg.polish_starts)));
    std::partial_sort(starts.begin(), starts.begin() + std::ptrdiff_t(keep), starts.end(),
                      [&](const auto& a, const auto& b) { return better(a.first, b.first); });

    // Polish the leading starts with a success-adaptive step.
    Real best = starts.front().first;
    for (std::size_t k = 0; k < keep; ++k) {
        auto [val, x] = std::move(starts[k]);
        Real step = Real(cfg.initial_step) * Real(0.1);
        for (int round = 0; round < cfg.polish_rounds && step > Real(cfg.polish_min_step); ++round) {
            CVector<Real> cand = normalize(x + step * direction());
            const Real cv = objective(cand);
            if (better(cv, val)) {
                x = std::move(cand);
                val = cv;
                step *= Real(1.5);
            } else {
                step *= Real(0.93);
            }
        }
        if (better(val, best)) best = val;
    }
    return best;
}

} // namespace anr
