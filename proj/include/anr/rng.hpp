#pragma once

// Platform-independent seeded randomness. std::mt19937_64 is fully specified
// by the standard; the distributions below are written out so that the same
// seed yields the same matrices on every standard library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "anr/matrix_core.hpp"

namespace anr {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of trial `index` under `master`: mix64(master ^ mix64(index)).
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = std::uint64_t(hi - lo) + 1;
        return lo + std::int64_t(engine_() % span);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

    template <typename Real = double>
    CMatrix<Real> gaussian(Eigen::Index rows, Eigen::Index cols) {
        CMatrix<Real> m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) {
                const auto z = complex_normal();
                m(i, j) = std::complex<Real>(Real(z.real()), Real(z.imag()));
            }
        return m;
    }

    template <typename Real = double>
    CVector<Real> gaussian_vector(Eigen::Index n) {
        return gaussian<Real>(n, 1);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-ish random unitary: Q factor of a complex Gaussian matrix with the
/// phases of R's diagonal folded back in.
template <typename Real = double>
CMatrix<Real> random_unitary(Rng& rng, Eigen::Index n) {
    const CMatrix<Real> g = rng.gaussian<Real>(n, n);
    Eigen::HouseholderQR<CMatrix<Real>> qr(g);
    CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
    const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto d = r(k, k);
        if (std::abs(d) > Real(0)) q.col(k) *= d / std::abs(d);
    }
    return q;
}

} // namespace anr
