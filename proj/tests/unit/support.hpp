#pragma once

#include <initializer_list>

#include <gtest/gtest.h>

#include "anr/harness.hpp"
#include "anr/rng.hpp"

namespace anr::test {

inline CMat real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    CMat m(Eigen::Index(rows.size()), Eigen::Index(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline CMat diag(std::initializer_list<double> d) {
    CMat m = CMat::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
    Eigen::Index k = 0;
    for (double v : d) m(k, k) = v, ++k;
    return m;
}

inline CMat eye(Eigen::Index n) { return CMat::Identity(n, n); }

/// Random frame of size n and rank r drawn from `rng`.
inline Frame sized_frame(Rng& rng, int n, int r) { return new_frame(gen_psd(n, r, rng.next())); }

/// Random (n, rank) with n in [lo, hi] and rank in [1, n].
inline Frame random_frame(Rng& rng, int lo = 2, int hi = 6, bool full = false) {
    const int n = int(rng.integer(lo, hi));
    return sized_frame(rng, n, full ? n : int(rng.integer(1, n)));
}

inline CMat compatible(const Frame& f, Rng& rng) { return gen_compatible(f, rng.next()); }

inline double rel(const CMat& diff, const CMat& scale) { return diff.norm() / (1.0 + scale.norm()); }

} // namespace anr::test

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_LE((CMat(a) - CMat(b)).norm(), (tol)) << "lhs:\n" << (a) << "\nrhs:\n" << (b)
