#include <numbers>

#include "anr/blocks.hpp"
#include "support.hpp"

using namespace anr;
using namespace anr::test;

TEST(Assemble, Patterns) {
    Rng rng(61);
    const CMat z = CMat::Zero(3, 3), x = rng.gaussian(3, 3), y = rng.gaussian(3, 3);
    EXPECT_MAT_NEAR(assemble(eye(3), z, z, eye(3)).assembled, eye(6), 0);
    const auto anti = assemble(z, x, y, z);
    EXPECT_EQ(anti.assembled.topRightCorner(3, 3), x);
    EXPECT_EQ(anti.assembled.bottomLeftCorner(3, 3), y);
    EXPECT_EQ(anti.assembled.topLeftCorner(3, 3).norm(), 0.0);
    const auto sym = assemble(x, y, y, x);
    EXPECT_EQ(sym.assembled.bottomRightCorner(3, 3), x);
    EXPECT_EQ(sym.t21, y);
}

TEST(Assemble, DimensionMismatch) {
    try {
        assemble(eye(2), eye(2), eye(3), eye(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(BlockSharp, Residuals) {
    Rng rng(62);
    const CMat z = CMat::Zero(2, 2);
    EXPECT_LE(b_sharp_blockwise_check(new_frame(eye(2)), assemble(z, z, z, z)), 1e-15);
    const Frame id = new_frame(eye(2));
    EXPECT_LE(b_sharp_blockwise_check(id, assemble(CMat(rng.gaussian(2, 2)), CMat(rng.gaussian(2, 2)),
                                                   CMat(rng.gaussian(2, 2)), CMat(rng.gaussian(2, 2)))),
              1e-14);
    const Frame d = new_frame(diag({4, 1}));
    EXPECT_LE(b_sharp_blockwise_check(d, assemble(CMat(rng.gaussian(2, 2)), CMat(rng.gaussian(2, 2)),
                                                  CMat(rng.gaussian(2, 2)), CMat(rng.gaussian(2, 2)))),
              1e-10);
    for (int trial = 0; trial < 200; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        const auto t = assemble(compatible(f, rng), compatible(f, rng), compatible(f, rng), compatible(f, rng));
        EXPECT_LE(b_sharp_blockwise_check(f, t), 1e-9 * (1 + t.assembled.norm()));
    }
}

TEST(BlockGauge, DiagExample) {
    const Frame id = new_frame(eye(2));
    const auto r = block_gauge(id, BlockPattern::diag, real_matrix({{0, 2}, {0, 0}}), eye(2));
    EXPECT_NEAR(r.wB, 1.0, 1e-12);
    EXPECT_NEAR(r.identity_rhs, 1.0, 1e-12);
    EXPECT_TRUE(r.within_hypothesis);
}

TEST(BlockGauge, SymmetricWithZeroX) {
    Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame f = random_frame(rng, 1, 4, true);
        const CMat y = compatible(f, rng);
        const auto r = block_gauge(f, BlockPattern::symmetric, CMat(CMat::Zero(f.dim(), f.dim())), y);
        EXPECT_NEAR(r.wB, a_numerical_radius(f, y), 1e-7);
    }
}

TEST(BlockGauge, PhaseZeroIsAntidiag) {
    Rng rng(64);
    const Frame f = sized_frame(rng, 3, 3);
    const CMat x = compatible(f, rng), y = compatible(f, rng);
    const auto p = block_gauge(f, BlockPattern::antidiag_phase, x, y, 0.0);
    EXPECT_EQ(p.wB, p.identity_rhs);
    EXPECT_EQ(p.wB, antidiag_radius(f, x, y));
}

TEST(BlockGauge, StrictPositivityGate) {
    const Frame sing = new_frame(diag({0, 1}));
    const CMat x = diag({1, 2}), y = diag({3, 4});
    for (auto p : {BlockPattern::antidiag, BlockPattern::antidiag_phase, BlockPattern::symmetric}) {
        try {
            block_gauge(sing, p, x, y);
            FAIL() << to_string(p);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::RequiresStrictPositivity);
        }
        const auto r = block_gauge(sing, p, x, y, 0.3, {}, true);
        EXPECT_FALSE(r.within_hypothesis);
    }
    EXPECT_TRUE(block_gauge(sing, BlockPattern::diag, x, y).within_hypothesis);
    EXPECT_THROW(block_gauge(sing, BlockPattern::diag, real_matrix({{0, 1}, {1, 0}}), y), Error);
}

TEST(BlockGauge, IdentitiesOnRandomInstances) {
    Rng rng(65);
    for (int trial = 0; trial < 100; ++trial) {
        const Frame f = random_frame(rng, 1, 4, trial % 2 == 0);
        const CMat x = compatible(f, rng), y = compatible(f, rng);
        const auto d = block_gauge(f, BlockPattern::diag, x, y);
        EXPECT_NEAR(d.wB, d.identity_rhs, 1e-7);
        if (!f.strictly_positive()) continue;
        const double theta = rng.uniform(0, 2 * std::numbers::pi);
        for (auto p : {BlockPattern::antidiag, BlockPattern::antidiag_phase, BlockPattern::symmetric}) {
            const auto r = block_gauge(f, p, x, y, theta);
            EXPECT_NEAR(r.wB, r.identity_rhs, 1e-7) << to_string(p);
        }
    }
}

TEST(BlockGauge, SwapConjugationInvariance) {
    Rng rng(66);
    for (int trial = 0; trial < 50; ++trial) {
        const Frame f = random_frame(rng, 1, 4);
        const Frame b = direct_sum(f);
        const auto n = f.dim();
        CMat u = CMat::Zero(2 * n, 2 * n);
        u.topRightCorner(n, n) = eye(n);
        u.bottomLeftCorner(n, n) = eye(n);
        const CMat t = assemble(compatible(f, rng), compatible(f, rng), compatible(f, rng), compatible(f, rng)).assembled;
        EXPECT_NEAR(a_numerical_radius(b, CMat(sharp(b, u) * t * u)), a_numerical_radius(b, t), 1e-7);
    }
}
