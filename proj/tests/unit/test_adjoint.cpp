#include "support.hpp"

using namespace anr;
using namespace anr::test;

namespace {
const std::complex<double> I(0, 1);
}

TEST(Douglas, NoAdjointExample) {
    const Frame f = new_frame(real_matrix({{0, 0}, {0, 1}}));
    EXPECT_FALSE(admits_a_adjoint(f, real_matrix({{0, 1}, {1, 0}})));
    EXPECT_TRUE(admits_a_adjoint(f, diag({5, 7})));
    EXPECT_EQ(douglas_residual(f, diag({5, 7})), 0.0);
}

TEST(Douglas, StrictlyPositiveAdmitsEverything) {
    Rng rng(31);
    const Frame f = sized_frame(rng, 4, 4);
    for (int k = 0; k < 20; ++k) EXPECT_TRUE(admits_a_adjoint(f, rng.gaussian(4, 4)));
}

TEST(Douglas, DimensionMismatch) {
    const Frame f = new_frame(eye(2));
    try {
        admits_a_adjoint(f, eye(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Douglas, EquivalentToNullSpaceInvariance) {
    Rng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = int(rng.integer(2, 6));
        const Frame f = sized_frame(rng, n, int(rng.integer(1, n - 1)));
        const CMat t = trial % 2 ? compatible(f, rng) : CMat(rng.gaussian(n, n));
        const CMat image = t * f.nullU();
        bool invariant = true;
        for (Eigen::Index k = 0; k < image.cols(); ++k) invariant &= in_null_space(f, CVec(image.col(k) / (1 + image.col(k).norm())));
        EXPECT_EQ(admits_a_adjoint(f, t), invariant) << "trial " << trial;
        EXPECT_EQ(admits_a_adjoint(f, t), trial % 2 == 1);
    }
}

TEST(Sharp, Examples) {
    Rng rng(33);
    const CMat t = rng.gaussian(3, 3);
    EXPECT_MAT_NEAR(sharp(new_frame(eye(3)), t), t.adjoint(), 1e-14);
    const CMat n = real_matrix({{0, 1}, {0, 0}});
    EXPECT_MAT_NEAR(sharp(new_frame(diag({1, 2})), n), real_matrix({{0, 0}, {0.5, 0}}), 1e-14);
    EXPECT_MAT_NEAR(sharp(new_frame(diag({4, 1})), n), real_matrix({{0, 0}, {4, 0}}), 1e-14);
}

TEST(Sharp, ThrowsWithoutAdjoint) {
    const Frame f = new_frame(real_matrix({{0, 0}, {0, 1}}));
    try {
        sharp(f, real_matrix({{0, 1}, {1, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoAdjoint);
    }
    EXPECT_THROW(re_a(f, real_matrix({{0, 1}, {1, 0}})), Error);
    EXPECT_THROW(reduced(f, real_matrix({{0, 1}, {1, 0}})), Error);
}

TEST(ReIm, Examples) {
    const Frame id = new_frame(eye(2));
    const CMat h = real_matrix({{1, 2}, {2, -1}});
    EXPECT_MAT_NEAR(re_a(id, h), h, 1e-15);
    EXPECT_MAT_NEAR(im_a(id, h), CMat(CMat::Zero(2, 2)), 1e-15);
    EXPECT_MAT_NEAR(re_a(id, CMat(I * eye(2))), CMat(CMat::Zero(2, 2)), 1e-15);
    EXPECT_MAT_NEAR(im_a(id, CMat(I * eye(2))), eye(2), 1e-15);
    EXPECT_MAT_NEAR(re_a(new_frame(diag({4, 1})), real_matrix({{0, 1}, {0, 0}})), real_matrix({{0, 0.5}, {2, 0}}),
                    1e-14);
}

TEST(ReIm, RecombineAndAreSelfadjoint) {
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const Frame f = random_frame(rng);
        const CMat t = compatible(f, rng);
        const CMat re = re_a(f, t), im = im_a(f, t);
        EXPECT_LE(rel(re + I * im - t, t), 1e-12);
        EXPECT_TRUE(is_a_selfadjoint(f, re));
        EXPECT_TRUE(is_a_selfadjoint(f, im));
    }
}

TEST(Predicates, Examples) {
    Rng rng(35);
    for (int trial = 0; trial < 50; ++trial) {
        const Frame f = random_frame(rng);
        const CMat t = compatible(f, rng);
        EXPECT_TRUE(is_a_positive(f, CMat(sharp(f, t) * t)));
        EXPECT_TRUE(is_a_positive(f, CMat(t * sharp(f, t))));
        EXPECT_TRUE(is_a_selfadjoint(f, eye(f.dim())));
        EXPECT_TRUE(is_a_positive(f, eye(f.dim())));
    }
    const Frame id = new_frame(eye(2));
    EXPECT_FALSE(is_a_selfadjoint(id, real_matrix({{0, 1}, {0, 0}})));
    EXPECT_FALSE(is_a_positive(id, real_matrix({{0, 1}, {0, 0}})));
    EXPECT_FALSE(is_a_positive(id, diag({1, -1})));
}

TEST(Unitary, Examples) {
    Rng rng(36);
    const Frame id = new_frame(eye(4));
    EXPECT_TRUE(is_a_unitary(id, random_unitary(rng, 4)));
    EXPECT_FALSE(is_a_unitary(id, CMat(2.0 * eye(4))));

    for (int trial = 0; trial < 20; ++trial) {
        const Frame f = random_frame(rng, 1, 4);
        const Frame b = direct_sum(f);
        const auto n = f.dim();
        CMat swap = CMat::Zero(2 * n, 2 * n);
        swap.topRightCorner(n, n) = eye(n);
        swap.bottomLeftCorner(n, n) = eye(n);
        EXPECT_TRUE(is_a_unitary(b, swap));
    }
}

TEST(Reduced, Examples) {
    Rng rng(37);
    const CMat t = rng.gaussian(3, 3);
    EXPECT_MAT_NEAR(reduced(new_frame(eye(3)), t).mat, t, 1e-13);
    const Frame d = new_frame(diag({4, 1}));
    EXPECT_MAT_NEAR(d.rangeU() * reduced(d, real_matrix({{0, 1}, {0, 0}})).mat * d.rangeU().adjoint(),
                    real_matrix({{0, 2}, {0, 0}}), 1e-14);
    const auto r = reduced(new_frame(diag({0, 1})), diag({5, 7}));
    ASSERT_EQ(r.mat.rows(), 1);
    EXPECT_NEAR(std::abs(r.mat(0, 0) - 7.0), 0, 1e-14);
    EXPECT_EQ(r.source_dim, 2);
}

TEST(Reduced, StrictlyPositiveIsSimilarity) {
    Rng rng(38);
    for (int trial = 0; trial < 50; ++trial) {
        const Frame f = random_frame(rng, 2, 5, true);
        const CMat t = rng.gaussian(f.dim(), f.dim());
        const CMat sim = f.sqrtA() * t * f.pinv_sqrtA();
        const CMat red = f.rangeU() * reduced(f, t).mat * f.rangeU().adjoint();
        EXPECT_LE(rel(red - sim, sim), 1e-10);
    }
}

TEST(AdjointCalculus, Properties) {
    Rng rng(39);
    for (int trial = 0; trial < 300; ++trial) {
        const Frame f = random_frame(rng, 1, 6);
        const CMat t = compatible(f, rng), s = compatible(f, rng);
        const CMat ts = sharp(f, t);
        const double cond = 1 + f.A().norm() * f.pinvA().norm();

        // A T# = T* A
        EXPECT_LE(rel(f.A() * ts - t.adjoint() * f.A(), CMat(t.adjoint() * f.A())), 1e-10 * cond);
        // (T#)# = P_A T P_A
        const CMat pt = f.projector() * t * f.projector();
        EXPECT_LE(rel(sharp(f, ts) - pt, pt), 1e-10 * cond);
        EXPECT_LE(rel(reduced(f, ts).mat - reduced(f, t).mat.adjoint(), reduced(f, t).mat), 1e-10 * cond);
        EXPECT_LE(rel(reduced(f, CMat(sharp(f, ts))).mat - reduced(f, t).mat, reduced(f, t).mat), 1e-10 * cond);
        // reduced(ST) = reduced(S) reduced(T)
        const CMat prod_red = reduced(f, s).mat * reduced(f, t).mat;
        EXPECT_LE(rel(reduced(f, CMat(s * t)).mat - prod_red, prod_red), 1e-10 * cond);
        // (TS)# = S# T#
        const CMat prod_sharp = sharp(f, s) * ts;
        EXPECT_LE(rel(sharp(f, CMat(t * s)) - prod_sharp, prod_sharp), 1e-10 * cond);

        // <Tx, y>_A = <x, T# y>_A
        const CVec x = rng.gaussian_vector(f.dim()), y = rng.gaussian_vector(f.dim());
        const auto lhs = a_inner(f, CVec(t * x), y), rhs = a_inner(f, x, CVec(ts * y));
        EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1 + std::abs(lhs)) * cond * (1 + t.norm()));

        // lift inverts reduced on P_A T P_A
        EXPECT_LE(rel(lift(f, reduced(f, t)) - pt, pt), 1e-10 * cond);
    }
}
