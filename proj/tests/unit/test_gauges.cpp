#include <cmath>
#include <numbers>

#include "anr/oracle.hpp"
#include "support.hpp"

using namespace anr;
using namespace anr::test;

namespace {
const double kSqrt5Half = 1.118033988749895;
const std::complex<double> I(0, 1);
}

TEST(SweepConfig, Validation) {
    SweepConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.grid_points = 8;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = {};
    cfg.refine_tol = 0;
    EXPECT_THROW(cfg.validate(), Error);
    EXPECT_THROW(numerical_radius(eye(2), cfg), Error);
}

TEST(NumericalRadius, Examples) {
    EXPECT_NEAR(numerical_radius(real_matrix({{0, 2}, {0, 0}})), 1.0, 1e-12);
    EXPECT_NEAR(numerical_radius(eye(4)), 1.0, 1e-12);
    EXPECT_NEAR(numerical_radius(real_matrix({{0, 1, 0}, {0, 0, 2}, {0, 0, 0}})), kSqrt5Half, 1e-12);
}

TEST(NumericalRadius, NormalMatrixIsSpectralRadius) {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = int(rng.integer(1, 6));
        CVec d(n);
        for (int k = 0; k < n; ++k) d(k) = rng.complex_normal();
        const CMat u = random_unitary(rng, n);
        const CMat m = u * d.asDiagonal() * u.adjoint();
        EXPECT_NEAR(numerical_radius(m), d.cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Crawford, Examples) {
    EXPECT_NEAR(crawford(eye(3)), 1.0, 1e-12);
    EXPECT_NEAR(crawford(diag({1, -1})), 0.0, 1e-12);
    EXPECT_NEAR(crawford(real_matrix({{0, 2}, {0, 0}})), 0.0, 1e-12);
}

TEST(Crawford, NormalDiagonalBoundedByEntries) {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = int(rng.integer(1, 5));
        CMat m = CMat::Zero(n, n);
        for (int k = 0; k < n; ++k) m(k, k) = rng.complex_normal();
        EXPECT_LE(crawford(m), m.diagonal().cwiseAbs().minCoeff() + 1e-9);
    }
    // Points on one ray: the nearest one is the distance.
    EXPECT_NEAR(crawford(CMat(std::polar(1.0, 0.7) * diag({2, 3, 5}))), 2.0, 1e-10);
}

TEST(CrawfordC, Examples) {
    EXPECT_NEAR(crawford_C(eye(3)), 0.0, 1e-12);
    EXPECT_NEAR(crawford_C(CMat(CMat::Zero(2, 2))), 0.0, 1e-15);
    EXPECT_NEAR(crawford_C(real_matrix({{0, 2}, {0, 0}})), 1.0, 1e-12);
}

TEST(CrawfordC, NilpotentValueMatchesBruteForce) {
    // Grid over phi and over unit vectors in C^2.
    const CMat m = real_matrix({{0, 2}, {0, 0}});
    double best = 1e9;
    for (int p = 0; p < 64; ++p) {
        const double phi = 2 * std::numbers::pi * p / 64;
        const CMat re = hermitian_part(CMat(std::polar(1.0, phi) * m));
        for (int a = 0; a <= 32; ++a)
            for (int b = 0; b < 32; ++b) {
                const double t = std::numbers::pi / 2 * a / 32, s = 2 * std::numbers::pi * b / 32;
                CVec x(2);
                x << std::cos(t), std::polar(std::sin(t), s);
                best = std::min(best, (re * x).norm());
            }
    }
    EXPECT_NEAR(best, 1.0, 1e-12);
}

TEST(ASeminorm, Examples) {
    Rng rng(43);
    const CMat t = rng.gaussian(3, 3);
    const Frame id = new_frame(eye(3));
    EXPECT_NEAR(a_seminorm(id, t), spectral_norm(t), 1e-12);
    EXPECT_NEAR(a_min_modulus(id, t), min_singular_value(t), 1e-12);
    const Frame d = new_frame(diag({4, 1}));
    EXPECT_NEAR(a_seminorm(d, real_matrix({{0, 1}, {0, 0}})), 2.0, 1e-13);
    EXPECT_NEAR(a_min_modulus(d, real_matrix({{0, 1}, {0, 0}})), 0.0, 1e-13);
    for (int trial = 0; trial < 10; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        EXPECT_NEAR(a_seminorm(f, eye(f.dim())), 1.0, 1e-10);
        EXPECT_NEAR(a_min_modulus(f, eye(f.dim())), 1.0, 1e-10);
    }
}

TEST(AGauges, Examples) {
    const Frame id = new_frame(eye(3));
    EXPECT_NEAR(a_numerical_radius(id, real_matrix({{0, 2, 0}, {0, 0, 0}, {0, 0, 1}})), 1.0, 1e-12);
    const Frame d = new_frame(diag({4, 1}));
    EXPECT_NEAR(a_numerical_radius(d, real_matrix({{0, 1}, {0, 0}})), 1.0, 1e-12);
    Rng rng(44);
    for (int trial = 0; trial < 10; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        EXPECT_NEAR(a_numerical_radius(f, eye(f.dim())), 1.0, 1e-10);
        EXPECT_NEAR(a_crawford(f, eye(f.dim())), 1.0, 1e-10);
    }
}

TEST(AGauges, Errors) {
    const Frame zero = new_frame(CMat(CMat::Zero(2, 2)));
    for (auto fn : {a_seminorm<double>, a_min_modulus<double>}) {
        try {
            fn(zero, eye(2));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::EmptyRange);
        }
    }
    EXPECT_THROW(a_numerical_radius(zero, eye(2)), Error);
    const Frame sing = new_frame(diag({0, 1}));
    try {
        a_numerical_radius(sing, real_matrix({{0, 1}, {1, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoAdjoint);
    }
}

TEST(AGauges, IdentityMetricIsClassical) {
    Rng rng(45);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = int(rng.integer(1, 6));
        const Frame f = new_frame(eye(n));
        const CMat t = rng.gaussian(n, n);
        EXPECT_NEAR(a_numerical_radius(f, t), numerical_radius(t), 1e-12);
        EXPECT_NEAR(a_crawford(f, t), crawford(t), 1e-12);
        EXPECT_NEAR(a_crawford_C(f, t), crawford_C(t), 1e-12);
        EXPECT_NEAR(a_seminorm(f, t), spectral_norm(t), 1e-12);
        EXPECT_NEAR(a_min_modulus(f, t), min_singular_value(t), 1e-12);
    }
}

TEST(AGauges, EquivalenceBoundsAndSelfadjointCase) {
    Rng rng(46);
    for (int trial = 0; trial < 300; ++trial) {
        const Frame f = random_frame(rng, 1, 6);
        const CMat t = compatible(f, rng);
        const double w = a_numerical_radius(f, t), nrm = a_seminorm(f, t);
        EXPECT_LE(0.5 * nrm, w + 1e-8 * (1 + w));
        EXPECT_LE(w, nrm + 1e-8 * (1 + nrm));
        EXPECT_LE(a_crawford(f, t), w + 1e-10);
        EXPECT_LE(a_min_modulus(f, t), nrm + 1e-10);
        const CMat h = re_a(f, t);
        EXPECT_NEAR(a_numerical_radius(f, h), a_seminorm(f, h), 1e-8 * (1 + a_seminorm(f, h)));
    }
}

TEST(AGauges, SupFormulaOverTheta) {
    Rng rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        const CMat t = compatible(f, rng);
        const double w = a_numerical_radius(f, t);
        double grid = 0;
        for (int k = 0; k < 64; ++k)
            grid = std::max(grid, a_seminorm(f, re_a(f, CMat(std::polar(1.0, 2 * std::numbers::pi * k / 64) * t))));
        EXPECT_LE(grid, w + 1e-8 * (1 + w));
        SweepConfig cfg;
        cfg.grid_points = 64;
        const double refined = detail::periodic_max(
            [&](double th) { return a_seminorm(f, re_a(f, CMat(std::polar(1.0, th) * t))); }, a_seminorm(f, t), cfg);
        EXPECT_NEAR(refined, w, 1e-6 * (1 + w));
    }
}

TEST(AGauges, SquareZeroIdentity) {
    Rng rng(48);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = int(rng.integer(1, 3));
        const Frame f = sized_frame(rng, 2 * k, 2 * k);
        CMat t = CMat::Zero(2 * k, 2 * k);
        t.topRightCorner(k, k) = rng.gaussian(k, k);
        ASSERT_EQ((t * t).norm(), 0.0);
        const CMat ts = sharp(f, t);
        const double w = a_numerical_radius(f, t);
        EXPECT_NEAR(w, 0.5 * std::sqrt(a_seminorm(f, CMat(t * ts + ts * t))), 1e-8);
    }
}

TEST(AGauges, PositivityMonotone) {
    Rng rng(49);
    for (int trial = 0; trial < 200; ++trial) {
        const Frame f = random_frame(rng, 1, 6);
        const CMat a = compatible(f, rng), b = compatible(f, rng);
        const CMat y = sharp(f, b) * b;
        const CMat x = y + sharp(f, a) * a;
        ASSERT_TRUE(is_a_positive(f, CMat(x - y)));
        EXPECT_GE(a_seminorm(f, x), a_seminorm(f, y) - 1e-8);
    }
}

TEST(PositivePower, Examples) {
    Rng rng(50);
    for (int trial = 0; trial < 5; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        for (double r : {1.0, 2.0, 3.0})
            EXPECT_MAT_NEAR(a_positive_power(f, eye(f.dim()), r).mat, eye(f.rank()), 1e-9);
    }
    const Frame id = new_frame(eye(2));
    EXPECT_MAT_NEAR(a_positive_power(id, diag({4, 9}), 2.0).mat, diag({16, 81}), 1e-11);
    EXPECT_MAT_NEAR(a_positive_power(id, diag({4, 9}), 1.5).mat, diag({8, 27}), 1e-11);
}

TEST(PositivePower, IntegerMatchesRepeatedProduct) {
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const Frame f = random_frame(rng, 1, 5);
        const CMat t = compatible(f, rng);
        const CMat s = sharp(f, t) * t;
        const CMat red = reduced(f, s).mat;
        EXPECT_LE(rel(a_positive_power(f, s, 3.0).mat - red * red * red, CMat(red * red * red)), 1e-9);
    }
}

TEST(PositivePower, Errors) {
    const Frame sing = new_frame(diag({0, 1}));
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidInput;
    };
    EXPECT_EQ(code([&] { a_positive_power(sing, eye(2), 1.5); }), ErrorCode::UnsupportedExponent);
    EXPECT_EQ(code([&] { a_positive_power(sing, eye(2), 0.5); }), ErrorCode::UnsupportedExponent);
    EXPECT_EQ(code([&] { a_positive_power(new_frame(eye(2)), diag({1, -1}), 2.0); }), ErrorCode::NotAPositive);
    EXPECT_NO_THROW(a_positive_power(sing, eye(2), 2.0));
}

TEST(Oracle, Examples) {
    const Frame id = new_frame(eye(2));
    const double w = oracle_gauge(id, real_matrix({{0, 2}, {0, 0}}), GaugeKind::w, 2000, 1);
    EXPECT_GE(w, 0.999);
    EXPECT_LE(w, 1.0 + 1e-12);
    EXPECT_NEAR(oracle_gauge(id, eye(2), GaugeKind::norm, 10, 2), 1.0, 1e-12);
    EXPECT_NEAR(oracle_gauge(id, eye(2), GaugeKind::c, 10, 3), 1.0, 1e-12);
    EXPECT_THROW(oracle_gauge(id, eye(2), GaugeKind::w, 0, 3), Error);
    EXPECT_THROW(oracle_gauge(new_frame(CMat(CMat::Zero(2, 2))), eye(2), GaugeKind::w, 10, 3), Error);
}

TEST(Oracle, CrawfordCOfNilpotent) {
    const double c = oracle_gauge(new_frame(eye(2)), real_matrix({{0, 2}, {0, 0}}), GaugeKind::C, 200, 4);
    EXPECT_NEAR(c, 1.0, 1e-9);
}

TEST(Oracle, DeterministicInSeed) {
    Rng rng(52);
    const Frame f = sized_frame(rng, 4, 2);
    const CMat t = compatible(f, rng);
    EXPECT_EQ(oracle_gauge(f, t, GaugeKind::w, 50, 9), oracle_gauge(f, t, GaugeKind::w, 50, 9));
}

TEST(Oracle, BracketsSweepOnSingularFrames) {
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame f = random_frame(rng, 2, 5);
        const CMat t = compatible(f, rng);
        const double scale = 1 + a_seminorm(f, t);
        const double w = a_numerical_radius(f, t), c = a_crawford(f, t), big_c = a_crawford_C(f, t);
        const double n = a_seminorm(f, t), m = a_min_modulus(f, t);
        const auto seed = rng.next();
        EXPECT_LE(oracle_gauge(f, t, GaugeKind::w, 200, seed), w + 1e-9 * scale);
        EXPECT_LE(oracle_gauge(f, t, GaugeKind::norm, 200, seed), n + 1e-9 * scale);
        EXPECT_GE(oracle_gauge(f, t, GaugeKind::c, 200, seed), c - 1e-9 * scale);
        EXPECT_GE(oracle_gauge(f, t, GaugeKind::minmod, 200, seed), m - 1e-9 * scale);
        EXPECT_GE(oracle_gauge(f, t, GaugeKind::C, 200, seed), big_c - 1e-9 * scale);
        EXPECT_NEAR(oracle_gauge(f, t, GaugeKind::w, 500, seed), w, 2e-3 * scale);
        if (f.dim() <= 3) EXPECT_NEAR(oracle_gauge(f, t, GaugeKind::C, 500, seed), big_c, 2e-3 * scale);
    }
}
