#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "jumpconv/generators.hpp"
#include "jumpconv/path.hpp"
#include "jumpconv/rng.hpp"
#include "support.hpp"

using namespace jumpconv;
using testsupport::path_of;

TEST(TimeGrid, IntegerEventsHoldExactIntegers) {
    const auto g = TimeGrid::integer_events(5);
    ASSERT_EQ(g.size(), 6u);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(g[k], static_cast<double>(k));
    EXPECT_EQ(g.count_upto(2.5), 3u);
}

TEST(TimeGrid, UniformRequiresStepDividingHorizon) {
    EXPECT_NO_THROW(TimeGrid::uniform(0.1, 1.0));
    EXPECT_THROW(TimeGrid::uniform(0.3, 1.0), std::invalid_argument);
    EXPECT_THROW(TimeGrid::uniform(-1.0, 1.0), std::invalid_argument);
    const auto g = TimeGrid::uniform(10.0, 100.0);
    EXPECT_EQ(g.size(), 11u);
    EXPECT_EQ(g.end(), 100.0);
}

TEST(SamplePath, RejectsInconsistentOrNonFinite) {
    const auto g = TimeGrid::integer_events(2);
    EXPECT_THROW(SamplePath(g, {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}), std::invalid_argument);
    EXPECT_THROW(SamplePath(g, {0.0, 1.0, NAN}, {0.0, 1.0, NAN}), std::invalid_argument);
    EXPECT_THROW(SamplePath(g, {0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    EXPECT_NO_THROW(SamplePath(g, {0.0, 1.0, 2.0}, {0.0, 1.0, 1.0}));
}

TEST(QuadraticVariation, SingleJumpOfTwo) {
    const auto qv = quadratic_variation(path_of({0.0, 2.0, 2.0}));
    EXPECT_EQ(qv.total.back(), 4.0);
    EXPECT_EQ(qv.continuous.back(), 0.0);
}

TEST(QuadraticVariation, AlternatingRootTermsWithoutFiring) {
    PathBuilder b(TimeGrid::integer_events(4));
    for (int n = 1; n <= 4; ++n) b.step((n % 2 == 0 ? 1.0 : -1.0) / std::sqrt(n));
    const auto qv = quadratic_variation(std::move(b).finish());
    EXPECT_NEAR(qv.total.back(), 25.0 / 12.0, 1e-15);
}

TEST(QuadraticVariation, BrownianPathOnUnitInterval) {
    CoxSpec s;
    s.lambda.scale = 0.0;  // no jump, X = B
    s.with_bm = true;
    s.step = 1e-4;
    s.horizon = 1.0;
    const Model m = compile(s);
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = generate(m, seed);
        within += std::abs(quadratic_variation(g.path).total.back() - 1.0) < 0.05;
    }
    EXPECT_GE(within, 95);
}

TEST(QuadraticVariation, PropertyDecompositionAndMonotone) {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const auto p = testsupport::random_mixed_path(rng, 0.5, 50.0);
        const auto qv = quadratic_variation(p);
        double jumps = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            jumps += p.jump(k) * p.jump(k);
            EXPECT_NEAR(qv.total[k], qv.continuous[k] + jumps, 1e-12 * (1 + qv.total[k]));
            if (k > 0) {
                EXPECT_GE(qv.total[k], qv.total[k - 1]);
                EXPECT_GE(qv.continuous[k], qv.continuous[k - 1]);
            }
        }
        // Drift carries no quadratic variation.
        double diff2 = 0.0;
        for (std::size_t k = 1; k < p.size(); ++k) diff2 += p.diffusion(k) * p.diffusion(k);
        EXPECT_NEAR(qv.continuous.back(), diff2, 1e-12);
    }
}

TEST(RunningExtrema, Examples) {
    const auto z = running_extrema(path_of({0.0, 0.0, 0.0}));
    EXPECT_EQ(z.sup, (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(z.inf, (std::vector<double>{0, 0, 0}));
    const auto e = running_extrema(path_of({0.0, 1.0, -2.0}));
    EXPECT_EQ(e.sup, (std::vector<double>{0, 1, 1}));
    EXPECT_EQ(e.inf, (std::vector<double>{0, 0, -2}));
}

TEST(RunningExtrema, CoxNeverPathStaysNonPositive) {
    const Model m = compile(catalog_preset("cox_linear"));
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 5; ++seed) {
        const auto g = generate(m, seed);
        if (g.rho->finite()) continue;
        ++checked;
        for (double s : running_extrema(g.path).sup) EXPECT_LE(s, 0.0);
    }
}

TEST(RunningExtrema, PropertyBracketsPath) {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto p = testsupport::random_jump_path(rng, 200);
        const auto e = running_extrema(p);
        for (std::size_t k = 0; k < p.size(); ++k) {
            EXPECT_LE(e.inf[k], p.value(k));
            EXPECT_GE(e.sup[k], p.value(k));
            if (k > 0) {
                EXPECT_GE(e.sup[k], e.sup[k - 1]);
                EXPECT_LE(e.inf[k], e.inf[k - 1]);
            }
        }
    }
}

TEST(Oscillation, Examples) {
    EXPECT_EQ(oscillation(path_of({5.0, 1.0, 1.0, 1.0}), 2.0), 0.0);
    EXPECT_EQ(oscillation(path_of({0.0, 7.0, 1.0, 3.0, 2.0}), 2.0), 2.0);
}

TEST(Oscillation, Errors) {
    const auto p = path_of({0.0, 1.0, 2.0});
    EXPECT_THROW(oscillation(p, 0.0), std::invalid_argument);
    EXPECT_THROW(oscillation(p, -1.0), std::invalid_argument);
    EXPECT_THROW(oscillation(p, 3.0), std::invalid_argument);
}

TEST(Oscillation, AlternatingHarmonicTailIsSmall) {
    RandomWalkSpec s;
    s.x.preset = XPreset::alt_harmonic;
    s.x.zero_first = true;
    s.horizon = 10000;
    const Model m = compile(s);
    int small = 0;
    const int seeds = 1000;
    for (int seed = 0; seed < seeds; ++seed) small += oscillation(generate(m, trial_seed(3, seed)).path, 1000.0) < 2e-3;
    EXPECT_GE(small, 990);
}

TEST(AddPaths, ZeroIsIdentity) {
    std::mt19937_64 rng(1);
    const auto a = testsupport::random_jump_path(rng, 50);
    const auto sum = add_paths(a, constant_path(a.grid(), 0.0));
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(sum.value(k), a.value(k));
        EXPECT_EQ(sum.jump(k), a.jump(k));
    }
}

TEST(AddPaths, JumpPlusDriftKeepsJumps) {
    const auto g = TimeGrid::uniform(1.0, 4.0);
    PathBuilder j(g), d(g, 0.0, true);
    for (int k = 1; k <= 4; ++k) {
        j.step(k == 2 ? 1.5 : 0.0);
        d.step(0.0, -0.25);
    }
    const auto s = add_paths(std::move(j).finish(), std::move(d).finish());
    EXPECT_EQ(s.jump(2), 1.5);
    EXPECT_EQ(s.drift(3), -0.25);
    EXPECT_EQ(s.final_value(), 0.5);
}

TEST(AddPaths, GridMismatchThrows) {
    EXPECT_THROW(add_paths(path_of({0, 1}), path_of({0, 1, 2})), std::invalid_argument);
}

TEST(AddPaths, BrownianPlusCoxQuadraticVariation) {
    CoxSpec bm;
    bm.lambda.scale = 0.0;
    bm.with_bm = true;
    bm.horizon = 1000;
    const Model mb = compile(bm);
    CoxSpec xs = std::get<CoxSpec>(catalog_preset("cox_linear"));
    xs.horizon = 1000;
    const Model mx2 = compile(xs);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto b = generate(mb, seed).path;
        const auto x = generate(mx2, seed + 100).path;
        const auto qb = quadratic_variation(b), qx = quadratic_variation(x);
        const auto qs = quadratic_variation(add_paths(b, x));
        EXPECT_NEAR(qs.total.back(), qb.total.back() + qx.total.back(), 1e-9 * (1 + qs.total.back()));
    }
}

TEST(AddPaths, PropertyQvAdditiveForDisjointJumps) {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 50; ++rep) {
        const std::int64_t n = 100;
        PathBuilder a(TimeGrid::integer_events(n)), b(TimeGrid::integer_events(n));
        std::normal_distribution<double> z;
        for (std::int64_t k = 1; k <= n; ++k) {
            const bool on_a = k % 2 == 0;
            a.step(on_a ? z(rng) : 0.0);
            b.step(on_a ? 0.0 : z(rng));
        }
        const auto pa = std::move(a).finish(), pb = std::move(b).finish();
        const double lhs = quadratic_variation(add_paths(pa, pb)).total.back();
        const double rhs = quadratic_variation(pa).total.back() + quadratic_variation(pb).total.back();
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
    }
}

TEST(PathCsv, HeaderAndRows) {
    std::ostringstream out;
    write_path_csv(out, path_of({0.0, 2.0}));
    EXPECT_EQ(out.str(), "t,X,dX,dXc\n0,0,0,0\n1,2,2,0\n");
}
