#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "jumpconv/characteristics.hpp"
#include "jumpconv/rng.hpp"
#include "jumpconv/stats.hpp"
#include "jumpconv/transforms.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace jumpconv;
using testsupport::path_of;

TEST(StochasticExponential, SingleUnitJumpDoubles) {
    const auto e = stochastic_exponential(path_of({0.0, 1.0, 1.0}));
    EXPECT_EQ(e.value(0), 1.0);
    EXPECT_EQ(e.value(1), 2.0);
    EXPECT_EQ(e.value(2), 2.0);
}

TEST(StochasticExponential, PureDriftIsExponential) {
    const double a = 0.3, h = 0.01;
    const auto grid = TimeGrid::uniform(h, 5.0);
    PathBuilder b(grid, 0.0, true);
    for (std::size_t k = 1; k < grid.size(); ++k) b.step(0.0, -a * h);
    const auto e = stochastic_exponential(std::move(b).finish());
    for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(e.value(k), std::exp(-a * grid[k]), 1e-12);
}

TEST(StochasticExponential, LogMagnitudeIsSumOfLogFactors) {
    const Model m = compile(catalog_preset("alt_sqrt"));
    int small = 0;
    const int seeds = 100;
    for (int i = 0; i < seeds; ++i) {
        const auto g = generate(m, trial_seed(31, i));
        const auto e = stochastic_exponential(g.path);
        long double direct = 0;
        for (double j : g.path.jumps()) direct += std::log(std::fabs(1.0L + j));
        ASSERT_NE(e.sign.back(), 0);
        EXPECT_NEAR(e.log_abs.back(), static_cast<double>(direct), 1e-10 * (1 + std::abs(static_cast<double>(direct))));
        small += e.log_abs.back() < -4.0;
    }
    EXPECT_GE(small, 95);
}

TEST(StochasticExponential, SignFlipsAtJumpsBelowMinusOne) {
    const auto e = stochastic_exponential(path_of({0.0, -3.0, -2.5, -5.0, -5.0}));
    EXPECT_EQ(sign_changes(e), 2u);
    EXPECT_EQ(e.sign[1], -1);
    EXPECT_EQ(e.sign[2], -1);
    EXPECT_EQ(e.sign[3], 1);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const auto p = testsupport::random_jump_path(rng, 100, 0.3, 2.0);
        std::size_t below = 0;
        for (double j : p.jumps()) below += j < -1.0;
        EXPECT_EQ(sign_changes(stochastic_exponential(p)), below);
    }
}

TEST(TauJ, FirstMinusOneJump) {
    EXPECT_FALSE(tau_J(path_of({0.0, 0.5, 0.0})).has_value());
    const auto p = path_of({0.0, 0.5, 0.25, -0.75, 1.0});
    ASSERT_TRUE(tau_J(p).has_value());
    EXPECT_EQ(*tau_J(p), 3.0);
    const auto e = stochastic_exponential(p);
    EXPECT_EQ(e.sign[3], 0);
    EXPECT_EQ(e.sign[4], 0);
    EXPECT_EQ(e.value(4), 0.0);
    EXPECT_NE(e.value(2), 0.0);
}

TEST(LogTransform, ZeroPath) {
    const Model m = compile(catalog_preset("zero"));
    const auto b = make_transform_bundle(m, generate(m, 0));
    for (double y : b.Y.values) EXPECT_EQ(y, 0.0);
    EXPECT_EQ(check_exp_identity(b), 0.0);
}

TEST(LogTransform, JumpIdentityOnRandomWalkEvents) {
    for (const char* name : {"neg_harmonic", "bounded_alt", "alt_harmonic", "exp_alt_sqrt"}) {
        GeneratorSpec spec = catalog_preset(name);
        std::get<RandomWalkSpec>(spec).horizon = 5000;
        const Model m = compile(spec);
        if (!supports_log_transform(m)) continue;
        const auto gammas = gamma_series(m);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = generate(m, seed);
            const auto b = make_transform_bundle(m, g);
            EXPECT_LE(check_jump_identity(b, g.path, gammas), 1e-12) << name;
            EXPECT_LE(check_exp_identity(b), 1e-9) << name;
        }
    }
}

TEST(LogTransform, CoxNeverPathClosedForm) {
    const Model m = compile(catalog_preset("cox_linear"));
    for (std::uint64_t seed = 0;; ++seed) {
        const auto g = generate(m, seed);
        if (g.rho->finite()) continue;
        const auto y = logarithmic_transform(m, g);
        ASSERT_FALSE(y.truncated);
        EXPECT_NEAR(y.values.back(), oracle::kCoxLinearYNever1e4, 1e-9);
        break;
    }
}

TEST(LogTransform, TruncatedWhenSupportReachesMinusOne) {
    const Model m = compile(catalog_preset("alt_sqrt"));
    ASSERT_FALSE(supports_log_transform(m));
    const auto b = make_transform_bundle(m, generate(m, 0));
    EXPECT_TRUE(b.Y.truncated);
    EXPECT_EQ(b.defined_count, 1u);
}

TEST(LogTransform, MartingaleMeanZero) {
    GeneratorSpec rw = catalog_preset("bounded_alt");
    std::get<RandomWalkSpec>(rw).horizon = 1000;
    CoxSpec cox = std::get<CoxSpec>(catalog_preset("cox_convergent"));
    cox.horizon = 1000;
    for (const GeneratorSpec& spec : {rw, GeneratorSpec{cox}}) {
        const Model m = compile(spec);
        std::vector<double> ys;
        for (int i = 0; i < 5000; ++i) ys.push_back(logarithmic_transform(m, generate(m, trial_seed(41, i))).values.back());
        EXPECT_LE(std::abs(mean_test(ys).z), 3.0) << describe(spec);
    }
}

TEST(ExpIdentity, HoldsOnEverySupportedPreset) {
    for (const auto& name : catalog_names()) {
        GeneratorSpec spec = catalog_preset(name);
        if (auto* rw = std::get_if<RandomWalkSpec>(&spec)) rw->horizon = std::min<std::int64_t>(rw->horizon, 5000);
        const Model m = compile(spec);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto b = make_transform_bundle(m, generate(m, seed));
            EXPECT_LE(check_exp_identity(b), 1e-9) << name << " seed " << seed;
        }
    }
}

TEST(ExpIdentity, DetectsCorruptedCompensator) {
    const Model m = compile(catalog_preset("zero"));
    auto b = make_transform_bundle(m, generate(m, 0));
    // With E = 1 an error d in V shows up as |e^{-d} - 1| / 2: about 5.0025e-4 for
    // d = -1e-3 and 4.9975e-4 for d = +1e-3.
    for (double& v : b.V) v -= 1e-3;
    EXPECT_GE(check_exp_identity(b), 5e-4);
    for (double& v : b.V) v += 2e-3;
    EXPECT_GE(check_exp_identity(b), 4.99e-4);
}

TEST(TransformsCsv, BlankBeyondDefinedRange) {
    const auto p = path_of({0.0, -1.0, -1.0});
    TransformBundle b{p.grid(), stochastic_exponential(p), {}, {}, tau_J(p), 1};
    b.Y.values = {0.0};
    b.Y.defined_count = 1;
    b.V = {0.0};
    std::ostringstream out;
    write_transforms_csv(out, b);
    EXPECT_EQ(out.str(), "t,E,Y,V,identity_err\n0,1,0,0,0\n1,0,,,\n2,0,,,\n");
}
