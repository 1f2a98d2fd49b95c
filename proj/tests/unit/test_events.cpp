#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "jumpconv/analytic.hpp"
#include "jumpconv/events.hpp"
#include "jumpconv/rng.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace jumpconv;
using testsupport::path_of;

namespace {

GeneratorSpec with_horizon(const char* name, std::int64_t n) {
    GeneratorSpec s = catalog_preset(name);
    std::get<RandomWalkSpec>(s).horizon = n;
    return s;
}

// Random walk with a random drift sign and step size, ending in a random regime.
SamplePath random_regime_path(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> z;
    const double drift = u(rng) * 0.05, noise = std::pow(10.0, 3 * u(rng) - 2);
    PathBuilder b(TimeGrid::integer_events(400));
    for (int k = 1; k <= 400; ++k) b.step(drift + noise * z(rng) / std::sqrt(k));
    return std::move(b).finish();
}

}  // namespace

TEST(Classify, ConstantPathConverges) {
    const auto v = classify(path_of({0.0, 3.5, 3.5, 3.5, 3.5, 3.5, 3.5, 3.5, 3.5, 3.5, 3.5}), 0.5, 1e-3, 5.0);
    EXPECT_EQ(v.label, VerdictLabel::converged);
    EXPECT_EQ(v.limit, 3.5);
    EXPECT_EQ(v.final_oscillation, 0.0);
}

TEST(Classify, AlternatingHarmonicConvergesToMinusLogTwo) {
    const auto v = classify(gen_det_alternating(10000), 0.1, 1e-2, 5.0);
    EXPECT_EQ(v.label, VerdictLabel::converged);
    EXPECT_LT(std::abs(v.limit + oracle::kLog2), 1e-3);
}

TEST(Classify, CoxNeverPathDivergesDownward) {
    const Model m = compile(catalog_preset("cox_linear"));
    for (std::uint64_t seed = 0;; ++seed) {
        const auto g = generate(m, seed);
        if (g.rho->finite()) continue;
        const auto v = classify(g.path, 0.1, 5e-3, 5.0);
        EXPECT_EQ(v.label, VerdictLabel::diverged_minus);
        EXPECT_LT(v.final_value, -5.0);
        EXPECT_LT(v.window_sup, -5.0);
        break;
    }
}

TEST(Classify, RejectsBadParameters) {
    const auto p = path_of({0, 1, 2, 3});
    EXPECT_THROW(classify(p, 0.0, 1e-3, 5.0), std::invalid_argument);
    EXPECT_THROW(classify(p, 1.0, 1e-3, 5.0), std::invalid_argument);
    EXPECT_THROW(classify(p, 0.5, 0.0, 5.0), std::invalid_argument);
    EXPECT_THROW(classify(p, 0.5, 1e-3, -1.0), std::invalid_argument);
    EXPECT_THROW(classify(p, 0.5, 10.0, 5.0), std::invalid_argument);
}

TEST(Classify, PropertyLabelInvariants) {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 2000; ++rep) {
        const auto p = random_regime_path(rng);
        const auto v = classify(p, 0.2, 1e-2, 1.0);
        switch (v.label) {
            case VerdictLabel::converged:
                EXPECT_LT(v.final_oscillation, 1e-2);
                EXPECT_EQ(v.limit, v.final_value);
                break;
            case VerdictLabel::diverged_minus:
                EXPECT_LT(v.final_value, -1.0);
                EXPECT_LT(v.window_sup, -1.0);
                break;
            case VerdictLabel::diverged_plus:
                EXPECT_GT(v.final_value, 1.0);
                EXPECT_GT(v.window_inf, 1.0);
                break;
            case VerdictLabel::oscillating: EXPECT_GT(v.final_oscillation, 1.0); break;
            case VerdictLabel::undecided: break;
        }
        if (v.label != VerdictLabel::converged) EXPECT_TRUE(std::isnan(v.limit));
    }
}

TEST(Classify, PropertyShrinkingTolOnlyLosesConvergence) {
    std::mt19937_64 rng(23);
    const std::vector<double> tols = {0.5, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6};
    int moved = 0;
    for (int rep = 0; rep < 2000; ++rep) {
        const auto p = random_regime_path(rng);
        auto prev = classify(p, 0.2, tols[0], 1.0).label;
        for (std::size_t i = 1; i < tols.size(); ++i) {
            const auto cur = classify(p, 0.2, tols[i], 1.0).label;
            if (cur != prev) {
                EXPECT_EQ(prev, VerdictLabel::converged);
                EXPECT_EQ(cur, VerdictLabel::undecided);
                ++moved;
            }
            prev = cur;
        }
    }
    EXPECT_GT(moved, 0);  // the generator does reach the boundary
}

TEST(Flags, ZeroPathIsAllConvergent) {
    const Model m = compile(catalog_preset("zero"));
    const ProxyParams params;
    const auto g = generate(m, 0);
    const auto reports = compute_reports(m, g, params, true, true);
    EXPECT_EQ(reports.x_verdict.label, VerdictLabel::converged);
    const auto f = event_flags(m, g, reports, params);
    EXPECT_TRUE(f.hypothesis);
    for (bool b : {f.a, f.b, f.c, f.d, f.e, f.f, f.g, f.e1, f.e2, f.e3, f.e4}) EXPECT_TRUE(b);
    ASSERT_TRUE(f.h && f.f1 && f.f2 && f.f3 && f.f4);
    EXPECT_TRUE(*f.h && *f.f1 && *f.f2 && *f.f3 && *f.f4);
}

TEST(Flags, AlternatingRootConvergesWithoutFiniteCompensator) {
    const Model m = compile(catalog_preset("alt_sqrt"));
    const ProxyParams params;
    const FlagEvaluator eval(m, params);
    int converged = 0;
    for (int i = 0; i < 20; ++i) {
        const auto g = generate(m, trial_seed(51, i));
        const auto f = eval.evaluate(g, compute_reports(m, g, params, true, false));
        converged += f.a;
        EXPECT_FALSE(f.f);
        EXPECT_FALSE(f.c);
    }
    EXPECT_GE(converged, 19);
}

TEST(Flags, AlternatingHarmonicConvergesWithFiniteQuadraticVariation) {
    const Model m = compile(catalog_preset("alt_harmonic"));
    const ProxyParams params;
    const FlagEvaluator eval(m, params);
    int both = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
        const auto g = generate(m, trial_seed(52, i));
        const auto f = eval.evaluate(g, compute_reports(m, g, params, false, false));
        both += f.a && f.b;
        // The firing jumps x_n (1 - 1/p_n) make (x^2 ∧ |x|) * nu comparable to sum |x_n| = inf.
        EXPECT_FALSE(f.f);
        EXPECT_FALSE(f.hypothesis);
    }
    EXPECT_GE(both, trials * 99 / 100);
}

TEST(Flags, NegativeHarmonicDivergesDespiteFiniteQuadraticVariation) {
    const Model m = compile(catalog_preset("neg_harmonic"));
    const ProxyParams params;
    const FlagEvaluator eval(m, params);
    for (int i = 0; i < 10; ++i) {
        const auto g = generate(m, trial_seed(53, i));
        const auto reports = compute_reports(m, g, params, false, false);
        if (!g.fired.empty() && g.fired.back() > 90000) continue;  // a late firing can mask the drift
        EXPECT_EQ(reports.x_verdict.label, VerdictLabel::diverged_minus);
        EXPECT_LT(reports.qv.total.back(), params.cap);
        EXPECT_TRUE(eval.hypothesis());
        const auto f = eval.evaluate(g, reports);
        EXPECT_FALSE(f.a);
        EXPECT_FALSE(f.b);
    }
}

TEST(Localizer, BoundedPathNeverCrosses) {
    const std::vector<double> levels = {1, 2, 3};
    const auto r = crossing_localizer(path_of({0.0, 0.5, -0.5, 0.25}), levels);
    EXPECT_TRUE(r.coverage);
    for (const auto& l : r.levels) EXPECT_FALSE(l.crossing_time.has_value());
}

TEST(Localizer, ThresholdScan) {
    const std::vector<double> levels = {1, 2, 3, 4};
    const auto r = crossing_localizer(path_of({0.0, 0.5, -1.5, -3.2, -1.0}), levels);
    EXPECT_EQ(r.levels[0].crossing_time, 2.0);
    EXPECT_EQ(r.levels[1].crossing_time, 3.0);
    EXPECT_EQ(r.levels[2].crossing_time, 3.0);
    EXPECT_FALSE(r.levels[3].crossing_time.has_value());
    EXPECT_TRUE(r.coverage);
    EXPECT_NEAR(r.levels[2].bound, 3.0 + 1.7, 1e-15);
}

TEST(Localizer, PropertyDominationAndMonotoneCrossings) {
    std::mt19937_64 rng(29);
    const std::vector<double> levels = {0.5, 1, 2, 5, 10};
    for (int rep = 0; rep < 300; ++rep) {
        const auto p = rep % 2 ? testsupport::random_jump_path(rng, 200, 0.2, 3.0)
                               : testsupport::random_mixed_path(rng, 0.25, 50.0);
        const auto r = crossing_localizer(p, levels);
        EXPECT_TRUE(r.domination_holds);
        double last = 0.0;
        bool ended = false;
        for (const auto& l : r.levels) {
            EXPECT_LE(l.stopped_sup_abs, l.bound + 1e-12);
            if (!l.crossing_time) {
                ended = true;
                continue;
            }
            EXPECT_FALSE(ended);  // a crossed level after an uncrossed one is impossible
            EXPECT_GE(*l.crossing_time, last);
            last = *l.crossing_time;
        }
        EXPECT_EQ(r.coverage, ended);
    }
}

TEST(Lemma51, SequencePredicates) {
    XRule r;
    r.preset = XPreset::alt_harmonic;
    auto l = lemma51_predicates(r, 1000);
    EXPECT_TRUE(l.sum_converges);
    EXPECT_TRUE(l.sum_sq_finite);
    EXPECT_FALSE(l.sum_abs_finite);
    r.preset = XPreset::alt_sqrt;
    l = lemma51_predicates(r, 1000);
    EXPECT_TRUE(l.sum_converges);
    EXPECT_FALSE(l.sum_sq_finite);
    EXPECT_FALSE(l.sum_abs_finite);
    r.preset = XPreset::zero;
    l = lemma51_predicates(r, 1000);
    EXPECT_TRUE(l.sum_converges && l.sum_sq_finite && l.sum_abs_finite);
    EXPECT_EQ(l.partial_sum, 0.0);
    r.preset = XPreset::alt_harmonic;
    r.zero_first = false;
    EXPECT_NEAR(lemma51_predicates(r, 10000).partial_sum, oracle::kAltHarmonic1e4, 1e-12);
    EXPECT_NEAR(lemma51_predicates(r, 10000).partial_sum_abs, oracle::kHarmonic1e4, 1e-11);
}

TEST(ProxyParams, Validation) {
    ProxyParams p;
    EXPECT_NO_THROW(validate(p));
    p.tol = 10.0;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = {};
    p.levels = {2.0, 1.0};
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = {};
    p.eta = 1.5;
    EXPECT_THROW(validate(p), std::invalid_argument);
}
