#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "jumpconv/io.hpp"
#include "jumpconv/montecarlo.hpp"
#include "jumpconv/rng.hpp"
#include "jumpconv/stats.hpp"
#include "oracle_values.hpp"

using namespace jumpconv;
namespace fs = std::filesystem;

namespace {

ExperimentSpec spec_for(const char* preset, std::int64_t trials, std::vector<std::string> analyzers) {
    ExperimentSpec s;
    s.name = preset;
    s.generator = catalog_preset(preset);
    s.trials = trials;
    s.base_seed = 77;
    for (const auto& a : analyzers) s.analyzers.push_back(Analyzer::parse(a));
    return s;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("jumpconv_test_" + name);
    fs::remove_all(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Wilson, KnownIntervalsAndBounds) {
    const auto w = wilson(50, 100);
    EXPECT_NEAR(w.lo, 0.40383153, 1e-7);
    EXPECT_NEAR(w.hi, 0.59616847, 1e-7);
    const auto z = wilson(0, 10);
    EXPECT_EQ(z.lo, 0.0);
    EXPECT_EQ(z.p_hat, 0.0);
    const auto o = wilson(10, 10);
    EXPECT_EQ(o.hi, 1.0);
    for (std::int64_t n : {1, 2, 7, 100, 100000})
        for (std::int64_t k = 0; k <= n; k += std::max<std::int64_t>(1, n / 13)) {
            const auto e = wilson(k, n);
            EXPECT_LE(0.0, e.lo);
            EXPECT_LE(e.lo, e.p_hat);
            EXPECT_LE(e.p_hat, e.hi);
            EXPECT_LE(e.hi, 1.0);
        }
}

TEST(Wilson, CoverageOnBernoulliDummy) {
    std::mt19937_64 rng(101);
    std::bernoulli_distribution coin(0.3);
    int covered = 0;
    for (int rep = 0; rep < 200; ++rep) {
        int k = 0;
        for (int i = 0; i < 1000; ++i) k += coin(rng);
        const auto e = wilson(k, 1000);
        covered += e.lo <= 0.3 && 0.3 <= e.hi;
    }
    EXPECT_GE(covered, 180);
}

TEST(MeanTest, Cases) {
    const std::vector<double> zeros(10, 0.0);
    EXPECT_EQ(mean_test(zeros).z, 0.0);
    const std::vector<double> small = {1.0, 2.0, 3.0};
    const auto t = mean_test(small);
    EXPECT_DOUBLE_EQ(t.mean, 2.0);
    EXPECT_DOUBLE_EQ(t.sd, 1.0);
    EXPECT_NEAR(t.z, 2.0 * std::sqrt(3.0), 1e-12);
    EXPECT_THROW(mean_test(std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(mean_test(std::vector<double>{2.0, 2.0, 2.0}), std::domain_error);
    EXPECT_THROW(mean_test(std::vector<double>{0.0, NAN}), std::domain_error);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> z(0.1, 1.0);
    std::vector<double> biased(10000);
    for (double& v : biased) v = z(rng);
    EXPECT_GE(std::abs(mean_test(biased).z), 5.0);
}

TEST(LogSumExp, MatchesDirectSumAndMerges) {
    LogSumExp a, b, all;
    for (double v : {1.0, 2.0, 3.0}) {
        a.add(std::log(v));
        all.add(std::log(v));
    }
    for (double v : {1e-300, 4.0}) {
        b.add(std::log(v));
        all.add(std::log(v));
    }
    EXPECT_NEAR(a.log_sum(), std::log(6.0), 1e-15);
    a.merge(b);
    EXPECT_NEAR(a.log_sum(), all.log_sum(), 1e-15);
    EXPECT_EQ(a.count(), 5);
    LogSumExp big;
    big.add(1000.0);
    big.add(1000.0);
    EXPECT_NEAR(big.log_sum(), 1000.0 + std::log(2.0), 1e-12);
}

TEST(Analyzer, ParseAndName) {
    EXPECT_EQ(Analyzer::parse("localizer:50").name(), "localizer:50.0");
    EXPECT_EQ(Analyzer::parse("compensator:POS_TAIL[1.0]").name(), "compensator:POS_TAIL[1.0]");
    EXPECT_EQ(Analyzer::parse("conditions").kind, AnalyzerKind::conditions);
    EXPECT_THROW(Analyzer::parse("nope"), std::invalid_argument);
    EXPECT_THROW(Analyzer::parse("below"), std::invalid_argument);
    EXPECT_THROW(Analyzer::parse("compensator:BAD"), std::invalid_argument);
}

TEST(ExperimentSpec, Validation) {
    EXPECT_NO_THROW(validate(spec_for("zero", 1, {"verdict"})));
    EXPECT_THROW(validate(spec_for("zero", 0, {"verdict"})), std::invalid_argument);
    EXPECT_THROW(validate(spec_for("zero", 1, {})), std::invalid_argument);
    EXPECT_THROW(validate(spec_for("zero", 1, {"survival"})), std::invalid_argument);
    EXPECT_THROW(validate(spec_for("alt_sqrt", 1, {"exp_events"})), std::invalid_argument);
    EXPECT_THROW(validate(spec_for("zero", 1, {"verdict", "verdict"})), std::invalid_argument);
    auto s = spec_for("zero", 1, {"verdict"});
    s.sup_exp_c = 0.0;
    EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(RunTrials, SingleZeroTrialIsAllOnes) {
    const auto r = run_trials(spec_for("zero", 1, {"verdict", "conditions", "events", "exp_events"}));
    EXPECT_EQ(r.marginal("X_converged").p_hat, 1.0);
    for (const char* g : {"conditions", "events", "exp_events"}) {
        const auto& m = r.matrix(g);
        for (const auto& e : m.marginals) EXPECT_EQ(e.p_hat, 1.0) << g;
        for (const auto& row : m.rate)
            for (double v : row) EXPECT_EQ(v, 1.0) << g;
    }
    EXPECT_EQ(r.marginal("X_diverged_minus").p_hat, 0.0);
}

TEST(RunTrials, AgreementMatrixSymmetricWithUnitDiagonal) {
    const auto r = run_trials(spec_for("bounded_alt", 50, {"conditions", "events"}));
    for (const auto& m : r.matrices)
        for (std::size_t i = 0; i < m.events.size(); ++i) {
            EXPECT_EQ(m.rate[i][i], 1.0);
            for (std::size_t j = 0; j < m.events.size(); ++j) {
                EXPECT_EQ(m.rate[i][j], m.rate[j][i]);
                EXPECT_GE(m.rate[i][j], 0.0);
                EXPECT_LE(m.rate[i][j], 1.0);
            }
        }
}

TEST(RunTrials, CoxSurvivalIntervalContainsTarget) {
    auto s = spec_for("cox_linear", 10000, {"survival"});
    std::get<CoxSpec>(s.generator).horizon = 10;
    const auto r = run_trials(s);
    const auto& e = r.marginal("rho_never");
    EXPECT_LE(e.lo, oracle::kSurvivalNever);
    EXPECT_GE(e.hi, oracle::kSurvivalNever);
}

TEST(RunTrials, IndependentOfThreadCount) {
    auto s = spec_for("bounded_alt", 200, {"verdict", "conditions", "identity", "qv", "compensator:SQ_CAP_ABS"});
    std::get<RandomWalkSpec>(s.generator).horizon = 2000;
    s.sup_exp_c = 0.5;
    s.threads = 1;
    const auto one = run_trials(s);
    s.threads = 3;
    const auto three = run_trials(s);
    EXPECT_EQ(results_csv(one), results_csv(three));
    EXPECT_EQ(summary_csv(one), summary_csv(three));
    ASSERT_TRUE(one.sup_exp && three.sup_exp);
    EXPECT_EQ(sup_exp_csv(*one.sup_exp), sup_exp_csv(*three.sup_exp));
}

TEST(RunTrials, WritesAllOutputsAtomically) {
    const fs::path dir = scratch_dir("outputs");
    auto s = spec_for("zero", 5, {"verdict", "terminal"});
    const auto r = run_trials(s);
    write_experiment(s, r, dir);
    for (const char* f : {"results.csv", "summary.csv", "manifest.txt"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
    for (const auto& entry : fs::directory_iterator(dir)) EXPECT_NE(entry.path().extension(), ".tmp");
    const auto results = slurp(dir / "results.csv");
    EXPECT_EQ(results.rfind("trial,seed,verdict,X_converged", 0), 0u);
    EXPECT_NE(slurp(dir / "manifest.txt").find("spec_hash="), std::string::npos);
    fs::remove_all(dir);
}

TEST(Io, AtomicWriteReplacesAndReportsFailure) {
    const fs::path dir = scratch_dir("io");
    write_file_atomic(dir / "a.txt", "first");
    write_file_atomic(dir / "a.txt", "second");
    EXPECT_EQ(slurp(dir / "a.txt"), "second");
    EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
    // A regular file where a directory is needed.
    EXPECT_THROW(write_file_atomic(dir / "a.txt" / "b.txt", "x"), IoError);
    EXPECT_EQ(slurp(dir / "a.txt"), "second");
    fs::remove_all(dir);
}

TEST(Io, RealFormatting) {
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(2.0), "2");
    EXPECT_EQ(format_param(2.0), "2.0");
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
}

TEST(ForEachTrial, CoversEveryIndexAndRethrows) {
    std::vector<std::atomic<int>> hits(1000);
    for_each_trial(1000, 4, [&](std::int64_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(for_each_trial(100, 3,
                                [](std::int64_t i) {
                                    if (i == 42) throw std::runtime_error("boom");
                                }),
                 std::runtime_error);
}

TEST(SupExpMoment, ZeroProcessHasUnitMoment) {
    const auto m = sup_exp_moment(catalog_preset("zero"), 0.5, 100, 1, 2);
    for (double v : m.log_mean) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(m.max_log, 0.0);
    EXPECT_THROW(sup_exp_moment(catalog_preset("zero"), 0.0, 10, 1), std::invalid_argument);
}
