#include <gtest/gtest.h>

#include <filesystem>

#include "jumpconv/config.hpp"
#include "jumpconv/io.hpp"

using namespace jumpconv;

TEST(Config, FullExperiment) {
    const auto s = parse_experiment(R"(
name: walk_check
trials: 250
base_seed: 42
threads: 2
generator:
  family: random_walk
  horizon: 500
  x: {preset: neg_harmonic, zero_first: true}
  p: {kind: geometric, scale: 0.5, base: 2}
analyzers: [verdict, conditions, "localizer:10", "compensator:POS_TAIL[1.0]"]
proxy: {window: 0.2, tol: 0.01, big: 4, levels: [10, 20]}
sup_exp: {c: 0.5}
output: {dir: out/walk}
)");
    EXPECT_EQ(s.name, "walk_check");
    EXPECT_EQ(s.trials, 250);
    EXPECT_EQ(s.base_seed, 42u);
    EXPECT_EQ(s.threads, 2u);
    const auto& rw = std::get<RandomWalkSpec>(s.generator);
    EXPECT_EQ(rw.horizon, 500);
    EXPECT_EQ(rw.x.preset, XPreset::neg_harmonic);
    EXPECT_TRUE(rw.x.zero_first);
    EXPECT_EQ(rw.p.kind, PKind::geometric);
    EXPECT_EQ(rw.p.scale, 0.5);
    ASSERT_EQ(s.analyzers.size(), 4u);
    EXPECT_EQ(s.analyzers[3].name(), "compensator:POS_TAIL[1.0]");
    EXPECT_EQ(s.proxy.window, 0.2);
    EXPECT_EQ(s.proxy.levels, (std::vector<double>{10, 20}));
    EXPECT_EQ(s.sup_exp_c, 0.5);
    EXPECT_EQ(s.out_dir, std::filesystem::path("out/walk"));
}

TEST(Config, PresetWithOverrideAndOtherFamilies) {
    auto s = parse_experiment("generator: {preset: cox_linear, horizon: 50}\nanalyzers: [survival]\n");
    EXPECT_EQ(std::get<CoxSpec>(s.generator).horizon, 50.0);
    s = parse_experiment("generator: {family: cox, gamma: quadratic, step: 0.5, horizon: 10, with_bm: true}\n"
                         "analyzers: [verdict]\n");
    const auto& c = std::get<CoxSpec>(s.generator);
    EXPECT_EQ(c.gamma.kind, GammaKind::quadratic);
    EXPECT_TRUE(c.with_bm);
    s = parse_experiment("generator: {family: oneshot, law: pareto_exp, alpha: 1.5}\nanalyzers: [terminal]\n");
    EXPECT_EQ(std::get<OneShotSpec>(s.generator).law, OneShotLaw::pareto_exp);
    const auto g = parse_generator("family: det_alternating\nhorizon: 20\n");
    EXPECT_EQ(std::get<DetAlternatingSpec>(g).horizon, 20);
    EXPECT_EQ(std::get<DetAlternatingSpec>(parse_generator("generator: {preset: det_alternating}")).horizon, 10000);
}

TEST(Config, RejectsInvalidInput) {
    const char* bad[] = {
        "generator: {preset: zero}\nanalyzers: [verdict]\nbogus: 1\n",                // unknown key
        "generator: {preset: nope}\nanalyzers: [verdict]\n",                          // unknown preset
        "generator: {preset: zero, family: cox}\nanalyzers: [verdict]\n",             // both
        "generator: {family: cox, gamma: custom}\nanalyzers: [verdict]\n",            // custom rates
        "generator: {preset: zero}\nanalyzers: [verdict]\ntrials: 0\n",               // trials
        "generator: {preset: zero}\nanalyzers: []\n",                                 // no analyzers
        "generator: {preset: zero}\nanalyzers: [verdict]\ntrials: many\n",            // type
        "generator: {preset: zero}\nanalyzers: [verdict]\nproxy: {tol: -1}\n",        // proxy range
        "generator: {family: random_walk, p: {kind: geometric, scale: 2}}\nanalyzers: [verdict]\n",  // p >= 1
        "generator: {preset: zero\n",                                                 // syntax
        "analyzers: [verdict]\n",                                                     // no generator
    };
    for (const char* text : bad) EXPECT_THROW(parse_experiment(text), ConfigError) << text;
}

TEST(Config, MissingFileIsAnIoError) {
    EXPECT_THROW(load_experiment("/nonexistent/dir/exp.yaml"), IoError);
}
