#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jumpconv/events.hpp"
#include "jumpconv/generators.hpp"
#include "jumpconv/integrand.hpp"
#include "jumpconv/spec.hpp"
#include "jumpconv/stats.hpp"

namespace jumpconv {

enum class AnalyzerKind {
    verdict,      // X verdict label and diagnostics
    conditions,   // flags (a)-(h)
    events,       // events e1-e4
    exp_events,   // events f1-f4 (needs jumps above -1)
    survival,     // Cox: rho never fires
    identity,     // E = exp(Y - V) and the jump identity for Y
    qv,           // [X,X]_N and its continuous part
    terminal,     // X_N
    localizer,    // localizer:L  coverage and domination at level L
    compensator,  // compensator:F  F*mu_N - F*nu_N
    fired,        // number of firings (random walk) / observed jumps
    below,        // below:L  event X_N < L
    logexp,       // logexp:L  log|E(X)_N| and the event log|E(X)_N| < L
};

struct Analyzer {
    AnalyzerKind kind = AnalyzerKind::verdict;
    double level = 0.0;
    std::optional<Integrand> integrand;

    static Analyzer parse(std::string_view text);
    std::string name() const;
};

struct ExperimentSpec {
    std::string name = "experiment";
    GeneratorSpec generator;
    std::int64_t trials = 1000;
    std::uint64_t base_seed = 0;
    std::vector<Analyzer> analyzers;
    ProxyParams proxy;
    std::filesystem::path out_dir;  // empty: nothing is written
    unsigned threads = 0;           // 0: hardware concurrency
    std::optional<double> sup_exp_c;  // also estimate max_t E[exp(c Y_t)]
};

void validate(const ExperimentSpec& spec);
// Stable description of everything that determines the data outputs.
std::string canonical_description(const ExperimentSpec& spec);

// Event values: 0, 1, or kUndefinedEvent where the analyzer does not apply.
inline constexpr std::uint8_t kUndefinedEvent = 2;

struct TrialRecord {
    std::uint64_t seed = 0;
    std::string verdict;
    std::vector<std::uint8_t> events;
    std::vector<double> stats;
};

struct AgreementMatrix {
    std::string group;
    std::vector<std::string> events;
    std::vector<std::vector<double>> rate;         // over trials where both are defined
    std::vector<std::vector<std::int64_t>> count;  // those trial counts
    std::vector<MCEstimate> marginals;

    double min_offdiagonal() const;
};

struct StatSummary {
    std::string name;
    std::int64_t n_finite = 0;
    double mean = 0.0, sd = 0.0, min = 0.0, max = 0.0;
    std::optional<double> z;  // mean_test z-score when defined
};

struct SupExpMoment {
    double c = 0.0;
    std::vector<double> times;
    std::vector<double> log_mean;  // log of the sample mean of exp(c Y_t)
    std::vector<double> se;        // standard error of that mean (linear scale)
    std::size_t argmax = 0;
    double max_log = 0.0;
    std::int64_t trials = 0;
};

struct ExperimentResult {
    std::vector<std::string> event_names;
    std::vector<std::string> stat_names;
    std::vector<TrialRecord> trials;
    std::vector<MCEstimate> marginals;  // one per event, over defined trials
    std::vector<AgreementMatrix> matrices;
    std::vector<StatSummary> stats;
    std::optional<SupExpMoment> sup_exp;
    double wall_seconds = 0.0;
    unsigned threads_used = 1;

    std::size_t event_index(std::string_view name) const;
    std::size_t stat_index(std::string_view name) const;
    const AgreementMatrix& matrix(std::string_view group) const;
    const MCEstimate& marginal(std::string_view event) const;
    const StatSummary& stat(std::string_view name) const;
};

ExperimentResult run_trials(const ExperimentSpec& spec);

// Runs body(i) for every i in [0, count) on a worker pool; rethrows the first failure.
void for_each_trial(std::int64_t count, unsigned threads, const std::function<void(std::int64_t)>& body);
unsigned resolve_threads(unsigned requested);

std::string results_csv(const ExperimentResult& r);
std::string summary_csv(const ExperimentResult& r);
std::string manifest_text(const ExperimentSpec& spec, const ExperimentResult& r);
std::string sup_exp_csv(const SupExpMoment& m);
// Writes results.csv, summary.csv and manifest.txt (plus sup_exp.csv) atomically.
void write_experiment(const ExperimentSpec& spec, const ExperimentResult& r, const std::filesystem::path& dir);

// max over the grid of the sample mean of exp(c Y_t), accumulated in log space with
// a fixed chunking so results do not depend on the thread count.
SupExpMoment sup_exp_moment(const GeneratorSpec& spec, double c, std::int64_t trials, std::uint64_t base_seed,
                            unsigned threads = 0);

}  // namespace jumpconv
