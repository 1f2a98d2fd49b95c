#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jumpconv/generators.hpp"
#include "jumpconv/integrand.hpp"
#include "jumpconv/path.hpp"
#include "jumpconv/transforms.hpp"

namespace jumpconv {

enum class VerdictLabel { converged, diverged_minus, diverged_plus, oscillating, undecided };
std::string_view to_string(VerdictLabel label);

struct Verdict {
    VerdictLabel label = VerdictLabel::undecided;
    double limit = 0.0;  // final value when converged, NaN otherwise
    double final_oscillation = 0.0;
    double final_value = 0.0;
    double window_sup = 0.0;
    double window_inf = 0.0;
    double net_change = 0.0;  // final value minus value at the window start
    double global_sup = 0.0;
    double global_inf = 0.0;
};

struct ProxyParams {
    double window = 0.1;     // final window as a fraction of the horizon
    double tol = 5e-3;       // oscillation below this counts as converged
    double big = 5.0;        // level for divergence and liminf/limsup proxies
    double min_trend = 0.02; // divergence labels also need this net move over the window
    double cap = 1e12;       // finiteness cap on path values of increasing processes
    double eta = 0.25;       // NEG_LOG_TAIL parameter
    double kappa = 1.0;      // POS_TAIL parameter
    std::vector<double> levels{50.0};
};

void validate(const ProxyParams& params);

// Labels, checked in this order: a divergence label when the final-window sup is below
// -big (inf above big) and the path moved at least min_trend that way across the
// window; CONVERGED when the final-window oscillation is below tol; OSCILLATING when it
// exceeds big; UNDECIDED otherwise. Since tol only enters the CONVERGED test,
// shrinking it can only turn CONVERGED into UNDECIDED.
Verdict classify(std::span<const double> times, std::span<const double> values, double window, double tol,
                 double big, double min_trend = 0.02);
Verdict classify(const SamplePath& path, double window, double tol, double big, double min_trend = 0.02);
Verdict classify(const SamplePath& path, const ProxyParams& params);

struct LocalizerLevel {
    double level = 0.0;
    std::optional<double> crossing_time;  // nullopt: never crossed before the horizon
    double stopped_value = 0.0;           // X at the crossing (or at the horizon)
    double jump_at_crossing = 0.0;
    double bound = 0.0;                   // level + |dX at the crossing|
    double stopped_sup_abs = 0.0;         // sup_t |X^{rho_n}_t|
};

struct LocalizerReport {
    std::vector<LocalizerLevel> levels;
    bool coverage = false;           // some level never crossed
    bool domination_holds = true;    // stopped_sup_abs <= bound for every level
};

// Crossing times rho_n = inf{t : |X_t| >= n}. Inside a grid step the continuous part
// moves linearly and the jump comes last, so a continuous crossing stops at exactly
// the level.
LocalizerReport crossing_localizer(const SamplePath& path, std::span<const double> levels);

struct Lemma51 {
    bool sum_converges = false;
    bool sum_sq_finite = false;
    bool sum_abs_finite = false;
    double partial_sum = 0.0;
    double partial_sum_sq = 0.0;
    double partial_sum_abs = 0.0;
};
Lemma51 lemma51_predicates(const XRule& rule, std::int64_t n);

struct PathReports {
    QVSeries qv;
    Verdict x_verdict;
    std::optional<ExpSeries> E;
    std::optional<TransformBundle> transforms;
};

PathReports compute_reports(const Model& model, const Generated& g, const ProxyParams& params,
                            bool with_exponential, bool with_transforms);

struct EventFlags {
    // Conditions (a)-(h) characterising convergence of a local supermartingale.
    bool a = false, b = false, c = false, d = false, e = false, f = false, g = false;
    std::optional<bool> h;
    bool hypothesis = false;  // (dX)^- ∧ X^- stationarily locally integrable (analytic)
    // Convergence events e1-e4, equivalent under the hypothesis above.
    bool e1 = false, e2 = false, e3 = false, e4 = false;
    // Events f1-f4 for exp(X) and its compensator (only when all jumps exceed -1).
    std::optional<bool> f1, f2, f3, f4;
};

// Precomputes the deterministic parts of the flags for one model.
class FlagEvaluator {
public:
    FlagEvaluator(const Model& model, ProxyParams params);
    EventFlags evaluate(const Generated& g, const PathReports& reports) const;
    bool hypothesis() const noexcept { return hypothesis_; }
    bool log_transform_supported() const noexcept { return log_ok_; }
    // Analytic convergence of X on this path (through rho for Cox).
    bool converges_analytic(const Generated& g) const;

private:
    bool limit_finite(const Integrand& f, const Generated& g) const;
    double compensator_at_horizon(const Integrand& f, const Generated& g) const;

    const Model& model_;
    ProxyParams params_;
    bool hypothesis_ = false;
    bool log_ok_ = false;
    // Random walk: deterministic compensators at the horizon.
    double rw_sq_cap_abs_ = 0.0;
    double rw_x_minus_log_ = 0.0;
};

EventFlags event_flags(const Model& model, const Generated& g, const PathReports& reports,
                       const ProxyParams& params);

}  // namespace jumpconv
