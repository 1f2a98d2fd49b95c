#include "jumpconv/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jumpconv/analytic.hpp"
#include "jumpconv/characteristics.hpp"

namespace jumpconv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_classify_params(double window, double tol, double big, double min_trend) {
    if (!(window > 0.0 && window < 1.0)) throw std::invalid_argument("classify: window must lie in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be positive");
    if (!(big > 0.0)) throw std::invalid_argument("classify: big must be positive");
    if (tol > big) throw std::invalid_argument("classify: tol must not exceed big");
    if (!(min_trend >= 0.0) || !std::isfinite(min_trend))
        throw std::invalid_argument("classify: min_trend must be finite and nonnegative");
}

// First index whose time lies in the final window.
std::size_t window_start(std::span<const double> times, double window) {
    const double cut = times.back() - window * (times.back() - times.front());
    auto it = std::lower_bound(times.begin(), times.end(), cut);
    auto k = static_cast<std::size_t>(it - times.begin());
    return std::min(k, times.size() - 1);
}

}  // namespace

std::string_view to_string(VerdictLabel label) {
    switch (label) {
        case VerdictLabel::converged: return "CONVERGED";
        case VerdictLabel::diverged_minus: return "DIVERGED_MINUS";
        case VerdictLabel::diverged_plus: return "DIVERGED_PLUS";
        case VerdictLabel::oscillating: return "OSCILLATING";
        case VerdictLabel::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

void validate(const ProxyParams& p) {
    check_classify_params(p.window, p.tol, p.big, p.min_trend);
    if (!(p.cap > 0.0)) throw std::invalid_argument("proxy cap must be positive");
    if (!(p.eta > 0.0 && p.eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    if (!(p.kappa > 0.0) || !std::isfinite(p.kappa)) throw std::invalid_argument("kappa must be positive");
    for (std::size_t i = 0; i < p.levels.size(); ++i) {
        if (!(p.levels[i] > 0.0) || (i > 0 && !(p.levels[i] > p.levels[i - 1])))
            throw std::invalid_argument("localizer levels must be positive and increasing");
    }
}

Verdict classify(std::span<const double> times, std::span<const double> values, double window, double tol,
                 double big, double min_trend) {
    check_classify_params(window, tol, big, min_trend);
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("classify: need at least two points with matching times");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("classify: non-finite value");

    Verdict v;
    const std::size_t k0 = window_start(times, window);
    double sup = values[k0], inf = values[k0];
    for (std::size_t k = k0; k < values.size(); ++k) {
        sup = std::max(sup, values[k]);
        inf = std::min(inf, values[k]);
    }
    auto [gmin, gmax] = std::minmax_element(values.begin(), values.end());
    v.window_sup = sup;
    v.window_inf = inf;
    v.global_sup = *gmax;
    v.global_inf = *gmin;
    v.final_value = values.back();
    v.final_oscillation = sup - inf;
    v.net_change = values.back() - values[k0];
    v.limit = kNaN;

    if (sup < -big && v.net_change <= -min_trend) {
        v.label = VerdictLabel::diverged_minus;
    } else if (inf > big && v.net_change >= min_trend) {
        v.label = VerdictLabel::diverged_plus;
    } else if (v.final_oscillation < tol) {
        v.label = VerdictLabel::converged;
        v.limit = v.final_value;
    } else if (v.final_oscillation > big) {
        v.label = VerdictLabel::oscillating;
    } else {
        v.label = VerdictLabel::undecided;
    }
    return v;
}

Verdict classify(const SamplePath& path, double window, double tol, double big, double min_trend) {
    return classify(path.grid().times(), path.values(), window, tol, big, min_trend);
}

Verdict classify(const SamplePath& path, const ProxyParams& p) {
    return classify(path, p.window, p.tol, p.big, p.min_trend);
}

LocalizerReport crossing_localizer(const SamplePath& path, std::span<const double> levels) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0) || (i > 0 && !(levels[i] > levels[i - 1])))
            throw std::invalid_argument("crossing_localizer: levels must be positive and increasing");
    }
    LocalizerReport rep;
    rep.levels.resize(levels.size());
    const std::size_t n = path.size();

    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double L = levels[i];
        LocalizerLevel& out = rep.levels[i];
        out.level = L;
        double sup_abs = 0.0;
        bool crossed = false;

        if (std::abs(path.value(0)) >= L) {
            crossed = true;
            out.crossing_time = path.time(0);
            out.stopped_value = path.value(0);
            sup_abs = std::abs(path.value(0));
        } else {
            sup_abs = std::abs(path.value(0));
            for (std::size_t k = 1; k < n && !crossed; ++k) {
                const double prev = path.value(k - 1);
                const double left = path.left_value(k);
                if (std::abs(left) >= L) {
                    // Continuous crossing inside step k: X moves linearly from prev to left.
                    const double target = left >= L ? L : -L;
                    const double frac = (target - prev) / (left - prev);
                    out.crossing_time = path.time(k - 1) + frac * (path.time(k) - path.time(k - 1));
                    out.stopped_value = target;
                    sup_abs = std::max(sup_abs, L);
                    crossed = true;
                } else if (std::abs(path.value(k)) >= L) {
                    out.crossing_time = path.time(k);
                    out.stopped_value = path.value(k);
                    out.jump_at_crossing = path.jump(k);
                    sup_abs = std::max({sup_abs, std::abs(left), std::abs(path.value(k))});
                    crossed = true;
                } else {
                    sup_abs = std::max(sup_abs, std::abs(path.value(k)));
                }
            }
        }
        if (!crossed) out.stopped_value = path.final_value();
        out.stopped_sup_abs = sup_abs;
        out.bound = L + std::abs(out.jump_at_crossing);
        if (!(out.stopped_sup_abs <= out.bound)) rep.domination_holds = false;
        if (!crossed) rep.coverage = true;
    }
    return rep;
}

Lemma51 lemma51_predicates(const XRule& rule, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("lemma51_predicates: N must be positive");
    Lemma51 out;
    if (rule.preset == XPreset::explicit_list) {
        out.sum_converges = out.sum_sq_finite = out.sum_abs_finite = true;
    } else {
        const XPresetTraits t = traits(rule.preset);
        out.sum_converges = t.sum_converges;
        out.sum_sq_finite = t.sum_sq_finite;
        out.sum_abs_finite = t.sum_abs_finite;
    }
    RandomWalkSpec spec;
    spec.x = rule;
    spec.horizon = n;
    const RandomWalkModel model(spec);
    for (std::int64_t k = 1; k <= n; ++k) {
        const double x = model.x(k);
        out.partial_sum += x;
        out.partial_sum_sq += x * x;
        out.partial_sum_abs += std::abs(x);
    }
    return out;
}

PathReports compute_reports(const Model& model, const Generated& g, const ProxyParams& params,
                            bool with_exponential, bool with_transforms) {
    PathReports r;
    r.qv = quadratic_variation(g.path);
    r.x_verdict = classify(g.path, params);
    if (with_transforms) {
        r.transforms = make_transform_bundle(model, g);
        r.E = r.transforms->E;
    } else if (with_exponential) {
        r.E = stochastic_exponential(g.path);
    }
    return r;
}

FlagEvaluator::FlagEvaluator(const Model& model, ProxyParams params) : model_(model), params_(std::move(params)) {
    validate(params_);
    log_ok_ = supports_log_transform(model_);
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandomWalkModel>) {
                const auto& x = m.spec().x;
                hypothesis_ = x.preset == XPreset::explicit_list ? true : traits(x.preset).neg_part_sli;
                const double T_end = m.grid().end();
                rw_sq_cap_abs_ = compensator_integral(model_, Integrand::sq_cap_abs(), T_end);
                if (log_ok_) rw_x_minus_log_ = compensator_integral(model_, Integrand::x_minus_log(), T_end);
            } else if constexpr (std::is_same_v<T, CoxModel>) {
                // Positive jumps: (dX)^- vanishes. The negated variant has a negative jump
                // of unbounded size with X^- equal to it afterwards.
                hypothesis_ = !m.spec().negate_jump;
            } else {
                hypothesis_ = true;
            }
        },
        model_);
}

bool FlagEvaluator::converges_analytic(const Generated& g) const {
    return std::visit(
        [&](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RandomWalkModel>) {
                const auto& x = m.spec().x;
                return x.preset == XPreset::explicit_list ? true : traits(x.preset).sum_converges;
            } else if constexpr (std::is_same_v<T, CoxModel>) {
                if (m.spec().with_bm) return false;
                if (m.spec().negate_jump) return true;
                if (g.rho && g.rho->finite()) return true;
                return std::isfinite(m.drift_integral_total());
            } else {
                return true;
            }
        },
        model_);
}

bool FlagEvaluator::limit_finite(const Integrand& f, const Generated& g) const {
    return compensator_limit_finite(model_, f, &g);
}

double FlagEvaluator::compensator_at_horizon(const Integrand& f, const Generated& g) const {
    if (std::holds_alternative<RandomWalkModel>(model_)) {
        if (f == Integrand::sq_cap_abs()) return rw_sq_cap_abs_;
        if (f == Integrand::x_minus_log()) return rw_x_minus_log_;
    }
    return compensator_at(model_, f, g, model_grid(model_).end());
}

EventFlags FlagEvaluator::evaluate(const Generated& g, const PathReports& r) const {
    const SamplePath& path = g.path;
    if (r.qv.total.size() != path.size()) throw std::invalid_argument("event_flags: reports do not match the path");
    const Verdict& v = r.x_verdict;
    const double cap = params_.cap;
    EventFlags fl;
    fl.hypothesis = hypothesis_;

    fl.a = v.label == VerdictLabel::converged;
    fl.b = v.window_inf > -params_.big;
    const bool limsup = v.window_sup > -params_.big;

    const bool conv = converges_analytic(g);
    fl.c = fl.d = fl.e = hypothesis_ && conv;

    const bool has_bm = path.has_diffusion();
    const bool pred_finite = predictable_part_finite(model_, g);
    const bool f_analytic = !has_bm && pred_finite && limit_finite(Integrand::sq_cap_abs(), g);
    bool f_path = false;
    if (f_analytic) {
        const std::vector<double> A = predictable_part(model_, g);
        const double a_end = A.empty() ? 0.0 : std::abs(A.back());
        const double total = r.qv.continuous.back() + compensator_at_horizon(Integrand::sq_cap_abs(), g) + a_end;
        f_path = std::isfinite(total) && total <= cap;
    }
    fl.f = f_analytic && f_path;

    const std::size_t k0 = window_start(path.grid().times(), params_.window);
    const double qv_end = r.qv.total.back();
    const bool qv_proxy = qv_end <= cap && (qv_end - r.qv.total[k0]) < params_.tol;
    fl.g = qv_proxy && limsup && hypothesis_;

    if (r.E) {
        const ExpSeries& E = *r.E;
        bool h = false;
        if (tau_J(path)) {
            h = true;
        } else {
            bool same_sign = true;
            for (std::size_t k = k0; k < E.size(); ++k) same_sign = same_sign && E.sign[k] == E.sign.back();
            bool finite = true;
            for (double x : E.log_abs) finite = finite && std::isfinite(x);
            if (same_sign && finite) {
                const Verdict ev = classify(path.grid().times(), E.log_abs, params_.window, params_.tol,
                                            params_.big, params_.min_trend);
                h = ev.label == VerdictLabel::converged;
            }
        }
        fl.h = h;
    }

    fl.e1 = fl.a;
    fl.e2 = fl.b;
    fl.e3 = fl.f;
    fl.e4 = qv_proxy && limsup;

    if (log_ok_ && r.transforms) {
        const TransformBundle& tb = *r.transforms;
        bool y_conv = false;
        if (!tb.Y.truncated && tb.Y.values.size() == path.size()) {
            const Verdict yv = classify(path.grid().times(), tb.Y.values, params_.window, params_.tol,
                                        params_.big, params_.min_trend);
            y_conv = yv.label == VerdictLabel::converged;
        }
        const bool v_analytic = !has_bm && limit_finite(Integrand::x_minus_log(), g);
        bool v_path = false;
        if (v_analytic && !tb.V.empty()) v_path = std::isfinite(tb.V.back()) && tb.V.back() <= cap;
        fl.f1 = fl.a && y_conv;
        fl.f2 = v_analytic && v_path;
        fl.f3 = fl.a && limit_finite(Integrand::neg_log_tail(params_.eta), g);
        fl.f4 = y_conv && limit_finite(Integrand::pos_tail(params_.kappa), g);
    }
    return fl;
}

EventFlags event_flags(const Model& model, const Generated& g, const PathReports& reports,
                       const ProxyParams& params) {
    return FlagEvaluator(model, params).evaluate(g, reports);
}

}  // namespace jumpconv
