#include "jumpconv/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "jumpconv/characteristics.hpp"
#include "jumpconv/io.hpp"
#include "jumpconv/rng.hpp"
#include "jumpconv/transforms.hpp"
#include "jumpconv/version.hpp"

namespace jumpconv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_number(std::string_view text, std::string_view what) {
    try {
        std::size_t used = 0;
        const std::string s(text);
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(fmt::format("analyzer {}: bad number '{}'", what, text));
    }
}

// Runs body(i) for i in [0, count) on `threads` workers; rethrows the first failure.
template <class Body>
void parallel_for(std::int64_t count, unsigned threads, Body&& body) {
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

struct Layout {
    std::vector<std::string> events;
    std::vector<std::string> stats;
    std::vector<std::pair<std::string, std::vector<std::string>>> groups;
    bool verdict_column = false;
};

Layout make_layout(const std::vector<Analyzer>& analyzers) {
    Layout l;
    auto group = [&](std::string name, std::vector<std::string> evs) {
        for (const auto& e : evs) l.events.push_back(e);
        l.groups.emplace_back(std::move(name), std::move(evs));
    };
    for (const Analyzer& a : analyzers) {
        const std::string lv = format_param(a.level);
        switch (a.kind) {
            case AnalyzerKind::verdict:
                l.verdict_column = true;
                l.events.insert(l.events.end(), {"X_converged", "X_diverged_minus", "X_diverged_plus"});
                l.stats.insert(l.stats.end(), {"X_final_osc", "X_window_sup", "X_window_inf"});
                break;
            case AnalyzerKind::conditions: group("conditions", {"a", "b", "c", "d", "e", "f", "g", "h"}); break;
            case AnalyzerKind::events: group("events", {"e1", "e2", "e3", "e4"}); break;
            case AnalyzerKind::exp_events: group("exp_events", {"f1", "f2", "f3", "f4"}); break;
            case AnalyzerKind::survival:
                l.events.push_back("rho_never");
                l.stats.push_back("rho_time");
                break;
            case AnalyzerKind::identity:
                l.stats.insert(l.stats.end(), {"exp_identity_err", "jump_identity_err", "Y_defined"});
                break;
            case AnalyzerKind::qv: l.stats.insert(l.stats.end(), {"qv_total", "qv_cont"}); break;
            case AnalyzerKind::terminal: l.stats.push_back("X_N"); break;
            case AnalyzerKind::localizer:
                l.events.push_back("cover_" + lv);
                l.events.push_back("dominated_" + lv);
                l.stats.push_back("rho_" + lv);
                break;
            case AnalyzerKind::compensator: l.stats.push_back("mart_" + a.integrand->name()); break;
            case AnalyzerKind::fired: l.stats.push_back("n_fired"); break;
            case AnalyzerKind::below: l.events.push_back("X_below_" + lv); break;
            case AnalyzerKind::logexp:
                l.events.push_back("logE_below_" + lv);
                l.stats.push_back("logE_N");
                break;
        }
    }
    for (std::size_t i = 0; i < l.events.size(); ++i)
        for (std::size_t j = i + 1; j < l.events.size(); ++j)
            if (l.events[i] == l.events[j]) throw std::invalid_argument("duplicate analyzer output: " + l.events[i]);
    for (std::size_t i = 0; i < l.stats.size(); ++i)
        for (std::size_t j = i + 1; j < l.stats.size(); ++j)
            if (l.stats[i] == l.stats[j]) throw std::invalid_argument("duplicate analyzer output: " + l.stats[i]);
    return l;
}

struct Context {
    const ExperimentSpec& spec;
    Model model;
    Layout layout;
    std::optional<FlagEvaluator> flags;
    std::vector<double> gammas;
    std::vector<double> rw_compensators;  // per compensator analyzer, random walk only
    bool need_E = false, need_bundle = false, need_flags = false;

    explicit Context(const ExperimentSpec& s) : spec(s), model(compile(s.generator)), layout(make_layout(s.analyzers)) {
        for (const Analyzer& a : s.analyzers) {
            switch (a.kind) {
                case AnalyzerKind::conditions: need_E = true; need_flags = true; break;
                case AnalyzerKind::events: need_flags = true; break;
                case AnalyzerKind::exp_events: need_bundle = true; need_flags = true; break;
                case AnalyzerKind::identity: need_bundle = true; break;
                case AnalyzerKind::logexp: need_E = true; break;
                default: break;
            }
        }
        if (need_flags) flags.emplace(model, s.proxy);
        if (supports_log_transform(model)) gammas = gamma_series(model);
        for (const Analyzer& a : s.analyzers) {
            if (a.kind != AnalyzerKind::compensator) continue;
            if (std::holds_alternative<RandomWalkModel>(model))
                rw_compensators.push_back(compensator_integral(model, *a.integrand, model_grid(model).end()));
        }
    }
};

TrialRecord run_one(const Context& ctx, std::int64_t index) {
    const ExperimentSpec& spec = ctx.spec;
    TrialRecord rec;
    rec.seed = trial_seed(spec.base_seed, static_cast<std::uint64_t>(index));
    const Generated g = generate(ctx.model, rec.seed);
    const PathReports rep = compute_reports(ctx.model, g, spec.proxy, ctx.need_E, ctx.need_bundle);
    std::optional<EventFlags> fl;
    if (ctx.flags) fl = ctx.flags->evaluate(g, rep);

    rec.events.reserve(ctx.layout.events.size());
    rec.stats.reserve(ctx.layout.stats.size());
    auto ev = [&](bool b) { rec.events.push_back(b ? 1 : 0); };
    auto ev_opt = [&](const std::optional<bool>& b) { rec.events.push_back(b ? (*b ? 1 : 0) : kUndefinedEvent); };
    auto st = [&](double v) { rec.stats.push_back(v); };
    const double horizon = model_grid(ctx.model).end();
    std::size_t comp_i = 0;

    for (const Analyzer& a : spec.analyzers) {
        switch (a.kind) {
            case AnalyzerKind::verdict: {
                const Verdict& v = rep.x_verdict;
                rec.verdict = std::string(to_string(v.label));
                ev(v.label == VerdictLabel::converged);
                ev(v.label == VerdictLabel::diverged_minus);
                ev(v.label == VerdictLabel::diverged_plus);
                st(v.final_oscillation);
                st(v.window_sup);
                st(v.window_inf);
                break;
            }
            case AnalyzerKind::conditions:
                ev(fl->a); ev(fl->b); ev(fl->c); ev(fl->d); ev(fl->e); ev(fl->f); ev(fl->g); ev_opt(fl->h);
                break;
            case AnalyzerKind::events: ev(fl->e1); ev(fl->e2); ev(fl->e3); ev(fl->e4); break;
            case AnalyzerKind::exp_events: ev_opt(fl->f1); ev_opt(fl->f2); ev_opt(fl->f3); ev_opt(fl->f4); break;
            case AnalyzerKind::survival: {
                const bool never = g.rho && !g.rho->finite();
                ev(never);
                st(never ? kNaN : g.rho->time);
                break;
            }
            case AnalyzerKind::identity: {
                const TransformBundle& tb = *rep.transforms;
                st(check_exp_identity(tb));
                st(ctx.gammas.empty() ? 0.0 : check_jump_identity(tb, g.path, ctx.gammas));
                st(static_cast<double>(tb.defined_count));
                break;
            }
            case AnalyzerKind::qv:
                st(rep.qv.total.back());
                st(rep.qv.continuous.back());
                break;
            case AnalyzerKind::terminal: st(g.path.final_value()); break;
            case AnalyzerKind::localizer: {
                const double lv[1] = {a.level};
                const LocalizerReport lr = crossing_localizer(g.path, lv);
                ev(lr.coverage);
                ev(lr.domination_holds);
                st(lr.levels[0].crossing_time ? *lr.levels[0].crossing_time : kNaN);
                break;
            }
            case AnalyzerKind::compensator: {
                const Integrand& f = *a.integrand;
                const double mu = empirical_jump_integral(g.path, f, ctx.gammas).back();
                const double nu = std::holds_alternative<RandomWalkModel>(ctx.model)
                                      ? ctx.rw_compensators[comp_i]
                                      : compensator_at(ctx.model, f, g, horizon);
                ++comp_i;
                st(mu - nu);
                break;
            }
            case AnalyzerKind::fired: {
                if (std::holds_alternative<RandomWalkModel>(ctx.model)) {
                    st(static_cast<double>(g.fired.size()));
                } else {
                    std::size_t n = 0;
                    for (double j : g.path.jumps()) n += j != 0.0;
                    st(static_cast<double>(n));
                }
                break;
            }
            case AnalyzerKind::below: ev(g.path.final_value() < a.level); break;
            case AnalyzerKind::logexp: {
                const double le = rep.E->log_abs.back();
                ev(le < a.level);
                st(le);
                break;
            }
        }
    }
    return rec;
}

StatSummary summarize(const std::string& name, const std::vector<double>& xs) {
    StatSummary s;
    s.name = name;
    std::vector<double> fin;
    fin.reserve(xs.size());
    for (double x : xs)
        if (std::isfinite(x)) fin.push_back(x);
    s.n_finite = static_cast<std::int64_t>(fin.size());
    if (fin.empty()) {
        s.mean = s.sd = s.min = s.max = kNaN;
        return s;
    }
    auto [lo, hi] = std::minmax_element(fin.begin(), fin.end());
    s.min = *lo;
    s.max = *hi;
    if (fin.size() >= 2) {
        try {
            const MeanTest t = mean_test(fin);
            s.mean = t.mean;
            s.sd = t.sd;
            s.z = t.z;
        } catch (const std::domain_error&) {
            s.mean = fin.front();
            s.sd = 0.0;
        }
    } else {
        s.mean = fin.front();
        s.sd = kNaN;
    }
    return s;
}

MCEstimate marginal_of(const std::vector<TrialRecord>& trials, std::size_t e) {
    std::int64_t n = 0, k = 0;
    for (const auto& t : trials) {
        if (t.events[e] == kUndefinedEvent) continue;
        ++n;
        k += t.events[e];
    }
    if (n == 0) return MCEstimate{0.0, 0, 0, 0.0, 1.0};
    return wilson(k, n);
}

std::string field(double v) { return std::isnan(v) ? std::string() : format_real(v); }

}  // namespace

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void for_each_trial(std::int64_t count, unsigned threads, const std::function<void(std::int64_t)>& body) {
    parallel_for(count, resolve_threads(threads), body);
}

Analyzer Analyzer::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    Analyzer a;
    struct Entry {
        std::string_view name;
        AnalyzerKind kind;
        bool takes_arg;
    };
    static constexpr Entry table[] = {
        {"verdict", AnalyzerKind::verdict, false},   {"conditions", AnalyzerKind::conditions, false},
        {"events", AnalyzerKind::events, false},     {"exp_events", AnalyzerKind::exp_events, false},
        {"survival", AnalyzerKind::survival, false}, {"identity", AnalyzerKind::identity, false},
        {"qv", AnalyzerKind::qv, false},             {"terminal", AnalyzerKind::terminal, false},
        {"fired", AnalyzerKind::fired, false},       {"localizer", AnalyzerKind::localizer, true},
        {"compensator", AnalyzerKind::compensator, true}, {"below", AnalyzerKind::below, true},
        {"logexp", AnalyzerKind::logexp, true},
    };
    for (const Entry& e : table) {
        if (e.name != head) continue;
        a.kind = e.kind;
        if (e.takes_arg == (colon == std::string_view::npos) || (e.takes_arg && arg.empty()))
            throw std::invalid_argument(fmt::format("analyzer '{}': {}", text,
                                                    e.takes_arg ? "needs an argument after ':'" : "takes no argument"));
        if (a.kind == AnalyzerKind::compensator) {
            a.integrand = Integrand::parse(arg);
        } else if (e.takes_arg) {
            a.level = parse_number(arg, head);
            if (!std::isfinite(a.level)) throw std::invalid_argument("analyzer level must be finite");
            if (a.kind == AnalyzerKind::localizer && !(a.level > 0.0))
                throw std::invalid_argument("localizer level must be positive");
        }
        return a;
    }
    throw std::invalid_argument(fmt::format("unknown analyzer '{}'", text));
}

std::string Analyzer::name() const {
    switch (kind) {
        case AnalyzerKind::verdict: return "verdict";
        case AnalyzerKind::conditions: return "conditions";
        case AnalyzerKind::events: return "events";
        case AnalyzerKind::exp_events: return "exp_events";
        case AnalyzerKind::survival: return "survival";
        case AnalyzerKind::identity: return "identity";
        case AnalyzerKind::qv: return "qv";
        case AnalyzerKind::terminal: return "terminal";
        case AnalyzerKind::fired: return "fired";
        case AnalyzerKind::localizer: return "localizer:" + format_param(level);
        case AnalyzerKind::compensator: return "compensator:" + integrand->name();
        case AnalyzerKind::below: return "below:" + format_param(level);
        case AnalyzerKind::logexp: return "logexp:" + format_param(level);
    }
    return "?";
}

void validate(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (spec.analyzers.empty()) throw std::invalid_argument("analyzer list must not be empty");
    validate(spec.proxy);
    const Model model = compile(spec.generator);
    const bool is_cox = std::holds_alternative<CoxModel>(model);
    for (const Analyzer& a : spec.analyzers) {
        if (a.kind == AnalyzerKind::survival && !is_cox)
            throw std::invalid_argument("survival analyzer needs a Cox generator");
        if (a.kind == AnalyzerKind::exp_events && !supports_log_transform(model))
            throw std::invalid_argument("exp_events analyzer needs a law with all jumps above -1");
        if (a.kind == AnalyzerKind::compensator && std::holds_alternative<DetAlternatingModel>(model))
            throw std::invalid_argument("compensator analyzer is not defined for the deterministic path");
    }
    if (spec.sup_exp_c) {
        if (*spec.sup_exp_c == 0.0 || !std::isfinite(*spec.sup_exp_c))
            throw std::invalid_argument("sup_exp c must be finite and nonzero");
        if (!supports_log_transform(model))
            throw std::invalid_argument("sup_exp needs a law with all jumps above -1");
    }
    make_layout(spec.analyzers);
}

std::string canonical_description(const ExperimentSpec& spec) {
    std::string s = fmt::format("generator={};trials={};base_seed={};analyzers=", describe(spec.generator),
                                spec.trials, spec.base_seed);
    for (std::size_t i = 0; i < spec.analyzers.size(); ++i) s += (i ? "," : "") + spec.analyzers[i].name();
    const ProxyParams& p = spec.proxy;
    s += fmt::format(";window={};tol={};big={};min_trend={};cap={};eta={};kappa={}", format_real(p.window),
                     format_real(p.tol), format_real(p.big), format_real(p.min_trend), format_real(p.cap),
                     format_real(p.eta), format_real(p.kappa));
    if (spec.sup_exp_c) s += ";sup_exp_c=" + format_real(*spec.sup_exp_c);
    return s;
}

std::size_t ExperimentResult::event_index(std::string_view name) const {
    for (std::size_t i = 0; i < event_names.size(); ++i)
        if (event_names[i] == name) return i;
    throw std::out_of_range(fmt::format("no event '{}'", name));
}

std::size_t ExperimentResult::stat_index(std::string_view name) const {
    for (std::size_t i = 0; i < stat_names.size(); ++i)
        if (stat_names[i] == name) return i;
    throw std::out_of_range(fmt::format("no statistic '{}'", name));
}

const AgreementMatrix& ExperimentResult::matrix(std::string_view group) const {
    for (const auto& m : matrices)
        if (m.group == group) return m;
    throw std::out_of_range(fmt::format("no agreement group '{}'", group));
}

const MCEstimate& ExperimentResult::marginal(std::string_view event) const { return marginals[event_index(event)]; }
const StatSummary& ExperimentResult::stat(std::string_view name) const { return stats[stat_index(name)]; }

double AgreementMatrix::min_offdiagonal() const {
    double m = 1.0;
    for (std::size_t i = 0; i < rate.size(); ++i)
        for (std::size_t j = 0; j < rate.size(); ++j)
            if (i != j && count[i][j] > 0) m = std::min(m, rate[i][j]);
    return m;
}

ExperimentResult run_trials(const ExperimentSpec& spec) {
    validate(spec);
    const auto t0 = std::chrono::steady_clock::now();
    const Context ctx(spec);
    ExperimentResult r;
    r.event_names = ctx.layout.events;
    r.stat_names = ctx.layout.stats;
    r.threads_used = resolve_threads(spec.threads);
    r.trials.resize(static_cast<std::size_t>(spec.trials));
    parallel_for(spec.trials, r.threads_used,
                 [&](std::int64_t i) { r.trials[static_cast<std::size_t>(i)] = run_one(ctx, i); });

    for (std::size_t e = 0; e < r.event_names.size(); ++e) r.marginals.push_back(marginal_of(r.trials, e));

    for (const auto& [gname, evs] : ctx.layout.groups) {
        AgreementMatrix m;
        m.group = gname;
        m.events = evs;
        const std::size_t k = evs.size();
        std::vector<std::size_t> idx;
        for (const auto& e : evs) idx.push_back(r.event_index(e));
        m.rate.assign(k, std::vector<double>(k, 1.0));
        m.count.assign(k, std::vector<std::int64_t>(k, 0));
        for (std::size_t i = 0; i < k; ++i) {
            m.marginals.push_back(r.marginals[idx[i]]);
            for (std::size_t j = 0; j < k; ++j) {
                std::int64_t n = 0, agree = 0;
                for (const auto& t : r.trials) {
                    const auto a = t.events[idx[i]], b = t.events[idx[j]];
                    if (a == kUndefinedEvent || b == kUndefinedEvent) continue;
                    ++n;
                    agree += a == b;
                }
                m.count[i][j] = n;
                m.rate[i][j] = (i == j || n == 0) ? 1.0 : static_cast<double>(agree) / static_cast<double>(n);
            }
        }
        r.matrices.push_back(std::move(m));
    }

    for (std::size_t s = 0; s < r.stat_names.size(); ++s) {
        std::vector<double> xs;
        xs.reserve(r.trials.size());
        for (const auto& t : r.trials) xs.push_back(t.stats[s]);
        r.stats.push_back(summarize(r.stat_names[s], xs));
    }

    if (spec.sup_exp_c) r.sup_exp = sup_exp_moment(spec.generator, *spec.sup_exp_c, spec.trials, spec.base_seed, spec.threads);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string results_csv(const ExperimentResult& r) {
    std::string out = "trial,seed";
    const bool verdict = !r.trials.empty() && !r.trials.front().verdict.empty();
    if (verdict) out += ",verdict";
    for (const auto& e : r.event_names) out += "," + e;
    for (const auto& s : r.stat_names) out += "," + s;
    out += "\n";
    for (std::size_t i = 0; i < r.trials.size(); ++i) {
        const TrialRecord& t = r.trials[i];
        out += fmt::format("{},{}", i, t.seed);
        if (verdict) out += "," + t.verdict;
        for (auto e : t.events) out += e == kUndefinedEvent ? std::string(",") : fmt::format(",{}", int(e));
        for (double v : t.stats) out += "," + field(v);
        out += "\n";
    }
    return out;
}

std::string summary_csv(const ExperimentResult& r) {
    std::string out = "section,name,n,value,lo,hi,z\n";
    for (std::size_t e = 0; e < r.event_names.size(); ++e) {
        const MCEstimate& m = r.marginals[e];
        out += fmt::format("marginal,{},{},{},{},{},\n", r.event_names[e], m.n, format_real(m.p_hat),
                           format_real(m.lo), format_real(m.hi));
    }
    for (const auto& m : r.matrices) {
        for (std::size_t i = 0; i < m.events.size(); ++i)
            for (std::size_t j = i + 1; j < m.events.size(); ++j)
                out += fmt::format("agreement,{}:{}|{},{},{},,,\n", m.group, m.events[i], m.events[j], m.count[i][j],
                                   format_real(m.rate[i][j]));
    }
    for (const auto& s : r.stats) {
        out += fmt::format("stat_mean,{},{},{},{},{},{}\n", s.name, s.n_finite, field(s.mean), field(s.min),
                           field(s.max), s.z ? format_real(*s.z) : std::string());
        out += fmt::format("stat_sd,{},{},{},,,\n", s.name, s.n_finite, field(s.sd));
    }
    if (r.sup_exp) {
        const SupExpMoment& m = *r.sup_exp;
        out += fmt::format("sup_exp_log_max,c={},{},{},,,\n", format_real(m.c), m.trials, format_real(m.max_log));
        out += fmt::format("sup_exp_argmax_time,c={},{},{},,,\n", format_real(m.c), m.trials,
                           format_real(m.times[m.argmax]));
    }
    return out;
}

std::string manifest_text(const ExperimentSpec& spec, const ExperimentResult& r) {
    const std::string desc = canonical_description(spec);
    const std::string results = results_csv(r);
    std::string out;
    auto kv = [&](std::string_view k, const std::string& v) { out += fmt::format("{}={}\n", k, v); };
    kv("tool", "jumpconv");
    kv("version", std::string(kVersion));
    kv("name", spec.name);
    kv("generator", describe(spec.generator));
    std::string an;
    for (std::size_t i = 0; i < spec.analyzers.size(); ++i) an += (i ? "," : "") + spec.analyzers[i].name();
    kv("analyzers", an);
    kv("trials", std::to_string(spec.trials));
    kv("base_seed", std::to_string(spec.base_seed));
    kv("seed_rule", "seed_i = mix64(base_seed ^ mix64(i + 0x9E3779B97F4A7C15)), mix64 = splitmix64 finalizer");
    if (!r.trials.empty()) {
        kv("first_seed", std::to_string(r.trials.front().seed));
        kv("last_seed", std::to_string(r.trials.back().seed));
    }
    kv("rng", "philox4x32-10");
    kv("proxy", desc.substr(desc.find(";window=") + 1));
    kv("spec_hash", fmt::format("{:016x}", fnv1a64(desc)));
    kv("results_hash", fmt::format("{:016x}", fnv1a64(results)));
    kv("threads", std::to_string(r.threads_used));
    kv("wall_seconds", fmt::format("{:.3f}", r.wall_seconds));
    return out;
}

std::string sup_exp_csv(const SupExpMoment& m) {
    std::string out = "t,log_mean,mean,se\n";
    for (std::size_t k = 0; k < m.times.size(); ++k)
        out += fmt::format("{},{},{},{}\n", format_real(m.times[k]), format_real(m.log_mean[k]),
                           format_real(std::exp(m.log_mean[k])), format_real(m.se[k]));
    return out;
}

void write_experiment(const ExperimentSpec& spec, const ExperimentResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
    write_file_atomic(dir / "results.csv", results_csv(r));
    write_file_atomic(dir / "summary.csv", summary_csv(r));
    if (r.sup_exp) write_file_atomic(dir / "sup_exp.csv", sup_exp_csv(*r.sup_exp));
    write_file_atomic(dir / "manifest.txt", manifest_text(spec, r));
}

SupExpMoment sup_exp_moment(const GeneratorSpec& gspec, double c, std::int64_t trials, std::uint64_t base_seed,
                            unsigned threads) {
    if (c == 0.0 || !std::isfinite(c)) throw std::invalid_argument("sup_exp_moment: c must be finite and nonzero");
    if (trials < 2) throw std::invalid_argument("sup_exp_moment: need at least two trials");
    const Model model = compile(gspec);
    if (!supports_log_transform(model))
        throw std::invalid_argument("sup_exp_moment: Y needs a law with all jumps above -1");
    const TimeGrid& grid = model_grid(model);
    const std::size_t n_t = grid.size();

    constexpr std::int64_t kChunk = 256;
    const std::int64_t n_chunks = (trials + kChunk - 1) / kChunk;
    struct Acc {
        std::vector<LogSumExp> s1, s2;
    };
    Acc total{std::vector<LogSumExp>(n_t), std::vector<LogSumExp>(n_t)};
    std::map<std::int64_t, Acc> pending;
    std::int64_t next_merge = 0;
    std::mutex mu;

    parallel_for(n_chunks, resolve_threads(threads), [&](std::int64_t chunk) {
        Acc acc{std::vector<LogSumExp>(n_t), std::vector<LogSumExp>(n_t)};
        const std::int64_t lo = chunk * kChunk, hi = std::min(trials, lo + kChunk);
        for (std::int64_t i = lo; i < hi; ++i) {
            const Generated g = generate(model, trial_seed(base_seed, static_cast<std::uint64_t>(i)));
            const LogTransform y = logarithmic_transform(model, g);
            if (y.values.size() != n_t) throw std::runtime_error("sup_exp_moment: Y undefined on part of the grid");
            for (std::size_t k = 0; k < n_t; ++k) {
                acc.s1[k].add(c * y.values[k]);
                acc.s2[k].add(2.0 * c * y.values[k]);
            }
        }
        // Merge strictly in chunk order so the floating-point sums do not depend on scheduling.
        std::lock_guard lock(mu);
        pending.emplace(chunk, std::move(acc));
        for (auto it = pending.find(next_merge); it != pending.end(); it = pending.find(next_merge)) {
            for (std::size_t k = 0; k < n_t; ++k) {
                total.s1[k].merge(it->second.s1[k]);
                total.s2[k].merge(it->second.s2[k]);
            }
            pending.erase(it);
            ++next_merge;
        }
    });

    SupExpMoment m;
    m.c = c;
    m.trials = trials;
    m.times.assign(grid.times().begin(), grid.times().end());
    m.log_mean.resize(n_t);
    m.se.resize(n_t);
    const double log_n = std::log(static_cast<double>(trials));
    const double nn = static_cast<double>(trials);
    for (std::size_t k = 0; k < n_t; ++k) {
        const double lm = total.s1[k].log_sum() - log_n;
        const double lm2 = total.s2[k].log_sum() - log_n;
        m.log_mean[k] = lm;
        // var = (E Z^2 - (E Z)^2) n/(n-1), computed relative to (E Z)^2.
        const double ratio = std::exp(lm2 - 2.0 * lm);
        const double var_rel = std::max(0.0, ratio - 1.0) * nn / (nn - 1.0);
        m.se[k] = std::exp(lm) * std::sqrt(var_rel / nn);
        if (k == 0 || lm > m.max_log) {
            m.max_log = lm;
            m.argmax = k;
        }
    }
    return m;
}

}  // namespace jumpconv
