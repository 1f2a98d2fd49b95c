#include "jumpconv/generators.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "jumpconv/rng.hpp"

namespace jumpconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

bool schedule_ok(int k, std::int64_t n) {
    const long double nn = static_cast<long double>(n);
    const long double log_p = -k * kLn2;
    // log(p log(1 + 1/p)) with log(1 + 2^k) = k log 2 + log1p(2^-k)
    const long double lhs1 = log_p + std::log(k * kLn2 + std::log1p(std::ldexp(1.0L, -k)));
    const bool first = lhs1 <= -3.0L * std::log(nn);
    const long double rhs2 = -nn * kLn2 + nn * std::log(std::expm1(1.0L / (nn * nn)));
    return first && log_p <= rhs2;
}

std::vector<double> x_table(const RandomWalkSpec& s, const std::vector<long double>& p) {
    const auto N = static_cast<std::size_t>(s.horizon);
    std::vector<double> x(N);
    switch (s.x.preset) {
        case XPreset::zero: break;
        case XPreset::alt_sqrt:
            for (std::size_t i = 0; i < N; ++i) {
                const double n = static_cast<double>(i + 1);
                x[i] = ((i + 1) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(n);
            }
            break;
        case XPreset::ones: std::fill(x.begin(), x.end(), 1.0); break;
        case XPreset::osc_harmonic: {
            double sum = 0.0, sign = 1.0, level = 1.0;
            for (std::size_t i = 0; i < N; ++i) {
                x[i] = sign / static_cast<double>(i + 1);
                sum += x[i];
                if (sign * sum >= level) {
                    if (sign < 0) level += 1.0;
                    sign = -sign;
                }
            }
            break;
        }
        case XPreset::exp_alt_sqrt:
            for (std::size_t i = 0; i < N; ++i) {
                const double n = static_cast<double>(i + 1);
                x[i] = std::expm1(((i + 1) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(n));
            }
            break;
        case XPreset::neg_harmonic:
            for (std::size_t i = 0; i < N; ++i) x[i] = -1.0 / static_cast<double>(i + 1);
            break;
        case XPreset::alt_harmonic:
            for (std::size_t i = 0; i < N; ++i)
                x[i] = ((i + 1) % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(i + 1);
            break;
        case XPreset::minus_half: std::fill(x.begin(), x.end(), -0.5); break;
        case XPreset::bounded_alt:
            for (std::size_t i = 0; i < N; ++i)
                x[i] = ((i + 1) % 2 == 0 ? 0.5 : -0.5) * static_cast<double>(p[i]);
            break;
        case XPreset::explicit_list:
            for (std::size_t i = 0; i < N && i < s.x.values.size(); ++i) x[i] = s.x.values[i];
            break;
    }
    if (s.x.zero_first && N > 0) x[0] = 0.0;
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("x rule produced a non-finite value");
    return x;
}

std::vector<long double> p_table(const RandomWalkSpec& s) {
    const auto N = static_cast<std::size_t>(s.horizon);
    std::vector<long double> p(N);
    const PRule& r = s.p;
    switch (r.kind) {
        case PKind::geometric:
            if (!(r.base > 1.0) || !(r.scale > 0.0)) throw std::invalid_argument("geometric p rule needs base > 1, scale > 0");
            for (std::size_t i = 0; i < N; ++i)
                p[i] = static_cast<long double>(r.scale) *
                       std::pow(static_cast<long double>(r.base), -static_cast<long double>(i + 1));
            break;
        case PKind::inverse_power:
            if (!(r.exponent > 1.0) || !(r.scale > 0.0))
                throw std::invalid_argument("inverse_power p rule needs exponent > 1 (summable) and scale > 0");
            for (std::size_t i = 0; i < N; ++i)
                p[i] = static_cast<long double>(r.scale) *
                       std::pow(static_cast<long double>(i + 2), -static_cast<long double>(r.exponent));
            break;
        case PKind::example56: {
            const auto sched = example56_schedule(0.5, s.horizon);
            for (std::size_t i = 0; i < N; ++i) p[i] = sched.p(static_cast<std::int64_t>(i + 1));
            break;
        }
        case PKind::explicit_list:
            if (r.values.size() < N) throw std::invalid_argument("explicit p list shorter than the horizon");
            for (std::size_t i = 0; i < N; ++i) p[i] = r.values[i];
            break;
    }
    for (std::size_t i = 0; i < N; ++i)
        if (!(p[i] > 0.0L && p[i] < 1.0L))
            throw std::invalid_argument(fmt::format("p_{} must lie in (0,1)", i + 1));
    return p;
}

}  // namespace

// ---------------------------------------------------------------- schedule

int Example56Schedule::exponent(std::int64_t n) const {
    if (n < 1 || n > size()) throw std::out_of_range("schedule index out of range");
    return exponents[static_cast<std::size_t>(n - 1)];
}

long double Example56Schedule::p(std::int64_t n) const { return std::ldexp(1.0L, -exponent(n)); }

long double Example56Schedule::log_p(std::int64_t n) const { return -exponent(n) * kLn2; }

std::int64_t Example56Schedule::threshold_index() const {
    const double t = std::max(-c, 1.0 / (1.0 - c));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t)));
}

Example56Schedule example56_schedule(double c, std::int64_t n_max) {
    if (!(c < 1.0)) throw std::invalid_argument("schedule needs c < 1");
    if (n_max < 1 || n_max > 5000) throw std::invalid_argument("schedule length must lie in [1, 5000]");
    Example56Schedule s;
    s.c = c;
    s.exponents.reserve(static_cast<std::size_t>(n_max));
    int k = 1;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        // Both constraints tighten with n, so the search can resume from the previous k.
        while (!schedule_ok(k, n)) ++k;
        s.exponents.push_back(k);
    }
    return s;
}

// ---------------------------------------------------------------- random walk

RandomWalkModel::RandomWalkModel(RandomWalkSpec spec)
    : spec_(std::move(spec)), grid_(TimeGrid::integer_events(spec_.horizon)) {
    p_ld_ = p_table(spec_);
    x_ = x_table(spec_, p_ld_);
    const auto N = x_.size();
    p_.resize(N);
    y_.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        p_[i] = static_cast<double>(p_ld_[i]);
        const long double y = static_cast<long double>(x_[i]) * (1.0L - 1.0L / p_ld_[i]);
        y_[i] = static_cast<double>(y);
        // A firing jump too close to -1 would make log(1 + dX) ill-conditioned.
        if (std::fabs(1.0L + y) < 1e-6L)
            throw std::invalid_argument(fmt::format(
                "p_{} is within 1e-6 of x/(1+x): the firing jump would be -1", i + 1));
    }
}

std::size_t RandomWalkModel::idx(std::int64_t n) const {
    if (n < 1 || n > spec_.horizon) throw std::out_of_range("event index out of range");
    return static_cast<std::size_t>(n - 1);
}

long double RandomWalkModel::firing_jump_ld(std::int64_t n) const {
    const auto i = idx(n);
    return static_cast<long double>(x_[i]) * (1.0L - 1.0L / p_ld_[i]);
}

double RandomWalkModel::support_min(std::int64_t n) const {
    return static_cast<double>(std::fmin(static_cast<long double>(x(n)), firing_jump_ld(n)));
}

const std::vector<double>& RandomWalkModel::memo(MemoSlot slot,
                                                 const std::function<std::vector<double>()>& fill) const {
    std::call_once(memo_->once[slot], [&] { memo_->data[slot] = fill(); });
    return memo_->data[slot];
}

Generated RandomWalkModel::generate(std::uint64_t seed) const {
    const CounterStream stream(seed);
    PathBuilder builder(grid_);
    std::vector<std::int64_t> fired;
    const auto N = static_cast<std::int64_t>(x_.size());
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        // Event n always uses block n, independent of anything drawn before it.
        const bool fire = stream.uniform_at(static_cast<std::uint64_t>(n)) < p_[i];
        if (fire) fired.push_back(n);
        builder.step(fire ? y_[i] : x_[i]);
    }
    return Generated{std::move(builder).finish(), std::nullopt, std::move(fired)};
}

// ---------------------------------------------------------------- Cox

CoxModel::CoxModel(CoxSpec spec)
    : spec_(std::move(spec)), grid_(TimeGrid::uniform(spec_.step, spec_.horizon)) {
    if (spec_.lambda.kind == LambdaKind::inverse_square) {
        if (!(spec_.lambda.scale >= 0.0) || !std::isfinite(spec_.lambda.scale))
            throw std::invalid_argument("lambda scale must be finite and nonnegative");
    } else if (!spec_.lambda.fn) {
        throw std::invalid_argument("custom lambda rule needs a function");
    }
    if (spec_.gamma.kind == GammaKind::custom && !spec_.gamma.fn)
        throw std::invalid_argument("custom gamma rule needs a function");
    const std::size_t K = grid_.size();
    step_drift_.assign(K, 0.0);
    step_log_.assign(K, 0.0);
    double g_prev = 0.0, l_prev = 0.0;
    for (std::size_t k = 1; k < K; ++k) {
        const double a = grid_[k - 1], b = grid_[k];
        const double la = lambda(a), lb = lambda(b), ga = gamma(a), gb = gamma(b);
        if (!(la >= 0.0 && lb >= 0.0 && ga >= 0.0 && gb >= 0.0))
            throw std::invalid_argument("lambda and gamma must be nonnegative on the grid");
        if (closed_form()) {
            const double g = G(b), l = L(b);
            step_drift_[k] = g - g_prev;
            step_log_[k] = l - l_prev;
            g_prev = g;
            l_prev = l;
        } else {
            step_drift_[k] = drift_integral(a, b);
            step_log_[k] = log_integral(a, b);
        }
    }
}

bool CoxModel::closed_form() const noexcept {
    return spec_.lambda.kind == LambdaKind::inverse_square && spec_.gamma.kind != GammaKind::custom;
}

double CoxModel::lambda(double s) const {
    if (spec_.lambda.kind == LambdaKind::inverse_square) return spec_.lambda.scale / ((1.0 + s) * (1.0 + s));
    return spec_.lambda.fn(s);
}

double CoxModel::gamma(double s) const {
    switch (spec_.gamma.kind) {
        case GammaKind::linear: return s;
        case GammaKind::inverse_linear: return 1.0 / (1.0 + s);
        case GammaKind::quadratic: return (1.0 + s) * (1.0 + s);
        case GammaKind::custom: return spec_.gamma.fn(s);
    }
    return 0.0;
}

double CoxModel::G(double t) const {
    const double a = spec_.lambda.scale;
    switch (spec_.gamma.kind) {
        case GammaKind::linear: return a * (std::log1p(t) - t / (1.0 + t));
        case GammaKind::inverse_linear: {
            const double u = 1.0 / (1.0 + t);
            return 0.5 * a * (1.0 - u * u);
        }
        case GammaKind::quadratic: return a * t;
        case GammaKind::custom: break;
    }
    throw std::logic_error("no closed form");
}

double CoxModel::L(double t) const {
    const double a = spec_.lambda.scale;
    switch (spec_.gamma.kind) {
        case GammaKind::linear: return a * (1.0 - (1.0 + std::log1p(t)) / (1.0 + t));
        case GammaKind::inverse_linear: {
            // antiderivative of log(1 + 1/(1+s)) / (1+s)^2 is (1+u)log(1+u) - u, u = 1/(1+s)
            const double u = 1.0 / (1.0 + t);
            const double at1 = 2.0 * std::numbers::ln2 - 1.0;
            return a * (at1 - ((1.0 + u) * std::log1p(u) - u));
        }
        case GammaKind::quadratic: {
            // int_1^v log(1+w^2)/w^2 dw = [-log(1+w^2)/w + 2 atan w]_1^v
            const double v = 1.0 + t;
            return a * (-std::log1p(v * v) / v + 2.0 * std::atan(v) + std::numbers::ln2 - 0.5 * std::numbers::pi);
        }
        case GammaKind::custom: break;
    }
    throw std::logic_error("no closed form");
}

double CoxModel::cumulative_hazard(double t) const {
    if (spec_.lambda.kind == LambdaKind::inverse_square) return spec_.lambda.scale * t / (1.0 + t);
    double acc = 0.0;
    const double h = spec_.step;
    double a = 0.0;
    while (a < t) {
        const double b = std::min(t, a + h);
        acc += (b - a) * lambda(0.5 * (a + b));
        a = b;
    }
    return acc;
}

double CoxModel::total_hazard() const noexcept {
    if (spec_.lambda.kind == LambdaKind::inverse_square) return spec_.lambda.scale;
    return kInf;
}

double CoxModel::drift_integral(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (closed_form()) return G(b) - G(a);
    const double m = 0.5 * (a + b);
    return (b - a) * gamma(m) * lambda(m);
}

double CoxModel::log_integral(double a, double b) const {
    if (!(b > a)) return 0.0;
    if (closed_form()) return L(b) - L(a);
    const double m = 0.5 * (a + b);
    return (b - a) * std::log1p(gamma(m)) * lambda(m);
}

double CoxModel::drift_integral_total() const {
    if (!closed_form()) throw std::domain_error("no analytic total for custom rates");
    if (spec_.lambda.scale == 0.0) return 0.0;
    if (spec_.gamma.kind == GammaKind::inverse_linear) return 0.5 * spec_.lambda.scale;
    return kInf;
}

std::optional<double> CoxModel::gamma_inverse(double v) const {
    switch (spec_.gamma.kind) {
        case GammaKind::linear: return v >= 0.0 ? std::optional<double>(v) : std::nullopt;
        case GammaKind::inverse_linear:
            return (v > 0.0 && v <= 1.0) ? std::optional<double>(1.0 / v - 1.0) : std::nullopt;
        case GammaKind::quadratic: return v >= 1.0 ? std::optional<double>(std::sqrt(v) - 1.0) : std::nullopt;
        case GammaKind::custom: break;
    }
    return std::nullopt;
}

double CoxModel::gamma_growth() const {
    switch (spec_.gamma.kind) {
        case GammaKind::linear: return 1.0;
        case GammaKind::inverse_linear: return -1.0;
        case GammaKind::quadratic: return 2.0;
        case GammaKind::custom: break;
    }
    throw std::domain_error("growth of a custom gamma rule is unknown");
}

JumpTime CoxModel::draw_rho(double theta) const {
    const double T = grid_.end();
    if (spec_.lambda.kind == LambdaKind::inverse_square) {
        const double a = spec_.lambda.scale;
        if (!(theta < a)) return {JumpTime::Kind::never, 0.0};
        const double rho = theta / (a - theta);
        return {rho <= T ? JumpTime::Kind::within_horizon : JumpTime::Kind::beyond_horizon, rho};
    }
    // Midpoint hazard is constant on each panel, so invert linearly inside it.
    double acc = 0.0;
    for (std::size_t k = 1; k < grid_.size(); ++k) {
        const double a = grid_[k - 1], b = grid_[k];
        const double rate = lambda(0.5 * (a + b));
        const double next = acc + (b - a) * rate;
        if (next >= theta && rate > 0.0) {
            const double rho = std::min(b, a + (theta - acc) / rate);
            return {JumpTime::Kind::within_horizon, rho};
        }
        acc = next;
    }
    // Past the horizon the custom hazard is unknown; the time is only a lower bound.
    return {JumpTime::Kind::beyond_horizon, T};
}

Generated CoxModel::generate(std::uint64_t seed) const {
    CounterStream stream(seed);
    const double theta = stream.exponential();
    const JumpTime rho = draw_rho(theta);
    stream.seek(1);
    const bool drift = !spec_.negate_jump;
    PathBuilder builder(grid_, 0.0, drift, spec_.with_bm);
    for (std::size_t k = 1; k < grid_.size(); ++k) {
        const double a = grid_[k - 1], b = grid_[k];
        double jump = 0.0, d = 0.0, w = 0.0;
        const bool jumps_here = rho.observed() && a < rho.time && rho.time <= b;
        if (jumps_here) jump = jump_size(rho.time);
        if (drift) {
            if (!rho.observed() || rho.time >= b)
                d = -step_drift_[k];
            else if (rho.time > a)
                d = -drift_integral(a, rho.time);
        }
        if (spec_.with_bm) w = std::sqrt(b - a) * stream.normal();
        builder.step(jump, d, w);
    }
    return Generated{std::move(builder).finish(), rho, {}};
}

// ---------------------------------------------------------------- one-shot

OneShotModel::OneShotModel(OneShotSpec spec)
    : spec_(spec), grid_(TimeGrid::integer_events(spec.horizon)) {
    if (spec_.law == OneShotLaw::two_point) {
        if (!(spec_.a > 0.0) || !(spec_.q > 0.0 && spec_.q < 1.0))
            throw std::invalid_argument("two-point law needs a > 0 and q in (0,1)");
        b_ = spec_.q * spec_.a / (1.0 - spec_.q);
    } else if (!(spec_.alpha > 0.0) || !std::isfinite(spec_.alpha)) {
        throw std::invalid_argument("Pareto law needs alpha > 0");
    }
}

double OneShotModel::draw(double u_open) const {
    if (spec_.law == OneShotLaw::two_point) return u_open < spec_.q ? spec_.a : -b_;
    return (-std::log(u_open) - 1.0) / spec_.alpha;
}

double OneShotModel::support_min() const {
    return spec_.law == OneShotLaw::two_point ? -b_ : -1.0 / spec_.alpha;
}

double OneShotModel::expect(const std::function<double(double)>& f) const {
    if (spec_.law == OneShotLaw::two_point) return spec_.q * f(spec_.a) + (1.0 - spec_.q) * f(-b_);
    // Theta = (E - 1)/alpha with E standard exponential.
    boost::math::quadrature::exp_sinh<double> integrator;
    const double alpha = spec_.alpha;
    // Nodes with e below machine epsilon round e - 1 to -1; nudge them back inside the
    // support (the log singularity there is integrable).
    const double floor_x = std::nextafter(-1.0, 0.0);
    return integrator.integrate(
        [&](double e) {
            const double w = std::exp(-e);
            return w == 0.0 ? 0.0 : f(std::max((e - 1.0) / alpha, floor_x)) * w;
        },
        0.0, kInf);
}

Generated OneShotModel::generate(std::uint64_t seed) const {
    CounterStream stream(seed);
    const double theta = draw(stream.uniform_open());
    PathBuilder builder(grid_);
    for (std::size_t k = 1; k < grid_.size(); ++k) builder.step(k == 1 ? theta : 0.0);
    return Generated{std::move(builder).finish(), std::nullopt, {}};
}

// ---------------------------------------------------------------- deterministic

DetAlternatingModel::DetAlternatingModel(DetAlternatingSpec spec)
    : spec_(spec), grid_(TimeGrid::integer_events(spec.horizon)) {}

Generated DetAlternatingModel::generate() const {
    PathBuilder builder(grid_);
    for (std::int64_t n = 1; n <= spec_.horizon; ++n) builder.step(term(n));
    return Generated{std::move(builder).finish(), std::nullopt, {}};
}

// ---------------------------------------------------------------- dispatch

Model compile(const GeneratorSpec& spec) {
    return std::visit(
        [](const auto& s) -> Model {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, RandomWalkSpec>) return RandomWalkModel(s);
            else if constexpr (std::is_same_v<S, CoxSpec>) return CoxModel(s);
            else if constexpr (std::is_same_v<S, OneShotSpec>) return OneShotModel(s);
            else return DetAlternatingModel(s);
        },
        spec);
}

Generated generate(const Model& model, std::uint64_t seed) {
    return std::visit(
        [seed](const auto& m) -> Generated {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, DetAlternatingModel>) return m.generate();
            else return m.generate(seed);
        },
        model);
}

const TimeGrid& model_grid(const Model& model) {
    return std::visit([](const auto& m) -> const TimeGrid& { return m.grid(); }, model);
}

SamplePath gen_random_walk(const RandomWalkSpec& spec, std::uint64_t seed) {
    return RandomWalkModel(spec).generate(seed).path;
}

std::pair<SamplePath, JumpTime> gen_cox(const CoxSpec& spec, std::uint64_t seed) {
    auto g = CoxModel(spec).generate(seed);
    return {std::move(g.path), *g.rho};
}

SamplePath gen_oneshot(const OneShotSpec& spec, std::uint64_t seed) {
    return OneShotModel(spec).generate(seed).path;
}

SamplePath gen_det_alternating(std::int64_t n) {
    return DetAlternatingModel(DetAlternatingSpec{n}).generate().path;
}

}  // namespace jumpconv
