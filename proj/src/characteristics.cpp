#include "jumpconv/characteristics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "jumpconv/analytic.hpp"
#include "jumpconv/io.hpp"

namespace jumpconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// ---------------------------------------------------------------- random walk helpers

long double rw_gamma_ld(const RandomWalkModel& m, std::int64_t n) {
    const long double x = m.x(n);
    const long double y = m.firing_jump_ld(n);
    const long double p = m.p_ld(n);
    if (!(x > -1.0L) || !(y > -1.0L))
        throw std::domain_error(fmt::format("jump support at n={} reaches -1; gamma undefined", n));
    return -((1.0L - p) * std::log1p(x) + p * std::log1p(y));
}

long double rw_expect(const RandomWalkModel& m, const Integrand& f, std::int64_t n) {
    const long double x = m.x(n);
    const long double y = m.firing_jump_ld(n);
    const long double p = m.p_ld(n);
    long double gamma_n = 0.0L;
    if (f.kind() == IntegrandKind::log1p_sq_cap) gamma_n = rw_gamma_ld(m, n);
    if (!f.defined_at_ld(x) || !f.defined_at_ld(y))
        throw std::domain_error(fmt::format("{} undefined on the jump support at n={}", f.name(), n));
    return (1.0L - p) * f.eval_ld(x, gamma_n) + p * f.eval_ld(y, gamma_n);
}

bool rw_support_ok(const RandomWalkModel& m) {
    for (std::int64_t n = 1; n <= m.horizon(); ++n)
        if (!(m.x(n) > -1.0) || !(m.firing_jump_ld(n) > -1.0L)) return false;
    return true;
}

bool rw_limit_finite(const RandomWalkModel& m, const Integrand& f) {
    const XPreset preset = m.spec().x.preset;
    const XPresetTraits t = traits(preset);
    const bool log_based = f.kind() == IntegrandKind::x_minus_log || f.kind() == IntegrandKind::neg_log_tail ||
                           f.kind() == IntegrandKind::log1p_sq_cap || f.kind() == IntegrandKind::pow_c;
    if (log_based && t.positive_io && !t.firing_bounded)
        throw std::domain_error(f.name() + " undefined: firing jumps of this walk fall below -1");
    if (preset == XPreset::explicit_list) {
        // Finitely many nonzero terms; check the support where it matters.
        for (std::int64_t n = 1; n <= m.horizon(); ++n) (void)rw_expect(m, f, n);
        return f.kind() != IntegrandKind::pow_c;
    }
    const bool unbounded_up = !t.firing_bounded && t.negative_io;
    const bool unbounded_down = !t.firing_bounded && t.positive_io;
    switch (f.kind()) {
        case IntegrandKind::sq_cap_abs: return t.sum_abs_finite;
        case IntegrandKind::sq_cap_one: return t.x_to_zero && t.sum_sq_finite;
        case IntegrandKind::abs_tail: return t.firing_bounded || t.sum_abs_finite;
        case IntegrandKind::pos_tail:
            if (preset == XPreset::ones && f.param() < 1.0) return false;
            return !unbounded_up;
        case IntegrandKind::neg_log_tail: return !(preset == XPreset::minus_half && f.param() < 0.5);
        case IntegrandKind::x_minus_log: return t.x_to_zero && t.sum_sq_finite && !unbounded_up;
        case IntegrandKind::exp_remainder:
            return t.x_to_zero && t.sum_sq_finite && !unbounded_up && !unbounded_down;
        case IntegrandKind::square: return t.firing_bounded && t.sum_sq_finite;
        case IntegrandKind::log1p_sq_cap:
            if (t.x_to_zero) return t.sum_sq_finite;
            return !(preset == XPreset::minus_half && f.param() >= 0.5);
        case IntegrandKind::pow_c: return false;  // every event contributes about 1
    }
    return false;
}

// ---------------------------------------------------------------- Cox helpers

double cox_breakpoint_value(const Integrand& f) {
    switch (f.kind()) {
        case IntegrandKind::sq_cap_abs:
        case IntegrandKind::sq_cap_one:
        case IntegrandKind::abs_tail: return 1.0;
        case IntegrandKind::pos_tail:
        case IntegrandKind::neg_log_tail:
        case IntegrandKind::log1p_sq_cap: return f.param();
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

bool cox_limit_finite(const CoxModel& m, const Integrand& f) {
    const bool neg = m.spec().negate_jump;
    const double growth = neg ? f.growth_at_minus_infinity() : f.growth_at_plus_infinity();
    if (m.spec().lambda.kind == LambdaKind::custom || m.spec().gamma.kind == GammaKind::custom)
        throw std::domain_error("limit of a custom Cox compensator is not available analytically");
    const double g = m.gamma_growth();
    // Every catalog gamma reaches at least 1, so log-type integrands are undefined on
    // the negated support.
    if (std::isnan(growth)) throw std::domain_error(f.name() + " undefined on the jump support");
    if (m.spec().lambda.scale == 0.0) return true;
    if (g <= 0.0) return true;            // gamma bounded, lambda integrable
    if (growth == -kInf) return true;     // F vanishes for large jumps
    if (growth == kInf) return false;
    return growth * g < 1.0;              // int s^{growth g - 2} ds
}

double gk(const std::function<double(double)>& h, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(h, a, b, 20, 1e-12);
}

double cox_segment(const CoxModel& m, const Integrand& f, double a, double b) {
    if (!(b > a)) return 0.0;
    if (std::isinf(b) && !cox_limit_finite(m, f)) return kInf;
    const bool neg = m.spec().negate_jump;
    auto integrand = [&](double s) { return f(m.jump_size(s)) * m.lambda(s); };
    if (!m.closed_form()) {
        if (std::isinf(b)) throw std::domain_error("custom Cox rates integrate only over finite ranges");
        const double h = m.spec().step;
        double acc = 0.0, s = a;
        while (s < b) {
            double e = (std::floor(s / h + 1e-9) + 1.0) * h;
            if (!(e > s)) e = s + h;
            e = std::min(e, b);
            acc += (e - s) * integrand(0.5 * (s + e));
            s = e;
        }
        return acc;
    }
    const double scale = m.spec().lambda.scale;
    const GammaKind gk_kind = m.spec().gamma.kind;
    if (!neg && f.kind() == IntegrandKind::x_minus_log) return m.drift_integral(a, b) - m.log_integral(a, b);
    if (!neg && gk_kind == GammaKind::linear) {
        switch (f.kind()) {
            case IntegrandKind::pow_c: {
                const double c = f.param();
                auto P = [c](double s) { return std::exp((c - 1.0) * std::log1p(s)); };
                return scale * (P(b) - P(a)) / (c - 1.0);
            }
            case IntegrandKind::pos_tail: {
                const double lo = std::max(a, f.param());
                if (!(b > lo)) return 0.0;
                auto H = [](double s) { return std::log1p(s) + 1.0 / (1.0 + s); };
                return scale * (H(b) - H(lo));
            }
            case IntegrandKind::square: {
                auto S = [](double s) { return s - 2.0 * std::log1p(s) - 1.0 / (1.0 + s); };
                return scale * (S(b) - S(a));
            }
            default: break;
        }
    }
    std::vector<double> cuts{a};
    const double v = cox_breakpoint_value(f);
    if (!std::isnan(v)) {
        if (auto s = m.gamma_inverse(v); s && *s > a && *s < b) cuts.push_back(*s);
    }
    cuts.push_back(b);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) acc += gk(integrand, cuts[i], cuts[i + 1]);
    return acc;
}

double cox_rho_cut(const Generated& g, double t) {
    if (g.rho && g.rho->finite()) return std::min(t, g.rho->time);
    return t;
}

// ---------------------------------------------------------------- one-shot helpers

void oneshot_check(const OneShotModel& m, const Integrand& f) {
    if (m.spec().law == OneShotLaw::two_point) {
        if (!f.defined_at(m.spec().a) || !f.defined_at(-m.b()))
            throw std::domain_error(f.name() + " undefined on the two-point support");
    } else if (!f.defined_at(-1.0 / m.spec().alpha + 1e-12)) {
        throw std::domain_error(f.name() + " undefined on the Pareto support");
    }
}

double oneshot_expect(const OneShotModel& m, const Integrand& f) {
    oneshot_check(m, f);
    if (m.spec().law == OneShotLaw::pareto_exp && f.kind() == IntegrandKind::exp_remainder) {
        const double alpha = m.spec().alpha;
        if (alpha <= 1.0) return kInf;
        return std::exp(-1.0 / alpha) * alpha / (alpha - 1.0) - 1.0;
    }
    double gamma1 = 0.0;
    if (f.kind() == IntegrandKind::log1p_sq_cap)
        gamma1 = -m.expect([](double x) { return std::log1p(x); });
    return m.expect([&](double x) { return f(x, gamma1); });
}

}  // namespace

// ---------------------------------------------------------------- public

bool supports_log_transform(const Model& model) {
    return std::visit(Overloaded{
                          [](const RandomWalkModel& m) { return rw_support_ok(m); },
                          [](const CoxModel& m) { return !m.spec().negate_jump; },
                          [](const OneShotModel& m) {
                              return m.spec().law == OneShotLaw::two_point ? m.b() < 1.0 : m.spec().alpha >= 1.0;
                          },
                          [](const DetAlternatingModel&) { return false; },
                      },
                      model);
}

double compensator_integral(const Model& model, const Integrand& f, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("compensator time must be nonnegative");
    return std::visit(
        Overloaded{
            [&](const RandomWalkModel& m) {
                const auto nmax = static_cast<std::int64_t>(std::min(std::floor(t), static_cast<double>(m.horizon())));
                long double acc = 0.0L;
                for (std::int64_t n = 1; n <= nmax; ++n) acc += rw_expect(m, f, n);
                return static_cast<double>(acc);
            },
            [&](const CoxModel& m) { return cox_segment(m, f, 0.0, t); },
            [&](const OneShotModel& m) { return t >= 1.0 ? oneshot_expect(m, f) : 0.0; },
            [&](const DetAlternatingModel& m) {
                const auto nmax = static_cast<std::int64_t>(std::min(std::floor(t), static_cast<double>(m.spec().horizon)));
                double acc = 0.0;
                for (std::int64_t n = 1; n <= nmax; ++n) acc += f(DetAlternatingModel::term(n));
                return acc;
            },
        },
        model);
}

double compensator_integral(const GeneratorSpec& spec, const Integrand& f, double t) {
    return compensator_integral(compile(spec), f, t);
}

std::vector<double> compensator_series(const Model& model, const Integrand& f, const Generated& g) {
    const TimeGrid& grid = g.path.grid();
    std::vector<double> out(grid.size(), 0.0);
    std::visit(Overloaded{
                   [&](const RandomWalkModel& m) {
                       long double acc = 0.0L;
                       for (std::size_t k = 1; k < out.size(); ++k) {
                           acc += rw_expect(m, f, static_cast<std::int64_t>(k));
                           out[k] = static_cast<double>(acc);
                       }
                   },
                   [&](const CoxModel& m) {
                       double acc = 0.0;
                       const double stop = cox_rho_cut(g, kInf);
                       for (std::size_t k = 1; k < out.size(); ++k) {
                           const double a = grid[k - 1];
                           const double b = std::min(grid[k], stop);
                           if (b > a) acc += cox_segment(m, f, a, b);
                           out[k] = acc;
                       }
                   },
                   [&](const OneShotModel& m) {
                       const double v = oneshot_expect(m, f);
                       for (std::size_t k = 1; k < out.size(); ++k) out[k] = v;
                   },
                   [&](const DetAlternatingModel&) {
                       double acc = 0.0;
                       for (std::size_t k = 1; k < out.size(); ++k) {
                           acc += f(DetAlternatingModel::term(static_cast<std::int64_t>(k)));
                           out[k] = acc;
                       }
                   },
               },
               model);
    return out;
}

double compensator_at(const Model& model, const Integrand& f, const Generated& g, double t) {
    if (const auto* m = std::get_if<CoxModel>(&model)) return cox_segment(*m, f, 0.0, cox_rho_cut(g, t));
    return compensator_integral(model, f, t);
}

bool compensator_limit_finite(const Model& model, const Integrand& f, const Generated* g) {
    return std::visit(
        Overloaded{
            [&](const RandomWalkModel& m) { return rw_limit_finite(m, f); },
            [&](const CoxModel& m) {
                if (g && g->rho && g->rho->finite()) {
                    (void)cox_limit_finite(m, f);  // support check only
                    return true;
                }
                return cox_limit_finite(m, f);
            },
            [&](const OneShotModel& m) { return std::isfinite(oneshot_expect(m, f)); },
            [&](const DetAlternatingModel&) {
                if (!f.defined_at(DetAlternatingModel::term(1)))
                    throw std::domain_error(f.name() + " undefined at the first jump -1");
                return f.quadratic_near_zero();
            },
        },
        model);
}

std::vector<double> empirical_jump_integral(const SamplePath& path, const Integrand& f,
                                            std::span<const double> gammas) {
    std::vector<double> out(path.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        const double dx = path.jump(k);
        if (dx != 0.0) acc += f(dx, gammas.empty() ? 0.0 : gammas[k]);
        out[k] = acc;
    }
    return out;
}

double gamma_at(const Model& model, double t) {
    return std::visit(Overloaded{
                          [&](const RandomWalkModel& m) {
                              const double n = std::floor(t);
                              if (n != t || n < 1.0 || n > static_cast<double>(m.horizon())) return 0.0;
                              return static_cast<double>(rw_gamma_ld(m, static_cast<std::int64_t>(n)));
                          },
                          [](const CoxModel&) { return 0.0; },
                          [&](const OneShotModel& m) {
                              if (t != 1.0) return 0.0;
                              if (!supports_log_transform(Model(m)))
                                  throw std::domain_error("one-shot support reaches -1; gamma undefined");
                              return -m.expect([](double x) { return std::log1p(x); });
                          },
                          [](const DetAlternatingModel&) -> double {
                              throw std::domain_error("the alternating path jumps by -1 at t=1; gamma undefined");
                          },
                      },
                      model);
}

std::vector<double> gamma_series(const Model& model) {
    const TimeGrid& grid = model_grid(model);
    std::vector<double> out(grid.size(), 0.0);
    std::visit(Overloaded{
                   [&](const RandomWalkModel& m) {
                       out = m.memo(RandomWalkModel::memo_gamma, [&] {
                           std::vector<double> v(out.size(), 0.0);
                           for (std::size_t k = 1; k < v.size(); ++k)
                               v[k] = static_cast<double>(rw_gamma_ld(m, static_cast<std::int64_t>(k)));
                           return v;
                       });
                   },
                   [](const CoxModel&) {},
                   [&](const OneShotModel&) { out[1] = gamma_at(model, 1.0); },
                   [&](const DetAlternatingModel&) { (void)gamma_at(model, 1.0); },
               },
               model);
    return out;
}

std::vector<double> exponential_compensator(const Model& model, const Generated& g) {
    const SamplePath& path = g.path;
    std::vector<double> out(path.size(), 0.0);
    std::visit(
        Overloaded{
            [&](const RandomWalkModel& m) {
                out = m.memo(RandomWalkModel::memo_v, [&] {
                    if (!rw_support_ok(m)) throw std::domain_error("jump support reaches -1; V undefined");
                    const Integrand f = Integrand::x_minus_log();
                    std::vector<double> v(out.size(), 0.0);
                    double acc = 0.0;
                    for (std::size_t k = 1; k < v.size(); ++k) {
                        acc += static_cast<double>(rw_expect(m, f, static_cast<std::int64_t>(k)));
                        v[k] = acc;
                    }
                    return v;
                });
            },
            [&](const CoxModel& m) {
                if (m.spec().negate_jump) throw std::domain_error("V is not defined for the negated-jump variant");
                const TimeGrid& grid = path.grid();
                double acc = 0.0;
                for (std::size_t k = 1; k < out.size(); ++k) {
                    const double a = grid[k - 1], b = grid[k];
                    double step = 0.0;
                    if (!g.rho || !g.rho->observed() || g.rho->time >= b)
                        step = m.step_drift()[k] - m.step_log()[k];
                    else if (g.rho->time > a)
                        step = m.drift_integral(a, g.rho->time) - m.log_integral(a, g.rho->time);
                    const double w = path.diffusion(k);
                    acc += step + 0.5 * w * w;
                    out[k] = acc;
                }
            },
            [&](const OneShotModel& m) {
                if (!supports_log_transform(model)) throw std::domain_error("one-shot support reaches -1; V undefined");
                const double v = m.expect([](double x) { return x - std::log1p(x); });
                for (std::size_t k = 1; k < out.size(); ++k) out[k] = v;
            },
            [](const DetAlternatingModel&) {
                throw std::domain_error("the alternating path jumps by -1 at t=1; V undefined");
            },
        },
        model);
    return out;
}

std::vector<double> predictable_part(const Model& model, const Generated& g) {
    const SamplePath& path = g.path;
    std::vector<double> out(path.size(), 0.0);
    if (const auto* m = std::get_if<CoxModel>(&model); m && m->spec().negate_jump) {
        const TimeGrid& grid = path.grid();
        double acc = 0.0;
        for (std::size_t k = 1; k < out.size(); ++k) {
            const double a = grid[k - 1], b = grid[k];
            if (!g.rho || !g.rho->observed() || g.rho->time >= b)
                acc += m->step_drift()[k];
            else if (g.rho->time > a)
                acc += m->drift_integral(a, g.rho->time);
            out[k] = acc;
        }
    } else if (std::holds_alternative<DetAlternatingModel>(model)) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = -path.value(k);
    }
    return out;
}

bool predictable_part_finite(const Model& model, const Generated& g) {
    if (const auto* m = std::get_if<CoxModel>(&model); m && m->spec().negate_jump) {
        if (g.rho && g.rho->finite()) return true;
        return std::isfinite(m->drift_integral_total());
    }
    return true;
}

KappaValue kappa_n(const Example56Schedule& schedule, std::int64_t n) {
    const long double c = schedule.c;
    const long double log_p = schedule.log_p(n);
    const long double p = schedule.p(n);
    const long double p_pow = std::exp((1.0L - c) * log_p);            // p^{1-c}
    const long double log_inv = -log_p + std::log1p(p);                  // log(1 + 1/p)
    const long double t = p_pow * std::exp(c * std::log1p(p));           // p^{1-c} (1+p)^c
    const long double exact = std::log1p(t - p) - c * p * log_inv;
    const long double bound = std::log1p(2.0L * p_pow) - c * p * log_inv;
    return {static_cast<double>(exact), static_cast<double>(bound)};
}

CharacteristicsReport characteristics_report(const Model& model, const Generated& g,
                                             std::span<const Integrand> integrands) {
    CharacteristicsReport r{g.path.grid(), {}, predictable_part(model, g), {}, {}};
    for (const auto& f : integrands) r.compensators.emplace_back(f, compensator_series(model, f, g));
    if (supports_log_transform(model)) {
        r.gamma = gamma_series(model);
        r.V = exponential_compensator(model, g);
    }
    return r;
}

void write_characteristics_csv(std::ostream& out, const CharacteristicsReport& r) {
    out << "t,integrand,value\n";
    auto block = [&](const std::string& name, const std::vector<double>& v) {
        for (std::size_t k = 0; k < v.size(); ++k)
            out << format_real(r.grid[k]) << ',' << name << ',' << format_real(v[k]) << '\n';
    };
    for (const auto& [f, series] : r.compensators) block(f.name(), series);
    block("A", r.A);
    if (!r.gamma.empty()) block("GAMMA", r.gamma);
    if (!r.V.empty()) block("V", r.V);
}

}  // namespace jumpconv
