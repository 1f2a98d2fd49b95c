#include "jumpconv/integrand.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "jumpconv/io.hpp"

namespace jumpconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NameEntry {
    IntegrandKind kind;
    const char* name;
    bool has_param;
};

constexpr NameEntry kNames[] = {
    {IntegrandKind::sq_cap_abs, "SQ_CAP_ABS", false},
    {IntegrandKind::sq_cap_one, "SQ_CAP_ONE", false},
    {IntegrandKind::pos_tail, "POS_TAIL", true},
    {IntegrandKind::abs_tail, "ABS_TAIL", false},
    {IntegrandKind::neg_log_tail, "NEG_LOG_TAIL", true},
    {IntegrandKind::x_minus_log, "X_MINUS_LOG", false},
    {IntegrandKind::exp_remainder, "EXP_REMAINDER", false},
    {IntegrandKind::log1p_sq_cap, "LOG1P_SQ_CAP", true},
    {IntegrandKind::square, "SQUARE", false},
    {IntegrandKind::pow_c, "POW_C", true},
};

const NameEntry& entry(IntegrandKind k) {
    for (const auto& e : kNames)
        if (e.kind == k) return e;
    throw std::logic_error("unknown integrand kind");
}

}  // namespace

Integrand Integrand::pos_tail(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("POS_TAIL needs kappa > 0");
    return {IntegrandKind::pos_tail, kappa};
}

Integrand Integrand::neg_log_tail(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("NEG_LOG_TAIL needs eta in (0,1)");
    return {IntegrandKind::neg_log_tail, eta};
}

Integrand Integrand::log1p_sq_cap(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("LOG1P_SQ_CAP needs eps in (0,1)");
    return {IntegrandKind::log1p_sq_cap, eps};
}

Integrand Integrand::pow_c(double c) {
    if (!(c < 1.0) || !std::isfinite(c)) throw std::invalid_argument("POW_C needs c < 1");
    return {IntegrandKind::pow_c, c};
}

Integrand Integrand::parse(std::string_view text) {
    std::string_view head = text;
    std::string_view arg;
    if (const auto open = text.find('['); open != std::string_view::npos) {
        if (text.back() != ']') throw std::invalid_argument("malformed integrand: " + std::string(text));
        head = text.substr(0, open);
        arg = text.substr(open + 1, text.size() - open - 2);
    }
    for (const auto& e : kNames) {
        if (head != e.name) continue;
        if (!e.has_param) {
            if (!arg.empty()) throw std::invalid_argument(std::string(e.name) + " takes no parameter");
            return {e.kind, 0.0};
        }
        if (arg.empty()) throw std::invalid_argument(std::string(e.name) + " needs a parameter");
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(std::string(arg), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integrand parameter: " + std::string(text));
        }
        if (used != arg.size()) throw std::invalid_argument("bad integrand parameter: " + std::string(text));
        switch (e.kind) {
            case IntegrandKind::pos_tail: return pos_tail(v);
            case IntegrandKind::neg_log_tail: return neg_log_tail(v);
            case IntegrandKind::log1p_sq_cap: return log1p_sq_cap(v);
            case IntegrandKind::pow_c: return pow_c(v);
            default: break;
        }
    }
    throw std::invalid_argument("unknown integrand: " + std::string(text));
}

std::string Integrand::name() const {
    const auto& e = entry(kind_);
    if (!e.has_param) return e.name;
    return std::string(e.name) + "[" + format_param(param_) + "]";
}

bool Integrand::defined_at(double x) const noexcept { return defined_at_ld(x); }

bool Integrand::defined_at_ld(long double x) const noexcept {
    switch (kind_) {
        case IntegrandKind::neg_log_tail: return !(x < -param_) || x > -1.0;
        case IntegrandKind::x_minus_log:
        case IntegrandKind::pow_c: return x > -1.0;
        case IntegrandKind::log1p_sq_cap: return !(std::abs(x) <= param_) || x > -1.0;
        default: return std::isfinite(x);
    }
}

long double Integrand::eval_ld(long double x, long double gamma_t) const {
    if (!defined_at_ld(x))
        throw std::domain_error(name() + " undefined at jump " + format_real(static_cast<double>(x)));
    const long double p = param_;
    switch (kind_) {
        case IntegrandKind::sq_cap_abs: return std::fmin(x * x, std::fabs(x));
        case IntegrandKind::sq_cap_one: return std::fmin(x * x, 1.0L);
        case IntegrandKind::pos_tail: return x > p ? x : 0.0L;
        case IntegrandKind::abs_tail: return std::fabs(x) > 1.0L ? std::fabs(x) : 0.0L;
        case IntegrandKind::neg_log_tail: return x < -p ? -std::log1p(x) : 0.0L;
        case IntegrandKind::x_minus_log: return x - std::log1p(x);
        case IntegrandKind::exp_remainder: return std::expm1(x) - x;
        case IntegrandKind::log1p_sq_cap: {
            if (!(std::fabs(x) <= p)) return 0.0L;
            const long double l = std::log1p(x) + gamma_t;
            return l * l;
        }
        case IntegrandKind::square: return x * x;
        case IntegrandKind::pow_c: return std::exp(p * std::log1p(x));
    }
    return 0.0L;
}

double Integrand::operator()(double x, double gamma_t) const {
    if (!defined_at(x)) throw std::domain_error(name() + " undefined at jump " + format_real(x));
    switch (kind_) {
        case IntegrandKind::sq_cap_abs: return std::fmin(x * x, std::fabs(x));
        case IntegrandKind::sq_cap_one: return std::fmin(x * x, 1.0);
        case IntegrandKind::pos_tail: return x > param_ ? x : 0.0;
        case IntegrandKind::abs_tail: return std::fabs(x) > 1.0 ? std::fabs(x) : 0.0;
        case IntegrandKind::neg_log_tail: return x < -param_ ? -std::log1p(x) : 0.0;
        case IntegrandKind::x_minus_log: return x - std::log1p(x);
        case IntegrandKind::exp_remainder: return std::expm1(x) - x;
        case IntegrandKind::log1p_sq_cap: {
            if (!(std::fabs(x) <= param_)) return 0.0;
            const double l = std::log1p(x) + gamma_t;
            return l * l;
        }
        case IntegrandKind::square: return x * x;
        case IntegrandKind::pow_c: return std::exp(param_ * std::log1p(x));
    }
    return 0.0;
}

double Integrand::growth_at_plus_infinity() const noexcept {
    switch (kind_) {
        case IntegrandKind::sq_cap_abs:
        case IntegrandKind::pos_tail:
        case IntegrandKind::abs_tail:
        case IntegrandKind::x_minus_log: return 1.0;
        case IntegrandKind::sq_cap_one: return 0.0;
        case IntegrandKind::neg_log_tail:
        case IntegrandKind::log1p_sq_cap: return -kInf;
        case IntegrandKind::exp_remainder: return kInf;
        case IntegrandKind::square: return 2.0;
        case IntegrandKind::pow_c: return param_;
    }
    return kNaN;
}

double Integrand::growth_at_minus_infinity() const noexcept {
    switch (kind_) {
        case IntegrandKind::sq_cap_abs:
        case IntegrandKind::abs_tail:
        case IntegrandKind::exp_remainder: return 1.0;
        case IntegrandKind::sq_cap_one: return 0.0;
        case IntegrandKind::pos_tail:
        case IntegrandKind::log1p_sq_cap: return -kInf;
        case IntegrandKind::square: return 2.0;
        case IntegrandKind::neg_log_tail:
        case IntegrandKind::x_minus_log:
        case IntegrandKind::pow_c: return kNaN;
    }
    return kNaN;
}

bool Integrand::quadratic_near_zero() const noexcept {
    return kind_ != IntegrandKind::pow_c;
}

}  // namespace jumpconv
