#include "jumpconv/spec.hpp"

#include <fmt/format.h>

#include <stdexcept>
#include <string>

#include "jumpconv/io.hpp"

namespace jumpconv {

namespace {

template <class E>
struct Named {
    E value;
    std::string_view name;
};

constexpr Named<XPreset> kXNames[] = {
    {XPreset::zero, "zero"},
    {XPreset::alt_sqrt, "alt_sqrt"},
    {XPreset::ones, "ones"},
    {XPreset::osc_harmonic, "osc_harmonic"},
    {XPreset::exp_alt_sqrt, "exp_alt_sqrt"},
    {XPreset::neg_harmonic, "neg_harmonic"},
    {XPreset::alt_harmonic, "alt_harmonic"},
    {XPreset::minus_half, "minus_half"},
    {XPreset::bounded_alt, "bounded_alt"},
    {XPreset::explicit_list, "explicit"},
};

constexpr Named<PKind> kPNames[] = {
    {PKind::geometric, "geometric"},
    {PKind::inverse_power, "inverse_power"},
    {PKind::example56, "example56"},
    {PKind::explicit_list, "explicit"},
};

constexpr Named<GammaKind> kGammaNames[] = {
    {GammaKind::linear, "linear"},
    {GammaKind::inverse_linear, "inverse_linear"},
    {GammaKind::quadratic, "quadratic"},
    {GammaKind::custom, "custom"},
};

template <class E, std::size_t N>
std::string_view name_of(const Named<E> (&table)[N], E v) {
    for (const auto& e : table)
        if (e.value == v) return e.name;
    return "?";
}

template <class E, std::size_t N>
E parse_named(const Named<E> (&table)[N], std::string_view s, const char* what) {
    for (const auto& e : table)
        if (e.name == s) return e.value;
    throw std::invalid_argument(fmt::format("unknown {} '{}'", what, s));
}

RandomWalkSpec rw(XPreset x, bool zero_first = false) {
    RandomWalkSpec s;
    s.x.preset = x;
    s.x.zero_first = zero_first;
    return s;
}

CoxSpec cox(GammaKind g) {
    CoxSpec s;
    s.gamma.kind = g;
    return s;
}

std::string list_text(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_real(v[i]);
    }
    return out + "]";
}

}  // namespace

std::string_view to_string(XPreset p) { return name_of(kXNames, p); }
std::string_view to_string(PKind k) { return name_of(kPNames, k); }
std::string_view to_string(GammaKind k) { return name_of(kGammaNames, k); }
XPreset parse_x_preset(std::string_view s) { return parse_named(kXNames, s, "x rule"); }
PKind parse_p_kind(std::string_view s) { return parse_named(kPNames, s, "p rule"); }
GammaKind parse_gamma_kind(std::string_view s) { return parse_named(kGammaNames, s, "gamma rule"); }

std::vector<std::string> catalog_names() {
    return {"zero",         "alt_sqrt",       "ones",          "osc_harmonic",
            "exp_alt_sqrt", "neg_harmonic",   "alt_harmonic",  "minus_half",
            "bounded_alt",  "cox_linear",     "cox_lil",       "cox_convergent",
            "cox_semimart", "oneshot_discrete", "oneshot_pareto", "det_alternating"};
}

GeneratorSpec catalog_preset(std::string_view name) {
    if (name == "zero") return rw(XPreset::zero);
    if (name == "alt_sqrt") return rw(XPreset::alt_sqrt, true);
    if (name == "ones") return rw(XPreset::ones);
    if (name == "osc_harmonic") return rw(XPreset::osc_harmonic);
    if (name == "exp_alt_sqrt") return rw(XPreset::exp_alt_sqrt);
    if (name == "neg_harmonic") return rw(XPreset::neg_harmonic, true);
    if (name == "alt_harmonic") return rw(XPreset::alt_harmonic, true);
    if (name == "minus_half") {
        RandomWalkSpec s = rw(XPreset::minus_half);
        s.p.kind = PKind::example56;
        s.horizon = 100;
        return s;
    }
    if (name == "bounded_alt") return rw(XPreset::bounded_alt);
    if (name == "cox_linear") return cox(GammaKind::linear);
    if (name == "cox_lil") {
        CoxSpec s = cox(GammaKind::quadratic);
        s.with_bm = true;
        return s;
    }
    if (name == "cox_convergent") return cox(GammaKind::inverse_linear);
    if (name == "cox_semimart") {
        CoxSpec s = cox(GammaKind::linear);
        s.negate_jump = true;
        return s;
    }
    if (name == "oneshot_discrete") return OneShotSpec{};
    if (name == "oneshot_pareto") {
        OneShotSpec s;
        s.law = OneShotLaw::pareto_exp;
        return s;
    }
    if (name == "det_alternating") return DetAlternatingSpec{};
    throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
}

std::string describe(const GeneratorSpec& spec) {
    struct Visitor {
        std::string operator()(const RandomWalkSpec& s) const {
            std::string x = fmt::format("x={}{}", to_string(s.x.preset), s.x.zero_first ? ",zero_first" : "");
            if (s.x.preset == XPreset::explicit_list) x += list_text(s.x.values);
            std::string p = fmt::format("p={}", to_string(s.p.kind));
            switch (s.p.kind) {
                case PKind::geometric: p += fmt::format("(scale={},base={})", format_real(s.p.scale), format_real(s.p.base)); break;
                case PKind::inverse_power: p += fmt::format("(scale={},exponent={})", format_real(s.p.scale), format_real(s.p.exponent)); break;
                case PKind::example56: break;
                case PKind::explicit_list: p += list_text(s.p.values); break;
            }
            return fmt::format("random_walk {} {} horizon={}", x, p, s.horizon);
        }
        std::string operator()(const CoxSpec& s) const {
            const std::string lam = s.lambda.kind == LambdaKind::custom
                                        ? std::string("custom")
                                        : fmt::format("inverse_square(scale={})", format_real(s.lambda.scale));
            return fmt::format("cox lambda={} gamma={} step={} horizon={} with_bm={} negate_jump={}", lam,
                               to_string(s.gamma.kind), format_real(s.step), format_real(s.horizon),
                               s.with_bm, s.negate_jump);
        }
        std::string operator()(const OneShotSpec& s) const {
            if (s.law == OneShotLaw::two_point)
                return fmt::format("oneshot two_point a={} q={} horizon={}", format_real(s.a), format_real(s.q), s.horizon);
            return fmt::format("oneshot pareto_exp alpha={} horizon={}", format_real(s.alpha), s.horizon);
        }
        std::string operator()(const DetAlternatingSpec& s) const {
            return fmt::format("det_alternating horizon={}", s.horizon);
        }
    };
    return std::visit(Visitor{}, spec);
}

}  // namespace jumpconv
