#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jumpconv {

// Closed-form x_n sequences for the random walk family.
enum class XPreset {
    zero,
    alt_sqrt,      // (-1)^n / sqrt(n)
    ones,          // 1
    osc_harmonic,  // +-1/n with sign blocks that push the partial sums out to +-k
    exp_alt_sqrt,  // exp((-1)^n / sqrt(n)) - 1
    neg_harmonic,  // -1/n
    alt_harmonic,  // (-1)^n / n
    minus_half,    // -1/2
    bounded_alt,   // (-1)^n p_n / 2, firing jumps stay inside (-1/2, 1/2)
    explicit_list, // user values, zero beyond the list
};

struct XRule {
    XPreset preset = XPreset::zero;
    bool zero_first = false;  // force x_1 = 0
    std::vector<double> values;
};

enum class PKind {
    geometric,      // scale * base^-n
    inverse_power,  // scale * (n+1)^-exponent
    example56,      // largest 2^-k meeting both schedule inequalities
    explicit_list,
};

struct PRule {
    PKind kind = PKind::inverse_power;
    double scale = 1e-3;
    double base = 2.0;
    double exponent = 2.0;
    std::vector<double> values;
};

struct RandomWalkSpec {
    XRule x;
    PRule p;
    std::int64_t horizon = 100000;
};

enum class LambdaKind { inverse_square, custom };  // a / (1+s)^2
struct LambdaRule {
    LambdaKind kind = LambdaKind::inverse_square;
    double scale = 1.0;
    std::function<double(double)> fn;
};

enum class GammaKind { linear, inverse_linear, quadratic, custom };  // s, 1/(1+s), (1+s)^2
struct GammaRule {
    GammaKind kind = GammaKind::linear;
    std::function<double(double)> fn;
};

struct CoxSpec {
    LambdaRule lambda;
    GammaRule gamma;
    double step = 1.0;
    double horizon = 1e4;
    bool with_bm = false;
    // Semimartingale variant: X = -gamma(rho) 1{rho <= t}, with predictable part
    // A_t = int_0^{t ∧ rho} gamma lambda ds.
    bool negate_jump = false;
};

enum class OneShotLaw {
    two_point,   // a w.p. q, -b w.p. 1-q with b = q a / (1-q)
    pareto_exp,  // log W - 1/alpha with W Pareto(1, alpha)
};

struct OneShotSpec {
    OneShotLaw law = OneShotLaw::two_point;
    double a = 1.0;
    double q = 0.5;
    double alpha = 1.0;
    std::int64_t horizon = 2;
};

struct DetAlternatingSpec {
    std::int64_t horizon = 10000;
};

using GeneratorSpec = std::variant<RandomWalkSpec, CoxSpec, OneShotSpec, DetAlternatingSpec>;

std::string_view to_string(XPreset p);
std::string_view to_string(PKind k);
std::string_view to_string(GammaKind k);
XPreset parse_x_preset(std::string_view s);
PKind parse_p_kind(std::string_view s);
GammaKind parse_gamma_kind(std::string_view s);

// Named presets with their default parameters.
std::vector<std::string> catalog_names();
GeneratorSpec catalog_preset(std::string_view name);

// Canonical one-line description, used in manifests and spec hashes.
std::string describe(const GeneratorSpec& spec);

}  // namespace jumpconv
