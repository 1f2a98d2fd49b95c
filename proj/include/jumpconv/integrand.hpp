#pragma once

#include <string>
#include <string_view>

namespace jumpconv {

enum class IntegrandKind {
    sq_cap_abs,     // x^2 ∧ |x|
    sq_cap_one,     // x^2 ∧ 1
    pos_tail,       // x 1{x > kappa}
    abs_tail,       // |x| 1{|x| > 1}
    neg_log_tail,   // -log(1+x) 1{x < -eta}
    x_minus_log,    // x - log(1+x)
    exp_remainder,  // e^x - 1 - x
    log1p_sq_cap,   // (log(1+x) + gamma_t)^2 1{|x| <= eps}
    square,         // x^2
    pow_c,          // (1+x)^c
};

class Integrand {
public:
    static Integrand sq_cap_abs() { return {IntegrandKind::sq_cap_abs, 0.0}; }
    static Integrand sq_cap_one() { return {IntegrandKind::sq_cap_one, 0.0}; }
    static Integrand pos_tail(double kappa);
    static Integrand abs_tail() { return {IntegrandKind::abs_tail, 0.0}; }
    static Integrand neg_log_tail(double eta);
    static Integrand x_minus_log() { return {IntegrandKind::x_minus_log, 0.0}; }
    static Integrand exp_remainder() { return {IntegrandKind::exp_remainder, 0.0}; }
    static Integrand log1p_sq_cap(double eps);
    static Integrand square() { return {IntegrandKind::square, 0.0}; }
    static Integrand pow_c(double c);

    // Accepts "SQ_CAP_ABS", "POS_TAIL[1.0]", "POW_C[0.5]", ...
    static Integrand parse(std::string_view text);

    IntegrandKind kind() const noexcept { return kind_; }
    double param() const noexcept { return param_; }
    std::string name() const;

    // False where the formula takes the log of a nonpositive number.
    bool defined_at(double x) const noexcept;
    bool defined_at_ld(long double x) const noexcept;
    // Throws std::domain_error where undefined.
    double operator()(double x, double gamma_t = 0.0) const;
    long double eval_ld(long double x, long double gamma_t = 0.0L) const;

    // Growth order of F(x) as x -> +inf (resp. -inf): F ~ |x|^a. Returns -inf for
    // integrands vanishing beyond a bounded set, +inf for exponential growth, NaN
    // where F is undefined in that direction.
    double growth_at_plus_infinity() const noexcept;
    double growth_at_minus_infinity() const noexcept;
    // True when F(x) = O(x^2) as x -> 0 (or F vanishes near 0).
    bool quadratic_near_zero() const noexcept;

    bool operator==(const Integrand&) const = default;

private:
    Integrand(IntegrandKind kind, double param) : kind_(kind), param_(param) {}
    IntegrandKind kind_;
    double param_;
};

}  // namespace jumpconv
