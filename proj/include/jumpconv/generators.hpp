#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "jumpconv/path.hpp"
#include "jumpconv/spec.hpp"

namespace jumpconv {

// Largest p_n = 2^-k_n with p log(1 + 1/p) <= n^-3 and p <= 2^-n (e^{1/n^2} - 1)^n.
// Exponents are stored because p_n underflows double precision from n ~ 76 on.
struct Example56Schedule {
    double c = 0.5;
    std::vector<int> exponents;  // exponents[n-1] = k_n

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(exponents.size()); }
    int exponent(std::int64_t n) const;
    long double p(std::int64_t n) const;      // exact power of two in long double
    long double log_p(std::int64_t n) const;  // -k_n log 2
    // First n from which kappa_n <= 2/n^2 is asserted: ceil(max(-c, 1/(1-c))).
    std::int64_t threshold_index() const;
};

Example56Schedule example56_schedule(double c, std::int64_t n_max = 100);

struct JumpTime {
    enum class Kind { within_horizon, beyond_horizon, never };
    Kind kind = Kind::never;
    double time = 0.0;  // meaningful unless kind == never

    bool finite() const noexcept { return kind != Kind::never; }
    bool observed() const noexcept { return kind == Kind::within_horizon; }
};

struct Generated {
    SamplePath path;
    std::optional<JumpTime> rho;       // Cox family only
    std::vector<std::int64_t> fired;   // random walk: indices n with Theta_n = 1
};

// Precomputed tables for one random walk specification.
class RandomWalkModel {
public:
    explicit RandomWalkModel(RandomWalkSpec spec);

    const RandomWalkSpec& spec() const noexcept { return spec_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    std::int64_t horizon() const noexcept { return spec_.horizon; }

    double x(std::int64_t n) const { return x_[idx(n)]; }
    double p(std::int64_t n) const { return p_[idx(n)]; }  // 0 when below double range
    long double p_ld(std::int64_t n) const { return p_ld_[idx(n)]; }
    double log_p(std::int64_t n) const { return static_cast<double>(std::log(p_ld_[idx(n)])); }
    // x_n (1 - 1/p_n); may be infinite when p_n is not representable (it then never fires).
    double firing_jump(std::int64_t n) const { return y_[idx(n)]; }
    long double firing_jump_ld(std::int64_t n) const;
    // Smallest value of the two-point support at n.
    double support_min(std::int64_t n) const;

    Generated generate(std::uint64_t seed) const;

    // Deterministic per-model series computed once on first use and shared by copies.
    enum MemoSlot { memo_gamma = 0, memo_v = 1 };
    const std::vector<double>& memo(MemoSlot slot, const std::function<std::vector<double>()>& fill) const;

private:
    std::size_t idx(std::int64_t n) const;

    struct Memo {
        std::once_flag once[2];
        std::vector<double> data[2];
    };
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

    RandomWalkSpec spec_;
    TimeGrid grid_;
    std::vector<double> x_, p_, y_;
    std::vector<long double> p_ld_;
};

class CoxModel {
public:
    explicit CoxModel(CoxSpec spec);

    const CoxSpec& spec() const noexcept { return spec_; }
    const TimeGrid& grid() const noexcept { return grid_; }

    double lambda(double s) const;
    double gamma(double s) const;
    double jump_size(double s) const { return spec_.negate_jump ? -gamma(s) : gamma(s); }
    bool closed_form() const noexcept;

    // Lambda(t) = int_0^t lambda.
    double cumulative_hazard(double t) const;
    // Lambda(inf); +inf when unknown (custom rates).
    double total_hazard() const noexcept;
    // int_a^b gamma lambda and int_a^b log(1+gamma) lambda. Closed forms for the
    // catalog rules, one midpoint panel otherwise (callers pass grid steps).
    double drift_integral(double a, double b) const;
    double log_integral(double a, double b) const;
    // Same integrals from 0 to infinity; +inf when divergent.
    double drift_integral_total() const;
    // gamma(s) = v solved for s when gamma is monotone and catalog; nullopt otherwise.
    std::optional<double> gamma_inverse(double v) const;
    // Growth exponent g with gamma(s) ~ s^g (g <= 0 means bounded).
    double gamma_growth() const;

    // Per-step int gamma lambda and int log(1+gamma) lambda over full grid steps.
    const std::vector<double>& step_drift() const noexcept { return step_drift_; }
    const std::vector<double>& step_log() const noexcept { return step_log_; }

    JumpTime draw_rho(double theta) const;
    Generated generate(std::uint64_t seed) const;

private:
    double G(double t) const;  // closed-form int_0^t gamma lambda
    double L(double t) const;  // closed-form int_0^t log(1+gamma) lambda

    CoxSpec spec_;
    TimeGrid grid_;
    std::vector<double> step_drift_, step_log_;
};

class OneShotModel {
public:
    explicit OneShotModel(OneShotSpec spec);
    const OneShotSpec& spec() const noexcept { return spec_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    double b() const noexcept { return b_; }
    double draw(double u_open) const;
    Generated generate(std::uint64_t seed) const;
    // E[F(Theta)] for a function of the jump; quadrature for the Pareto law.
    double expect(const std::function<double(double)>& f) const;
    double support_min() const;

private:
    OneShotSpec spec_;
    TimeGrid grid_;
    double b_ = 0.0;
};

class DetAlternatingModel {
public:
    explicit DetAlternatingModel(DetAlternatingSpec spec);
    const DetAlternatingSpec& spec() const noexcept { return spec_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    static double term(std::int64_t n) { return (n % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n); }
    Generated generate() const;

private:
    DetAlternatingSpec spec_;
    TimeGrid grid_;
};

using Model = std::variant<RandomWalkModel, CoxModel, OneShotModel, DetAlternatingModel>;

Model compile(const GeneratorSpec& spec);
Generated generate(const Model& model, std::uint64_t seed);
const TimeGrid& model_grid(const Model& model);

SamplePath gen_random_walk(const RandomWalkSpec& spec, std::uint64_t seed);
std::pair<SamplePath, JumpTime> gen_cox(const CoxSpec& spec, std::uint64_t seed);
SamplePath gen_oneshot(const OneShotSpec& spec, std::uint64_t seed);
SamplePath gen_det_alternating(std::int64_t n);

}  // namespace jumpconv
