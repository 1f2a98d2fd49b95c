#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "jumpconv/generators.hpp"
#include "jumpconv/integrand.hpp"

namespace jumpconv {

// True when every jump the law can produce exceeds -1, so Y and V exist.
bool supports_log_transform(const Model& model);

// Deterministic F*nu_t: for the random walk the sum over n <= t of the two-point
// expectation; for Cox the integral up to t on {rho > t} (t may be +inf).
double compensator_integral(const Model& model, const Integrand& f, double t);
double compensator_integral(const GeneratorSpec& spec, const Integrand& f, double t);

// Path-coupled F*nu at every grid time (through t ∧ rho for Cox).
std::vector<double> compensator_series(const Model& model, const Integrand& f, const Generated& g);
// Path-coupled F*nu at a single time.
double compensator_at(const Model& model, const Integrand& f, const Generated& g, double t);
// Whether F*nu at the terminal time is finite, decided analytically (path-coupled
// through rho for Cox). Throws std::domain_error where F is undefined on the support.
bool compensator_limit_finite(const Model& model, const Integrand& f, const Generated* g = nullptr);

// Cumulative sum of F over observed nonzero jumps. `gammas` feeds LOG1P_SQ_CAP.
std::vector<double> empirical_jump_integral(const SamplePath& path, const Integrand& f,
                                            std::span<const double> gammas = {});

double gamma_at(const Model& model, double t);
// gamma_t at every grid index (zero off event times).
std::vector<double> gamma_series(const Model& model);

// V = 1/2 [X^c,X^c] + (x - log(1+x)) * nu, per grid time.
std::vector<double> exponential_compensator(const Model& model, const Generated& g);

// Predictable part A with X = M - A. Nonzero only for the semimartingale Cox variant
// and the deterministic alternating path (where A = -X).
std::vector<double> predictable_part(const Model& model, const Generated& g);
bool predictable_part_finite(const Model& model, const Generated& g);

struct KappaValue {
    double exact;
    double paper_bound;
};
KappaValue kappa_n(const Example56Schedule& schedule, std::int64_t n);

struct CharacteristicsReport {
    TimeGrid grid;
    std::vector<std::pair<Integrand, std::vector<double>>> compensators;
    std::vector<double> A;
    std::vector<double> gamma;  // empty when the support reaches -1
    std::vector<double> V;      // empty when the support reaches -1
};

CharacteristicsReport characteristics_report(const Model& model, const Generated& g,
                                             std::span<const Integrand> integrands);
// Long format: t,integrand,value. A, GAMMA and V appear as pseudo-integrands.
void write_characteristics_csv(std::ostream& out, const CharacteristicsReport& report);

}  // namespace jumpconv
