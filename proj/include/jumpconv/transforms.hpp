#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "jumpconv/generators.hpp"

namespace jumpconv {

// E(X) in sign / log-magnitude form. sign is 0 from tau_J on (log_abs = -inf there).
struct ExpSeries {
    std::vector<int> sign;
    std::vector<double> log_abs;

    double value(std::size_t k) const;
    std::size_t size() const noexcept { return sign.size(); }
};

ExpSeries stochastic_exponential(const SamplePath& path);
std::optional<double> tau_J(const SamplePath& path);
// Number of sign flips of E(X) (jumps below -1).
std::size_t sign_changes(const ExpSeries& e);

// Y = X^c + log(1+x) * (mu - nu). Defined on the first `defined_count` grid points:
// all of them unless the law's support or an observed jump reaches -1.
struct LogTransform {
    std::vector<double> values;
    std::vector<double> jumps;  // log(1 + dX_k) + gamma_k
    std::vector<double> cont;   // diffusion minus the continuous log-compensator
    std::size_t defined_count = 0;
    bool truncated = false;
};

LogTransform logarithmic_transform(const Model& model, const Generated& g);

struct TransformBundle {
    TimeGrid grid;
    ExpSeries E;
    LogTransform Y;
    std::vector<double> V;  // same length as Y.values
    std::optional<double> tau_J;
    std::size_t defined_count = 0;
};

TransformBundle make_transform_bundle(const Model& model, const Generated& g);

// max_t |E_t - exp(Y_t - V_t)| / (1 + |E_t|) over the defined range.
double check_exp_identity(const TransformBundle& b);
// max over events of |dY_k - (log(1 + dX_k) + gamma_k)|.
double check_jump_identity(const TransformBundle& b, const SamplePath& path, std::span<const double> gammas);

// Columns t,E,Y,V,identity_err; Y/V/identity_err empty beyond the defined range.
void write_transforms_csv(std::ostream& out, const TransformBundle& b);

}  // namespace jumpconv
