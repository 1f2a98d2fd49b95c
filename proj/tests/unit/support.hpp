#pragma once

#include <random>
#include <vector>

#include "jumpconv/path.hpp"

namespace testsupport {

// Integer-event path whose values are the given list (exact for small dyadic values).
inline jumpconv::SamplePath path_of(const std::vector<double>& values) {
    jumpconv::PathBuilder b(jumpconv::TimeGrid::integer_events(static_cast<std::int64_t>(values.size()) - 1), values[0]);
    for (std::size_t k = 1; k < values.size(); ++k) b.step(values[k] - values[k - 1]);
    return std::move(b).finish();
}

// Hand-rolled generator: pure-jump path with random sparse jumps on an integer grid.
inline jumpconv::SamplePath random_jump_path(std::mt19937_64& rng, std::int64_t n, double jump_prob = 0.3,
                                             double scale = 2.0) {
    std::bernoulli_distribution fire(jump_prob);
    std::normal_distribution<double> size(0.0, scale);
    jumpconv::PathBuilder b(jumpconv::TimeGrid::integer_events(n));
    for (std::int64_t k = 1; k <= n; ++k) b.step(fire(rng) ? size(rng) : 0.0);
    return std::move(b).finish();
}

// Uniform-grid path with drift, diffusion and occasional jumps above -1.
inline jumpconv::SamplePath random_mixed_path(std::mt19937_64& rng, double step, double horizon) {
    const auto grid = jumpconv::TimeGrid::uniform(step, horizon);
    std::bernoulli_distribution fire(0.05);
    std::uniform_real_distribution<double> jump(-0.9, 3.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(step));
    jumpconv::PathBuilder b(grid, 0.0, true, true);
    for (std::size_t k = 1; k < grid.size(); ++k) b.step(fire(rng) ? jump(rng) : 0.0, -0.1 * step, 0.3 * gauss(rng));
    return std::move(b).finish();
}

}  // namespace testsupport
