#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace jumpconv {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct MCEstimate {
    double p_hat = 0.0;
    std::int64_t n = 0;
    std::int64_t successes = 0;
    double lo = 0.0;
    double hi = 1.0;
};

MCEstimate wilson(std::int64_t successes, std::int64_t n, double z = kWilsonZ95);

struct MeanTest {
    std::int64_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    double z = 0.0;
};

// z = mean / (sd / sqrt(n)). Needs n >= 2; zero variance gives z = 0 when the mean is
// zero and throws std::domain_error otherwise.
MeanTest mean_test(std::span<const double> xs);

// Running log(sum exp(v_i)) without overflow.
class LogSumExp {
public:
    void add(double log_value) noexcept;
    void merge(const LogSumExp& other) noexcept;
    double log_sum() const noexcept;
    std::int64_t count() const noexcept { return count_; }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double scaled_ = 0.0;  // sum exp(v_i - max_)
    std::int64_t count_ = 0;
};

}  // namespace jumpconv
