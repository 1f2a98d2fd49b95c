#include "jumpconv/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpconv {

MCEstimate wilson(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0) throw std::invalid_argument("wilson: n must be positive");
    if (k < 0 || k > n) throw std::invalid_argument("wilson: successes out of range");
    MCEstimate e;
    e.n = n;
    e.successes = k;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    e.p_hat = p;
    e.lo = std::max(0.0, std::min(p, centre - half));
    e.hi = std::min(1.0, std::max(p, centre + half));
    return e;
}

MeanTest mean_test(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("mean_test: need at least two trials");
    MeanTest t;
    t.n = static_cast<std::int64_t>(xs.size());
    // Welford in long double; the acceptance runs average 1e5 terms.
    long double mean = 0.0L, m2 = 0.0L;
    std::int64_t k = 0;
    for (double x : xs) {
        if (!std::isfinite(x)) throw std::domain_error("mean_test: non-finite statistic");
        ++k;
        const long double d = x - mean;
        mean += d / k;
        m2 += d * (x - mean);
    }
    t.mean = static_cast<double>(mean);
    t.sd = static_cast<double>(std::sqrt(m2 / (k - 1)));
    t.se = t.sd / std::sqrt(static_cast<double>(k));
    if (t.sd == 0.0) {
        if (t.mean != 0.0) throw std::domain_error("mean_test: zero variance with nonzero mean");
        t.z = 0.0;
    } else {
        t.z = t.mean / t.se;
    }
    return t;
}

void LogSumExp::add(double v) noexcept {
    ++count_;
    if (v == -INFINITY) return;
    if (v > max_) {
        scaled_ = scaled_ * std::exp(max_ - v) + 1.0;
        max_ = v;
    } else {
        scaled_ += std::exp(v - max_);
    }
}

void LogSumExp::merge(const LogSumExp& o) noexcept {
    count_ += o.count_;
    if (o.max_ == -INFINITY) return;
    if (max_ == -INFINITY) {
        max_ = o.max_;
        scaled_ = o.scaled_;
        return;
    }
    if (o.max_ > max_) {
        scaled_ = scaled_ * std::exp(max_ - o.max_) + o.scaled_;
        max_ = o.max_;
    } else {
        scaled_ += o.scaled_ * std::exp(o.max_ - max_);
    }
}

double LogSumExp::log_sum() const noexcept {
    if (max_ == -INFINITY) return -INFINITY;
    return max_ + std::log(scaled_);
}

}  // namespace jumpconv
