#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace jumpconv {

enum class GridKind { integer_events, uniform };

// Immutable time grid. Integer-event grids are 0,1,...,N with events at 1..N; the
// time at index k is exactly k. Uniform grids are 0,h,...,T.
class TimeGrid {
public:
    static TimeGrid integer_events(std::int64_t n_events);
    static TimeGrid uniform(double step, double horizon);

    GridKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return times_->size(); }
    double operator[](std::size_t k) const noexcept { return (*times_)[k]; }
    std::span<const double> times() const noexcept { return *times_; }
    double start() const noexcept { return times_->front(); }
    double end() const noexcept { return times_->back(); }
    double horizon() const noexcept { return end() - start(); }
    double step() const noexcept { return step_; }

    // Number of grid points with time <= t.
    std::size_t count_upto(double t) const noexcept;

    bool operator==(const TimeGrid& other) const noexcept;

private:
    TimeGrid(GridKind kind, double step, std::vector<double> times);

    GridKind kind_;
    double step_;
    std::shared_ptr<const std::vector<double>> times_;
};

// Cadlag path sampled on a grid. Continuous increments are split into a drift part
// (no quadratic variation) and a diffusive part. Empty drift/diffusion vectors mean
// identically zero. value[k] == (value[k-1] + (drift[k] + diffusion[k])) + jump[k]
// holds bit-exactly; the constructor rejects anything else.
class SamplePath {
public:
    SamplePath(TimeGrid grid, std::vector<double> values, std::vector<double> jumps,
               std::vector<double> drift = {}, std::vector<double> diffusion = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    double time(std::size_t k) const noexcept { return grid_[k]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> jumps() const noexcept { return jumps_; }
    std::span<const double> drift() const noexcept { return drift_; }
    std::span<const double> diffusion() const noexcept { return diffusion_; }

    double value(std::size_t k) const noexcept { return values_[k]; }
    double jump(std::size_t k) const noexcept { return jumps_[k]; }
    double drift(std::size_t k) const noexcept { return drift_.empty() ? 0.0 : drift_[k]; }
    double diffusion(std::size_t k) const noexcept {
        return diffusion_.empty() ? 0.0 : diffusion_[k];
    }
    double cont_increment(std::size_t k) const noexcept { return drift(k) + diffusion(k); }
    // Value just before the jump at index k.
    double left_value(std::size_t k) const noexcept {
        return k == 0 ? values_[0] : values_[k - 1] + cont_increment(k);
    }
    double final_value() const noexcept { return values_.back(); }
    bool has_drift() const noexcept { return !drift_.empty(); }
    bool has_diffusion() const noexcept { return !diffusion_.empty(); }

private:
    TimeGrid grid_;
    std::vector<double> values_;
    std::vector<double> jumps_;
    std::vector<double> drift_;
    std::vector<double> diffusion_;
};

// Appends one grid step at a time and stores the reconstructed values.
class PathBuilder {
public:
    explicit PathBuilder(TimeGrid grid, double x0 = 0.0, bool with_drift = false,
                         bool with_diffusion = false);
    void step(double jump, double drift = 0.0, double diffusion = 0.0);
    std::size_t filled() const noexcept { return values_.size(); }
    SamplePath finish() &&;

private:
    TimeGrid grid_;
    std::vector<double> values_, jumps_, drift_, diffusion_;
    bool with_drift_, with_diffusion_;
};

struct QVSeries {
    std::vector<double> total;       // [X,X]_t
    std::vector<double> continuous;  // [X^c,X^c]_t
    std::vector<double> jump;        // sum of squared jumps up to t
};

struct Extrema {
    std::vector<double> sup;
    std::vector<double> inf;
};

QVSeries quadratic_variation(const SamplePath& path);
Extrema running_extrema(const SamplePath& path);
// max - min of the values with time >= end - window.
double oscillation(const SamplePath& path, double window);
SamplePath add_paths(const SamplePath& a, const SamplePath& b);
SamplePath constant_path(const TimeGrid& grid, double value);

// Columns t,X,dX,dXc with a header row.
void write_path_csv(std::ostream& out, const SamplePath& path);

}  // namespace jumpconv
