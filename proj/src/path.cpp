#include "jumpconv/path.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "jumpconv/io.hpp"

namespace jumpconv {

TimeGrid::TimeGrid(GridKind kind, double step, std::vector<double> times)
    : kind_(kind), step_(step),
      times_(std::make_shared<const std::vector<double>>(std::move(times))) {}

TimeGrid TimeGrid::integer_events(std::int64_t n_events) {
    if (n_events < 1) throw std::invalid_argument("integer grid needs at least one event");
    std::vector<double> t(static_cast<std::size_t>(n_events) + 1);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k);
    return TimeGrid(GridKind::integer_events, 1.0, std::move(t));
}

TimeGrid TimeGrid::uniform(double step, double horizon) {
    if (!(step > 0.0) || !std::isfinite(step) || !(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("uniform grid needs positive finite step and horizon");
    const double ratio = horizon / step;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("grid step must divide the horizon");
    if (steps > 1e9) throw std::invalid_argument("grid too large");
    const auto n = static_cast<std::size_t>(steps);
    std::vector<double> t(n + 1);
    for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * step;
    t[n] = horizon;
    return TimeGrid(GridKind::uniform, step, std::move(t));
}

std::size_t TimeGrid::count_upto(double t) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(times_->begin(), times_->end(), t) -
                                    times_->begin());
}

bool TimeGrid::operator==(const TimeGrid& other) const noexcept {
    if (kind_ != other.kind_) return false;
    if (times_ == other.times_) return true;
    return *times_ == *other.times_;
}

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values, std::vector<double> jumps,
                       std::vector<double> drift, std::vector<double> diffusion)
    : grid_(std::move(grid)), values_(std::move(values)), jumps_(std::move(jumps)),
      drift_(std::move(drift)), diffusion_(std::move(diffusion)) {
    const std::size_t n = grid_.size();
    if (values_.size() != n || jumps_.size() != n) throw std::invalid_argument("path size mismatch");
    if (!drift_.empty() && drift_.size() != n) throw std::invalid_argument("drift size mismatch");
    if (!diffusion_.empty() && diffusion_.size() != n)
        throw std::invalid_argument("diffusion size mismatch");
    require_finite(values_, "value");
    require_finite(jumps_, "jump");
    require_finite(drift_, "drift");
    require_finite(diffusion_, "diffusion");
    if (jumps_[0] != 0.0 || cont_increment(0) != 0.0)
        throw std::invalid_argument("no jump or increment allowed at the initial time");
    for (std::size_t k = 1; k < n; ++k) {
        if (values_[k] != (values_[k - 1] + cont_increment(k)) + jumps_[k])
            throw std::invalid_argument("value does not match left value plus increments at index " +
                                        std::to_string(k));
    }
}

PathBuilder::PathBuilder(TimeGrid grid, double x0, bool with_drift, bool with_diffusion)
    : grid_(std::move(grid)), with_drift_(with_drift), with_diffusion_(with_diffusion) {
    const std::size_t n = grid_.size();
    values_.reserve(n);
    jumps_.reserve(n);
    values_.push_back(x0);
    jumps_.push_back(0.0);
    if (with_drift_) {
        drift_.reserve(n);
        drift_.push_back(0.0);
    }
    if (with_diffusion_) {
        diffusion_.reserve(n);
        diffusion_.push_back(0.0);
    }
}

void PathBuilder::step(double jump, double drift, double diffusion) {
    if (values_.size() >= grid_.size()) throw std::logic_error("path builder overrun");
    if ((!with_drift_ && drift != 0.0) || (!with_diffusion_ && diffusion != 0.0))
        throw std::logic_error("path builder got an increment it was not configured for");
    const double v = (values_.back() + (drift + diffusion)) + jump;
    values_.push_back(v);
    jumps_.push_back(jump);
    if (with_drift_) drift_.push_back(drift);
    if (with_diffusion_) diffusion_.push_back(diffusion);
}

SamplePath PathBuilder::finish() && {
    if (values_.size() != grid_.size()) throw std::logic_error("path builder not filled");
    return SamplePath(std::move(grid_), std::move(values_), std::move(jumps_), std::move(drift_),
                      std::move(diffusion_));
}

QVSeries quadratic_variation(const SamplePath& path) {
    const std::size_t n = path.size();
    QVSeries qv;
    qv.total.resize(n);
    qv.continuous.resize(n);
    qv.jump.resize(n);
    double c = 0.0, j = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = path.diffusion(k);
        const double dx = path.jump(k);
        c += d * d;
        j += dx * dx;
        qv.continuous[k] = c;
        qv.jump[k] = j;
        qv.total[k] = c + j;
    }
    return qv;
}

Extrema running_extrema(const SamplePath& path) {
    Extrema e;
    const auto v = path.values();
    e.sup.resize(v.size());
    e.inf.resize(v.size());
    double hi = v[0], lo = v[0];
    for (std::size_t k = 0; k < v.size(); ++k) {
        hi = std::max(hi, v[k]);
        lo = std::min(lo, v[k]);
        e.sup[k] = hi;
        e.inf[k] = lo;
    }
    return e;
}

double oscillation(const SamplePath& path, double window) {
    const TimeGrid& g = path.grid();
    if (!(window > 0.0) || window > g.horizon())
        throw std::invalid_argument("oscillation window must lie in (0, horizon]");
    const double from = g.end() - window;
    const auto t = g.times();
    const auto first =
        static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), from) - t.begin());
    const auto v = path.values();
    const auto [lo, hi] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(first), v.end());
    return *hi - *lo;
}

SamplePath add_paths(const SamplePath& a, const SamplePath& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("add_paths: grids differ");
    const bool drift = a.has_drift() || b.has_drift();
    const bool diff = a.has_diffusion() || b.has_diffusion();
    PathBuilder builder(a.grid(), a.value(0) + b.value(0), drift, diff);
    for (std::size_t k = 1; k < a.size(); ++k)
        builder.step(a.jump(k) + b.jump(k), a.drift(k) + b.drift(k),
                     a.diffusion(k) + b.diffusion(k));
    return std::move(builder).finish();
}

SamplePath constant_path(const TimeGrid& grid, double value) {
    return SamplePath(grid, std::vector<double>(grid.size(), value),
                      std::vector<double>(grid.size(), 0.0));
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
    out << "t,X,dX,dXc\n";
    for (std::size_t k = 0; k < path.size(); ++k) {
        out << format_real(path.time(k)) << ',' << format_real(path.value(k)) << ','
            << format_real(path.jump(k)) << ',' << format_real(path.cont_increment(k)) << '\n';
    }
}

}  // namespace jumpconv
