#include "jumpconv/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "jumpconv/characteristics.hpp"
#include "jumpconv/io.hpp"

namespace jumpconv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logistic(double z) { return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

double point_identity_error(int sign, double log_abs, double y_minus_v) {
    if (sign <= 0) {
        // E is zero or negative here while exp(Y - V) > 0.
        const double e = sign == 0 ? 0.0 : -std::exp(log_abs);
        return (std::abs(e) + std::exp(y_minus_v)) / (1.0 + std::abs(e));
    }
    // |e^a - e^d| / (1 + e^a) = |expm1(d - a)| * e^a / (1 + e^a)
    return std::abs(std::expm1(y_minus_v - log_abs)) * logistic(log_abs);
}

}  // namespace

double ExpSeries::value(std::size_t k) const {
    if (sign[k] == 0) return 0.0;
    return sign[k] * std::exp(log_abs[k]);
}

ExpSeries stochastic_exponential(const SamplePath& path) {
    const std::size_t n = path.size();
    ExpSeries e;
    e.sign.resize(n);
    e.log_abs.resize(n);
    int sign = 1;
    double la = 0.0;
    e.sign[0] = 1;
    e.log_abs[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        if (sign != 0) {
            const double w = path.diffusion(k);
            la += path.drift(k) + w - 0.5 * w * w;
            const double dx = path.jump(k);
            if (dx != 0.0) {
                const double f = 1.0 + dx;
                if (f == 0.0) {
                    sign = 0;
                    la = kNegInf;
                } else {
                    if (f < 0.0) sign = -sign;
                    la += dx > -1.0 ? std::log1p(dx) : std::log(-f);
                }
            }
        }
        e.sign[k] = sign;
        e.log_abs[k] = la;
    }
    return e;
}

std::optional<double> tau_J(const SamplePath& path) {
    for (std::size_t k = 1; k < path.size(); ++k)
        if (path.jump(k) == -1.0) return path.time(k);
    return std::nullopt;
}

std::size_t sign_changes(const ExpSeries& e) {
    std::size_t count = 0;
    for (std::size_t k = 1; k < e.size(); ++k)
        if (e.sign[k] != 0 && e.sign[k] != e.sign[k - 1]) ++count;
    return count;
}

LogTransform logarithmic_transform(const Model& model, const Generated& g) {
    const SamplePath& path = g.path;
    const std::size_t n = path.size();
    LogTransform y;
    y.values.assign(1, 0.0);
    y.jumps.assign(1, 0.0);
    y.cont.assign(1, 0.0);
    if (!supports_log_transform(model)) {
        y.defined_count = 1;
        y.truncated = true;
        return y;
    }
    const std::vector<double> gammas = gamma_series(model);
    const CoxModel* cox = std::get_if<CoxModel>(&model);
    const TimeGrid& grid = path.grid();
    double acc = 0.0;
    std::size_t k = 1;
    for (; k < n; ++k) {
        const double dx = path.jump(k);
        if (!(dx > -1.0)) break;
        double c = path.diffusion(k);
        if (cox) {
            const double a = grid[k - 1], b = grid[k];
            if (!g.rho || !g.rho->observed() || g.rho->time >= b)
                c -= cox->step_log()[k];
            else if (g.rho->time > a)
                c -= cox->log_integral(a, g.rho->time);
        }
        const double j = (dx == 0.0 ? 0.0 : std::log1p(dx)) + gammas[k];
        acc += c + j;
        y.values.push_back(acc);
        y.jumps.push_back(j);
        y.cont.push_back(c);
    }
    y.defined_count = k;
    y.truncated = k < n;
    return y;
}

TransformBundle make_transform_bundle(const Model& model, const Generated& g) {
    TransformBundle b{g.path.grid(), stochastic_exponential(g.path), logarithmic_transform(model, g), {},
                      tau_J(g.path), 0};
    b.defined_count = b.Y.defined_count;
    if (b.defined_count > 1) {
        b.V = exponential_compensator(model, g);
        b.V.resize(b.defined_count);
    } else {
        b.V.assign(1, 0.0);
    }
    return b;
}

double check_exp_identity(const TransformBundle& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < b.defined_count; ++k)
        worst = std::max(worst, point_identity_error(b.E.sign[k], b.E.log_abs[k], b.Y.values[k] - b.V[k]));
    return worst;
}

double check_jump_identity(const TransformBundle& b, const SamplePath& path, std::span<const double> gammas) {
    double worst = 0.0;
    for (std::size_t k = 1; k < b.defined_count; ++k) {
        const double dy = b.Y.values[k] - b.Y.values[k - 1] - b.Y.cont[k];
        const double dx = path.jump(k);
        const double expected = (dx == 0.0 ? 0.0 : std::log1p(dx)) + (gammas.empty() ? 0.0 : gammas[k]);
        worst = std::max(worst, std::abs(dy - expected));
    }
    return worst;
}

void write_transforms_csv(std::ostream& out, const TransformBundle& b) {
    out << "t,E,Y,V,identity_err\n";
    for (std::size_t k = 0; k < b.E.size(); ++k) {
        out << format_real(b.grid[k]) << ',' << format_real(b.E.value(k)) << ',';
        if (k < b.defined_count) {
            out << format_real(b.Y.values[k]) << ',' << format_real(b.V[k]) << ','
                << format_real(point_identity_error(b.E.sign[k], b.E.log_abs[k], b.Y.values[k] - b.V[k]));
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

}  // namespace jumpconv
