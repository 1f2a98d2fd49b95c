#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "jumpconv/characteristics.hpp"
#include "jumpconv/config.hpp"
#include "jumpconv/events.hpp"
#include "jumpconv/io.hpp"
#include "jumpconv/montecarlo.hpp"
#include "jumpconv/stats.hpp"
#include "jumpconv/suite.hpp"
#include "jumpconv/transforms.hpp"
#include "jumpconv/version.hpp"

namespace py = pybind11;
using namespace jumpconv;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return to_array(std::span<const T>(v));
}

// Accepts a catalog preset name or a YAML generator section.
GeneratorSpec spec_from(const std::string& text) {
    if (text.find(':') == std::string::npos) return catalog_preset(text);
    return parse_generator(text);
}

py::dict path_dict(const Generated& g) {
    py::dict d;
    const SamplePath& p = g.path;
    d["t"] = to_array(p.grid().times());
    d["X"] = to_array(p.values());
    d["dX"] = to_array(p.jumps());
    std::vector<double> cont(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) cont[k] = p.cont_increment(k);
    d["dXc"] = to_array(cont);
    if (g.rho) {
        if (g.rho->finite()) d["rho"] = g.rho->time;
        else d["rho"] = py::none();
    }
    d["fired"] = g.fired;
    return d;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["label"] = std::string(to_string(v.label));
    d["limit"] = v.limit;
    d["final_value"] = v.final_value;
    d["final_oscillation"] = v.final_oscillation;
    d["window_sup"] = v.window_sup;
    d["window_inf"] = v.window_inf;
    return d;
}

py::dict flags_dict(const EventFlags& f) {
    py::dict d;
    const std::pair<const char*, bool> plain[] = {{"a", f.a},   {"b", f.b},   {"c", f.c},   {"d", f.d},
                                                   {"e", f.e},   {"f", f.f},   {"g", f.g},   {"e1", f.e1},
                                                   {"e2", f.e2}, {"e3", f.e3}, {"e4", f.e4}, {"hypothesis", f.hypothesis}};
    for (const auto& [k, v] : plain) d[k] = v;
    const std::pair<const char*, std::optional<bool>> opt[] = {{"h", f.h}, {"f1", f.f1}, {"f2", f.f2}, {"f3", f.f3}, {"f4", f.f4}};
    for (const auto& [k, v] : opt) d[k] = v ? py::cast(*v) : py::none();
    return d;
}

py::dict analyze(const std::string& generator, std::uint64_t seed) {
    const Model model = compile(spec_from(generator));
    const Generated g = generate(model, seed);
    const ProxyParams params;
    const PathReports reports = compute_reports(model, g, params, true, true);
    py::dict d = path_dict(g);
    d["qv"] = to_array(reports.qv.total);
    d["verdict"] = verdict_dict(reports.x_verdict);
    d["flags"] = flags_dict(event_flags(model, g, reports, params));
    const TransformBundle& b = *reports.transforms;
    std::vector<double> e(b.E.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = b.E.value(k);
    d["E"] = to_array(e);
    d["Y"] = to_array(b.Y.values);
    d["V"] = to_array(b.V);
    d["exp_identity_error"] = b.defined_count > 1 ? check_exp_identity(b) : 0.0;
    return d;
}

py::dict run_experiment(const std::string& yaml_text, std::optional<std::uint64_t> seed, unsigned threads) {
    ExperimentSpec spec = parse_experiment(yaml_text);
    if (seed) spec.base_seed = *seed;
    spec.threads = threads;
    ExperimentResult r;
    {
        py::gil_scoped_release release;
        r = run_trials(spec);
    }
    py::dict marginals;
    for (std::size_t i = 0; i < r.event_names.size(); ++i) {
        const auto& m = r.marginals[i];
        marginals[py::str(r.event_names[i])] = py::make_tuple(m.p_hat, m.lo, m.hi, m.n);
    }
    py::dict stats;
    for (const auto& s : r.stats) stats[py::str(s.name)] = py::make_tuple(s.mean, s.sd, s.n_finite);
    py::dict matrices;
    for (const auto& m : r.matrices) matrices[py::str(m.group)] = py::make_tuple(m.events, m.rate);
    py::dict d;
    d["marginals"] = marginals;
    d["stats"] = stats;
    d["agreement"] = matrices;
    d["results_csv"] = results_csv(r);
    d["summary_csv"] = summary_csv(r);
    return d;
}

}  // namespace

PYBIND11_MODULE(_jumpconv, m) {
    m.doc() = "Jump-process convergence toolkit";
    m.attr("__version__") = std::string(kVersion);

    m.def("catalog_names", &catalog_names);
    m.def("describe", [](const std::string& g) { return describe(spec_from(g)); }, py::arg("generator"));
    m.def("generate", [](const std::string& g, std::uint64_t seed) { return path_dict(generate(compile(spec_from(g)), seed)); },
          py::arg("generator"), py::arg("seed"),
          "Sample one path. `generator` is a preset name or a YAML generator section.");
    m.def("analyze", &analyze, py::arg("generator"), py::arg("seed"),
          "Path, quadratic variation, verdict, event flags and transforms for one seed.");
    m.def("compensator_integral",
          [](const std::string& g, const std::string& f, double t) {
              return compensator_integral(spec_from(g), Integrand::parse(f), t);
          },
          py::arg("generator"), py::arg("integrand"), py::arg("t"));
    m.def("kappa",
          [](double c, std::int64_t n) {
              const auto s = example56_schedule(c, std::max<std::int64_t>(n, 1));
              const auto k = kappa_n(s, n);
              return py::make_tuple(k.exact, k.paper_bound);
          },
          py::arg("c"), py::arg("n"), "(exact, bound) for the two-point walk x_n = -1/2 on the schedule for c.");
    m.def("wilson",
          [](std::int64_t k, std::int64_t n) {
              const auto w = wilson(k, n);
              return py::make_tuple(w.p_hat, w.lo, w.hi);
          },
          py::arg("successes"), py::arg("n"));
    m.def("mean_test",
          [](const std::vector<double>& xs) {
              const auto t = mean_test(xs);
              return py::make_tuple(t.mean, t.se, t.z);
          },
          py::arg("values"));
    m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("seed") = py::none(), py::arg("threads") = 0u,
          "Run a YAML experiment and return marginals, statistics and agreement matrices.");
    m.def("run_suite",
          [](bool quick, std::vector<std::string> only, unsigned threads) {
              SuiteOptions opt;
              opt.quick = quick;
              opt.only = std::move(only);
              opt.threads = threads;
              std::vector<CriterionResult> results;
              {
                  py::gil_scoped_release release;
                  results = jumpconv::run_suite(opt);
              }
              py::list out;
              for (const auto& r : results) out.append(py::make_tuple(r.id, r.pass, r.supplementary, r.detail));
              return out;
          },
          py::arg("quick") = true, py::arg("only") = std::vector<std::string>{}, py::arg("threads") = 0u);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
}
