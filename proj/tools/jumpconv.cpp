// jumpconv command-line front end: gen, analyze, mc, suite.
#include <cstdlib>
#include <iostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <fmt/format.h>

#include "jumpconv/characteristics.hpp"
#include "jumpconv/config.hpp"
#include "jumpconv/events.hpp"
#include "jumpconv/io.hpp"
#include "jumpconv/montecarlo.hpp"
#include "jumpconv/suite.hpp"
#include "jumpconv/transforms.hpp"
#include "jumpconv/version.hpp"

namespace fs = std::filesystem;
using namespace jumpconv;

namespace {

constexpr int kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3;

struct PathInput {
    std::string preset;
    std::string config;
    std::uint64_t seed = 0;
    std::string out;
};

// --out beats JUMPCONV_OUT, which beats the config file and the default.
fs::path output_dir(const std::string& flag, const fs::path& fallback) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("JUMPCONV_OUT"); env && *env) return env;
    return fallback;
}

std::string read_text(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw IoError(fmt::format("cannot read config {}", file));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GeneratorSpec input_generator(const PathInput& in) {
    if (in.preset.empty() == in.config.empty()) throw ConfigError("give exactly one of --preset or --config");
    if (!in.preset.empty()) return catalog_preset(in.preset);
    return parse_generator(read_text(in.config));
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

std::string rho_text(const Generated& g) {
    if (!g.rho) return "";
    switch (g.rho->kind) {
        case JumpTime::Kind::never: return "never";
        case JumpTime::Kind::beyond_horizon: return "beyond_horizon:" + format_real(g.rho->time);
        case JumpTime::Kind::within_horizon: return format_real(g.rho->time);
    }
    return "";
}

int cmd_gen(const PathInput& in) {
    const GeneratorSpec spec = input_generator(in);
    const Model model = compile(spec);
    const Generated g = generate(model, in.seed);
    const fs::path dir = output_dir(in.out, "jumpconv_out");
    ensure_dir(dir);
    std::ostringstream path_csv;
    write_path_csv(path_csv, g.path);
    write_file_atomic(dir / "path.csv", path_csv.str());
    std::string meta = fmt::format("generator={}\nseed={}\n", describe(spec), in.seed);
    if (g.rho) meta += "rho=" + rho_text(g) + "\n";
    write_file_atomic(dir / "path_meta.txt", meta);
    return kOk;
}

int cmd_analyze(const PathInput& in, const std::vector<std::string>& integrands, const ProxyParams& proxy) {
    validate(proxy);
    const GeneratorSpec spec = input_generator(in);
    const Model model = compile(spec);
    const Generated g = generate(model, in.seed);
    const fs::path dir = output_dir(in.out, "jumpconv_out");
    ensure_dir(dir);

    std::vector<Integrand> fs_;
    for (const auto& s : integrands) fs_.push_back(Integrand::parse(s));

    std::ostringstream path_csv, ch_csv, tr_csv;
    write_path_csv(path_csv, g.path);
    write_characteristics_csv(ch_csv, characteristics_report(model, g, fs_));
    const PathReports rep = compute_reports(model, g, proxy, true, true);
    write_transforms_csv(tr_csv, *rep.transforms);
    const EventFlags fl = event_flags(model, g, rep, proxy);
    const LocalizerReport loc = crossing_localizer(g.path, proxy.levels);

    auto b = [](bool x) { return x ? "1" : "0"; };
    auto ob = [](const std::optional<bool>& x) { return x ? (*x ? "1" : "0") : ""; };
    const Verdict& v = rep.x_verdict;
    std::string rpt;
    rpt += fmt::format("generator={}\nseed={}\n", describe(spec), in.seed);
    if (g.rho) rpt += "rho=" + rho_text(g) + "\n";
    rpt += fmt::format("verdict={}\nlimit={}\nfinal_value={}\nfinal_oscillation={}\nwindow_sup={}\nwindow_inf={}\n",
                       to_string(v.label), format_real(v.limit), format_real(v.final_value),
                       format_real(v.final_oscillation), format_real(v.window_sup), format_real(v.window_inf));
    rpt += fmt::format("qv_total={}\nqv_continuous={}\n", format_real(rep.qv.total.back()),
                       format_real(rep.qv.continuous.back()));
    rpt += fmt::format("a={}\nb={}\nc={}\nd={}\ne={}\nf={}\ng={}\nh={}\nhypothesis={}\n", b(fl.a), b(fl.b), b(fl.c),
                       b(fl.d), b(fl.e), b(fl.f), b(fl.g), ob(fl.h), b(fl.hypothesis));
    rpt += fmt::format("e1={}\ne2={}\ne3={}\ne4={}\n", b(fl.e1), b(fl.e2), b(fl.e3), b(fl.e4));
    rpt += fmt::format("f1={}\nf2={}\nf3={}\nf4={}\n", ob(fl.f1), ob(fl.f2), ob(fl.f3), ob(fl.f4));
    for (const auto& l : loc.levels)
        rpt += fmt::format("rho_{}={}\n", format_param(l.level), l.crossing_time ? format_real(*l.crossing_time) : "never");
    rpt += fmt::format("localizer_coverage={}\nlocalizer_domination={}\n", b(loc.coverage), b(loc.domination_holds));
    rpt += fmt::format("exp_identity_err={}\n", format_real(check_exp_identity(*rep.transforms)));

    write_file_atomic(dir / "path.csv", path_csv.str());
    write_file_atomic(dir / "characteristics.csv", ch_csv.str());
    write_file_atomic(dir / "transforms.csv", tr_csv.str());
    write_file_atomic(dir / "report.txt", rpt);
    return kOk;
}

int cmd_mc(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out,
           std::optional<unsigned> threads) {
    ExperimentSpec spec = load_experiment(config);
    if (seed) spec.base_seed = *seed;
    if (threads) spec.threads = *threads;
    const fs::path dir = output_dir(out, spec.out_dir.empty() ? fs::path("jumpconv_out") : spec.out_dir);
    const ExperimentResult r = run_trials(spec);
    write_experiment(spec, r, dir);
    std::cerr << fmt::format("{}: {} trials in {:.1f}s, outputs in {}\n", spec.name, spec.trials, r.wall_seconds,
                             dir.string());
    return kOk;
}

int cmd_suite(bool quick, std::uint64_t seed, unsigned threads, const std::string& out,
              const std::vector<std::string>& only) {
    SuiteOptions opt;
    opt.quick = quick;
    opt.seed = seed;
    opt.threads = threads;
    opt.only = only;
    opt.log = &std::cout;
    const fs::path dir = output_dir(out, {});
    if (!dir.empty()) {
        ensure_dir(dir);
        opt.out_dir = dir;
    }
    const auto results = run_suite(opt);
    int primary = 0, failed = 0;
    for (const auto& r : results) {
        if (r.supplementary) continue;
        ++primary;
        failed += !r.pass;
    }
    std::cout << fmt::format("{} of {} criterion lines passed\n", primary - failed, primary);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convergence diagnostics for jump processes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    PathInput gen_in, an_in;
    auto* gen = app.add_subcommand("gen", "Generate one sample path");
    auto* analyze = app.add_subcommand("analyze", "Reports for one sample path");
    for (auto [sub, in] : {std::pair{gen, &gen_in}, std::pair{analyze, &an_in}}) {
        sub->add_option("--preset", in->preset, "Catalog preset name");
        sub->add_option("--config", in->config, "YAML file with a generator section");
        sub->add_option("--seed", in->seed, "Trial seed")->required();
        sub->add_option("--out", in->out, "Output directory");
    }
    std::vector<std::string> integrands{"SQ_CAP_ABS", "POS_TAIL[1.0]", "X_MINUS_LOG"};
    analyze->add_option("--integrands", integrands, "Integrands for the compensator report");
    ProxyParams proxy;
    analyze->add_option("--window", proxy.window, "Final window as a fraction of the horizon");
    analyze->add_option("--tol", proxy.tol, "Oscillation tolerance");
    analyze->add_option("--big", proxy.big, "Divergence level");

    std::string mc_config, mc_out;
    std::optional<std::uint64_t> mc_seed;
    std::optional<unsigned> mc_threads;
    auto* mc = app.add_subcommand("mc", "Run a Monte Carlo experiment");
    mc->add_option("--config", mc_config, "Experiment YAML file")->required();
    mc->add_option("--seed", mc_seed, "Base seed (overrides the config)");
    mc->add_option("--out", mc_out, "Output directory");
    mc->add_option("--threads", mc_threads, "Worker thread cap");

    bool quick = false;
    std::uint64_t suite_seed = 20240601;
    unsigned suite_threads = 0;
    std::string suite_out;
    std::vector<std::string> only;
    auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
    suite->add_flag("--quick", quick, "Cap every Monte Carlo run at 1000 trials");
    suite->add_option("--seed", suite_seed, "Base seed");
    suite->add_option("--threads", suite_threads, "Worker thread cap");
    suite->add_option("--out", suite_out, "Directory for per-experiment outputs");
    suite->add_option("--only", only, "Criterion id prefixes to run (e.g. AC3 AC7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kConfigError;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_in);
        if (analyze->parsed()) return cmd_analyze(an_in, integrands, proxy);
        if (mc->parsed()) return cmd_mc(mc_config, mc_seed, mc_out, mc_threads);
        if (suite->parsed()) return cmd_suite(quick, suite_seed, suite_threads, suite_out, only);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kConfigError;
}
