#include "jumpconv/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "jumpconv/io.hpp"

namespace jumpconv {

namespace {

void check_keys(const YAML::Node& node, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) throw ConfigError(fmt::format("{}: expected a mapping", where));
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
    }
}

template <class T>
T get(const YAML::Node& node, const char* key, const std::string& where) {
    try {
        return node[key].as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("{}.{}: bad value", where, key));
    }
}

template <class T>
void maybe(const YAML::Node& node, const char* key, const std::string& where, T& out) {
    if (node[key]) out = get<T>(node, key, where);
}

std::vector<double> number_list(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence()) throw ConfigError(where + ": expected a list of numbers");
    std::vector<double> v;
    for (const auto& x : node) {
        try {
            v.push_back(x.as<double>());
        } catch (const YAML::Exception&) {
            throw ConfigError(where + ": expected a list of numbers");
        }
    }
    return v;
}

void apply_random_walk(const YAML::Node& g, RandomWalkSpec& s) {
    check_keys(g, "generator", {"preset", "family", "horizon", "x", "p"});
    maybe(g, "horizon", "generator", s.horizon);
    if (const auto x = g["x"]) {
        if (x.IsScalar()) {
            s.x.preset = parse_x_preset(x.as<std::string>());
        } else {
            check_keys(x, "generator.x", {"preset", "zero_first", "values"});
            if (x["preset"]) s.x.preset = parse_x_preset(get<std::string>(x, "preset", "generator.x"));
            maybe(x, "zero_first", "generator.x", s.x.zero_first);
            if (x["values"]) s.x.values = number_list(x["values"], "generator.x.values");
        }
    }
    if (const auto p = g["p"]) {
        if (p.IsScalar()) {
            s.p.kind = parse_p_kind(p.as<std::string>());
        } else {
            check_keys(p, "generator.p", {"kind", "scale", "base", "exponent", "values"});
            if (p["kind"]) s.p.kind = parse_p_kind(get<std::string>(p, "kind", "generator.p"));
            maybe(p, "scale", "generator.p", s.p.scale);
            maybe(p, "base", "generator.p", s.p.base);
            maybe(p, "exponent", "generator.p", s.p.exponent);
            if (p["values"]) s.p.values = number_list(p["values"], "generator.p.values");
        }
    }
}

void apply_cox(const YAML::Node& g, CoxSpec& s) {
    check_keys(g, "generator",
               {"preset", "family", "horizon", "step", "lambda_scale", "gamma", "with_bm", "negate_jump"});
    maybe(g, "horizon", "generator", s.horizon);
    maybe(g, "step", "generator", s.step);
    maybe(g, "lambda_scale", "generator", s.lambda.scale);
    maybe(g, "with_bm", "generator", s.with_bm);
    maybe(g, "negate_jump", "generator", s.negate_jump);
    if (g["gamma"]) {
        s.gamma.kind = parse_gamma_kind(get<std::string>(g, "gamma", "generator"));
        if (s.gamma.kind == GammaKind::custom) throw ConfigError("generator.gamma: custom rates are API-only");
    }
}

void apply_oneshot(const YAML::Node& g, OneShotSpec& s) {
    check_keys(g, "generator", {"preset", "family", "horizon", "law", "a", "q", "alpha"});
    maybe(g, "horizon", "generator", s.horizon);
    maybe(g, "a", "generator", s.a);
    maybe(g, "q", "generator", s.q);
    maybe(g, "alpha", "generator", s.alpha);
    if (g["law"]) {
        const auto law = get<std::string>(g, "law", "generator");
        if (law == "two_point") s.law = OneShotLaw::two_point;
        else if (law == "pareto_exp") s.law = OneShotLaw::pareto_exp;
        else throw ConfigError(fmt::format("generator.law: unknown law '{}'", law));
    }
}

GeneratorSpec generator_fields(const YAML::Node& g) {
    if (!g || !g.IsMap()) throw ConfigError("generator: missing or not a mapping");
    GeneratorSpec spec;
    if (g["preset"]) {
        spec = catalog_preset(get<std::string>(g, "preset", "generator"));
        if (g["family"]) throw ConfigError("generator: give either preset or family, not both");
    } else if (g["family"]) {
        const auto fam = get<std::string>(g, "family", "generator");
        if (fam == "random_walk") spec = RandomWalkSpec{};
        else if (fam == "cox") spec = CoxSpec{};
        else if (fam == "oneshot") spec = OneShotSpec{};
        else if (fam == "det_alternating") spec = DetAlternatingSpec{};
        else throw ConfigError(fmt::format("generator.family: unknown family '{}'", fam));
    } else {
        throw ConfigError("generator: needs a preset or a family");
    }
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RandomWalkSpec>) apply_random_walk(g, s);
            else if constexpr (std::is_same_v<T, CoxSpec>) apply_cox(g, s);
            else if constexpr (std::is_same_v<T, OneShotSpec>) apply_oneshot(g, s);
            else {
                check_keys(g, "generator", {"preset", "family", "horizon"});
                maybe(g, "horizon", "generator", s.horizon);
            }
        },
        spec);
    // Surface parameter errors at load time.
    try {
        (void)compile(spec);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("generator: {}", e.what()));
    }
    return spec;
}

// Name lookups (presets, x rules, ...) throw plain invalid_argument.
GeneratorSpec generator_from(const YAML::Node& g) {
    try {
        return generator_fields(g);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("generator: {}", e.what()));
    }
}

YAML::Node load_yaml(const std::string& text) {
    try {
        return YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(fmt::format("config is not valid YAML: {}", e.what()));
    }
}

}  // namespace

GeneratorSpec parse_generator(const std::string& text) {
    const YAML::Node root = load_yaml(text);
    return generator_from(root["generator"] ? root["generator"] : root);
}

ExperimentSpec parse_experiment(const std::string& text) {
    const YAML::Node root = load_yaml(text);
    check_keys(root, "config", {"name", "generator", "trials", "base_seed", "threads", "analyzers", "proxy",
                                "sup_exp", "output"});
    ExperimentSpec s;
    maybe(root, "name", "config", s.name);
    s.generator = generator_from(root["generator"]);
    maybe(root, "trials", "config", s.trials);
    maybe(root, "base_seed", "config", s.base_seed);
    maybe(root, "threads", "config", s.threads);
    if (const auto a = root["analyzers"]) {
        if (!a.IsSequence()) throw ConfigError("analyzers: expected a list");
        for (const auto& x : a) {
            try {
                s.analyzers.push_back(Analyzer::parse(x.as<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(fmt::format("analyzers: {}", e.what()));
            }
        }
    }
    if (const auto p = root["proxy"]) {
        check_keys(p, "proxy", {"window", "tol", "big", "min_trend", "cap", "eta", "kappa", "levels"});
        maybe(p, "window", "proxy", s.proxy.window);
        maybe(p, "tol", "proxy", s.proxy.tol);
        maybe(p, "big", "proxy", s.proxy.big);
        maybe(p, "min_trend", "proxy", s.proxy.min_trend);
        maybe(p, "cap", "proxy", s.proxy.cap);
        maybe(p, "eta", "proxy", s.proxy.eta);
        maybe(p, "kappa", "proxy", s.proxy.kappa);
        if (p["levels"]) s.proxy.levels = number_list(p["levels"], "proxy.levels");
    }
    if (const auto e = root["sup_exp"]) {
        check_keys(e, "sup_exp", {"c"});
        s.sup_exp_c = get<double>(e, "c", "sup_exp");
    }
    if (const auto o = root["output"]) {
        check_keys(o, "output", {"dir"});
        s.out_dir = get<std::string>(o, "dir", "output");
    }
    try {
        validate(s);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return s;
}

ExperimentSpec load_experiment(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError(fmt::format("cannot read config {}", file.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str());
}

}  // namespace jumpconv
