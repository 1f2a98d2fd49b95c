#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "jumpconv/montecarlo.hpp"

namespace jumpconv {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// YAML experiment files; the grammar is documented in the README.
ExperimentSpec parse_experiment(const std::string& yaml_text);
ExperimentSpec load_experiment(const std::filesystem::path& file);

// A `generator:` section on its own (used by gen/analyze).
GeneratorSpec parse_generator(const std::string& yaml_text);

}  // namespace jumpconv
