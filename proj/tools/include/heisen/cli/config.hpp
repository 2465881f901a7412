// config.hpp — Experiment configuration: JSON ingestion, overrides and validation

#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisen/model.hpp"
#include "heisen/ode.hpp"
#include "heisen/superop.hpp"

namespace heisen::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed file or JSON syntax
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};
// Well-formed but semantically invalid; the message starts with the field path
struct ValidationError : ConfigError {
    using ConfigError::ConfigError;
};

enum class RunMode { one_point, n_point, image_exact, lindblad, markov_report, validate };
enum class OutputFormat { csv, json };

RunMode parse_run_mode(const std::string& s);
std::string to_string(RunMode m);

struct ObservableSpec {
    std::string name;
    Matrix matrix;
    std::vector<double> times;
};

struct MarkovSpec {
    double horizon{3.0};
    double decay_threshold{0.15};
    double eta{0.0};
    bool extrapolate{false};
    bool one_sided_free_term{false};
};

struct ValidateSpec {
    std::vector<double> lambdas{1e-1, 1e-2, 1e-3, 1e-4};
    double time{1.0};
    double slope_margin{0.8};
};

struct OutputSpec {
    std::string path;  // empty: standard output
    OutputFormat format{OutputFormat::csv};
};

// Command-line overrides applied to the JSON tree before validation.
struct Overrides {
    std::optional<int> order;
    std::optional<double> lambda;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    std::optional<RunMode> run;
};

struct ExperimentConfig {
    ModelSpec model;
    std::string model_label;
    RunMode run;
    std::vector<ObservableSpec> observables;
    SeriesTruncation truncation;
    TimeGrid grid;
    OutputSpec output;
    MarkovSpec markov;
    ValidateSpec validate;
    int kernel_cap{8};
};

ExperimentConfig parse_config(nlohmann::json j, const Overrides& ov = {});
ExperimentConfig load_config(const std::string& path, const Overrides& ov = {});

// Complex scalars as numbers or [re, im]; matrices as row-major nested lists.
Matrix parse_matrix(const nlohmann::json& j, const std::string& field);
nlohmann::json matrix_to_json(const Matrix& m);

} // namespace heisen::cli
