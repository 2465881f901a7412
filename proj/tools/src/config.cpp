// config.cpp — JSON config parsing and validation

#include "heisen/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "heisen/presets.hpp"

namespace heisen::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ValidationError(field + ": " + why);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

double number_or(const json& parent, const char* key, double fallback, const std::string& field) {
    if (!parent.contains(key)) return fallback;
    return number(parent.at(key), field + "." + key);
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], field + "[" + std::to_string(k) + "]"));
    return out;
}

cplx scalar(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(field, "expected a number or [re, im]");
}

struct Named {
    std::string name;
    Matrix matrix;
};

struct BuiltModel {
    ModelSpec model;
    std::string label;
    std::vector<Named> observables;
};

Matrix pauli(char which) {
    Matrix m = Matrix::Zero(2, 2);
    switch (which) {
    case 'x': m(0, 1) = m(1, 0) = 1.0; break;
    case 'y': m(0, 1) = -kI; m(1, 0) = kI; break;
    case 'z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m(0, 1) = 1.0; break;  // σ₊ = |0⟩⟨1|
    }
    return m;
}

BuiltModel build_model(const json& j, const Constants& c) {
    if (!j.is_object()) fail("model", "expected an object");
    auto wrap = [](auto&& make) {
        try {
            return make();
        } catch (const heisen::Error& e) {
            throw ValidationError(e.what());
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("model: ") + e.what());
        }
    };

    if (j.contains("preset")) {
        if (!j["preset"].is_string()) fail("model.preset", "expected a string");
        const auto name = j["preset"].get<std::string>();
        if (name == "two_qubit") {
            const double cc = number_or(j, "c", 0.0, "model");
            if (cc < 0.0 || cc > 1.0) fail("model.c", "must lie in [0, 1]");
            auto tq = wrap([&] { return presets::two_qubit(cc, c.lambda, c.hbar); });
            return {tq.model, "two_qubit",
                    {{"S1x", tq.s1x}, {"S1y", tq.s1y}, {"S1z", tq.s1z}}};
        }
        if (name == "dephasing_bath") {
            presets::DephasingBathParams p;
            p.delta = number_or(j, "delta", p.delta, "model");
            p.center = number_or(j, "center", p.center, "model");
            p.spread = number_or(j, "spread", p.spread, "model");
            p.coupling = number_or(j, "coupling", p.coupling, "model");
            if (!(p.spread > 0.0)) fail("model.spread", "must be positive");
            if (!(p.coupling > 0.0)) fail("model.coupling", "must be positive");
            auto m = wrap([&] { return presets::dephasing_bath(c.lambda, c.hbar, p); });
            return {m, "dephasing_bath",
                    {{"sx", pauli('x')}, {"sy", pauli('y')}, {"sz", pauli('z')}, {"sigma_plus", pauli('+')}}};
        }
        fail("model.preset", "unknown preset '" + name + "'");
    }

    if (j.contains("random")) {
        const json& r = j["random"];
        if (!r.is_object()) fail("model.random", "expected an object");
        const bool seed_ok = r.contains("seed") && (r["seed"].is_number_unsigned() ||
                                                    (r["seed"].is_number_integer() && r["seed"].get<std::int64_t>() >= 0));
        if (!seed_ok) {
            fail("model.random.seed", "expected a non-negative integer");
        }
        const auto seed = r["seed"].get<std::uint64_t>();
        const auto ds = static_cast<Index>(number_or(r, "d_s", 2, "model.random"));
        const auto db = static_cast<Index>(number_or(r, "d_b", 2, "model.random"));
        if (ds < 1 || db < 1) fail("model.random", "d_s and d_b must be positive");
        if (ds * db > 64) fail("model.random", "d_s * d_b must not exceed 64");
        auto m = wrap([&] { return presets::random_model(seed, ds, db, c.lambda, c.hbar); });
        return {m, "random(seed=" + std::to_string(seed) + ")", {}};
    }

    for (const char* key : {"h0", "hb", "hi", "rho0", "rho_b"}) {
        if (!j.contains(key)) fail(std::string("model.") + key, "missing (or give model.preset / model.random)");
    }
    Matrix h0 = parse_matrix(j["h0"], "model.h0");
    Matrix hb = parse_matrix(j["hb"], "model.hb");
    Matrix hi = parse_matrix(j["hi"], "model.hi");
    Matrix rho0 = parse_matrix(j["rho0"], "model.rho0");
    Matrix rho_b = parse_matrix(j["rho_b"], "model.rho_b");
    if (rho_b.rows() != hb.rows()) {
        fail("model.rho_b", "dimension " + std::to_string(rho_b.rows()) + " does not match model.hb (" +
                                std::to_string(hb.rows()) + ")");
    }
    if (rho0.rows() != h0.rows()) {
        fail("model.rho0", "dimension " + std::to_string(rho0.rows()) + " does not match model.h0 (" +
                               std::to_string(h0.rows()) + ")");
    }
    auto m = wrap([&] { return ModelSpec::create(h0, hb, hi, rho0, rho_b, c); });
    return {m, "inline", {}};
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace

RunMode parse_run_mode(const std::string& s) {
    if (s == "one_point") return RunMode::one_point;
    if (s == "n_point") return RunMode::n_point;
    if (s == "image_exact") return RunMode::image_exact;
    if (s == "lindblad") return RunMode::lindblad;
    if (s == "markov_report") return RunMode::markov_report;
    if (s == "validate") return RunMode::validate;
    fail("run", "unknown mode '" + s + "'");
}

std::string to_string(RunMode m) {
    switch (m) {
    case RunMode::one_point: return "one_point";
    case RunMode::n_point: return "n_point";
    case RunMode::image_exact: return "image_exact";
    case RunMode::lindblad: return "lindblad";
    case RunMode::markov_report: return "markov_report";
    case RunMode::validate: return "validate";
    }
    return "?";
}

Matrix parse_matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) fail(field, "expected a non-empty list of rows");
    const std::size_t n = j.size();
    Matrix m(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != n) fail(rf, "expected a row of length " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) = scalar(j[r][c], rf + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

static ExperimentConfig parse_config_impl(json j, const Overrides& ov) {
    if (!j.is_object()) throw ParseError("config: top level must be an object");
    if (ov.order) j["truncation"]["order"] = *ov.order;
    if (ov.lambda) j["lambda"] = *ov.lambda;
    if (ov.output) j["output"]["path"] = *ov.output;
    if (ov.format) j["output"]["format"] = *ov.format;
    if (ov.run) j["run"] = to_string(*ov.run);
    if (ov.seed) {
        if (!j.contains("model") || !j["model"].contains("random")) {
            fail("model.random.seed", "--seed needs a random model");
        }
        j["model"]["random"]["seed"] = *ov.seed;
    }

    Constants c{number_or(j, "hbar", 1.0, "config"), number_or(j, "lambda", 0.0, "config")};
    if (!(c.hbar > 0.0)) fail("hbar", "must be positive");
    if (!std::isfinite(c.lambda)) fail("lambda", "must be finite");
    if (!j.contains("model")) fail("model", "missing");
    BuiltModel built = build_model(j["model"], c);

    if (!j.contains("run") || !j["run"].is_string()) fail("run", "missing or not a string");
    const RunMode mode = parse_run_mode(j["run"].get<std::string>());

    int cap = 8;
    if (j.contains("kernel_cap")) cap = static_cast<int>(number(j["kernel_cap"], "kernel_cap"));
    SeriesTruncation trunc{2, c.lambda};
    if (j.contains("truncation")) {
        const json& t = j["truncation"];
        if (t.contains("order")) {
            if (!t["order"].is_number_integer()) fail("truncation.order", "expected an integer");
            trunc.order = t["order"].get<int>();
        }
    }
    if (trunc.order < 0) fail("truncation.order", "must be >= 0");
    if (trunc.order > cap) {
        fail("truncation.order", std::to_string(trunc.order) + " exceeds the kernel cap " + std::to_string(cap));
    }

    std::vector<ObservableSpec> obs;
    if (j.contains("observables")) {
        const json& list = j["observables"];
        if (!list.is_array()) fail("observables", "expected a list");
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string f = "observables[" + std::to_string(k) + "]";
            const json& o = list[k];
            if (!o.is_object() || !o.contains("name") || !o["name"].is_string()) fail(f + ".name", "missing");
            ObservableSpec spec;
            spec.name = o["name"].get<std::string>();
            if (o.contains("matrix")) {
                spec.matrix = parse_matrix(o["matrix"], f + ".matrix");
            } else {
                auto it = std::find_if(built.observables.begin(), built.observables.end(),
                                       [&](const Named& n) { return n.name == spec.name; });
                if (it == built.observables.end()) {
                    fail(f + ".matrix", "required: '" + spec.name + "' is not a preset observable");
                }
                spec.matrix = it->matrix;
            }
            if (spec.matrix.rows() != built.model.dims().sys) {
                fail(f + ".matrix", "expected a " + std::to_string(built.model.dims().sys) + "x" +
                                        std::to_string(built.model.dims().sys) + " system operator");
            }
            if (o.contains("time")) spec.times.push_back(number(o["time"], f + ".time"));
            if (o.contains("times")) {
                auto ts = number_list(o["times"], f + ".times");
                spec.times.insert(spec.times.end(), ts.begin(), ts.end());
            }
            for (double t : spec.times) {
                if (t < 0.0) fail(f + ".times", "times must be non-negative");
            }
            obs.push_back(std::move(spec));
        }
    }
    if (obs.empty() && mode != RunMode::markov_report) fail("observables", "at least one observable is required");
    if (mode == RunMode::n_point) {
        for (std::size_t k = 0; k < obs.size(); ++k) {
            if (obs[k].times.size() != 1) {
                fail("observables[" + std::to_string(k) + "].time", "n_point needs exactly one time per observable");
            }
        }
    }

    std::vector<double> grid_times;
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("times")) {
            grid_times = number_list(g["times"], "grid.times");
        } else {
            const double t_max = number_or(g, "t_max", 1.0, "grid");
            const double n = number_or(g, "intervals", 10, "grid");
            if (!(t_max > 0.0)) fail("grid.t_max", "must be positive");
            if (n < 1 || n > 100000) fail("grid.intervals", "must be in [1, 100000]");
            grid_times = TimeGrid::uniform(t_max, static_cast<std::size_t>(n)).times();
        }
    } else {
        grid_times = TimeGrid::uniform(1.0, 10).times();
    }
    for (const auto& o : obs) grid_times.insert(grid_times.end(), o.times.begin(), o.times.end());
    ValidateSpec vs;
    if (j.contains("validate")) {
        const json& v = j["validate"];
        if (v.contains("lambdas")) vs.lambdas = number_list(v["lambdas"], "validate.lambdas");
        vs.time = number_or(v, "time", vs.time, "validate");
        vs.slope_margin = number_or(v, "slope_margin", vs.slope_margin, "validate");
        if (vs.lambdas.size() < 2) fail("validate.lambdas", "need at least two values");
        for (double l : vs.lambdas) {
            if (!(l > 0.0)) fail("validate.lambdas", "values must be positive");
        }
        if (vs.time < 0.0) fail("validate.time", "must be non-negative");
    }
    if (mode == RunMode::validate) grid_times.push_back(vs.time);
    TimeGrid grid = [&] {
        try {
            return TimeGrid::covering(grid_times);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string("grid: ") + e.what());
        }
    }();

    MarkovSpec ms;
    if (j.contains("markov")) {
        const json& mk = j["markov"];
        ms.horizon = number_or(mk, "horizon", ms.horizon, "markov");
        ms.decay_threshold = number_or(mk, "decay_threshold", ms.decay_threshold, "markov");
        ms.eta = number_or(mk, "eta", ms.eta, "markov");
        if (mk.contains("extrapolate")) ms.extrapolate = mk["extrapolate"].get<bool>();
        if (mk.contains("one_sided_free_term")) ms.one_sided_free_term = mk["one_sided_free_term"].get<bool>();
        if (!(ms.horizon > 0.0)) fail("markov.horizon", "must be positive");
        if (ms.eta < 0.0) fail("markov.eta", "must be >= 0");
        if (ms.extrapolate && !(ms.eta > 0.0)) fail("markov.extrapolate", "needs markov.eta > 0");
    }

    OutputSpec out;
    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("path")) out.path = o["path"].get<std::string>();
        if (o.contains("format")) {
            const auto f = o["format"].get<std::string>();
            if (f == "csv") out.format = OutputFormat::csv;
            else if (f == "json") out.format = OutputFormat::json;
            else fail("output.format", "expected csv or json");
        }
    }

    return ExperimentConfig{std::move(built.model), std::move(built.label), mode, std::move(obs), trunc,
                            std::move(grid), std::move(out), ms, std::move(vs), cap};
}

ExperimentConfig parse_config(json j, const Overrides& ov) {
    try {
        return parse_config_impl(std::move(j), ov);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path, const Overrides& ov) {
    return parse_config(read_json(path), ov);
}

} // namespace heisen::cli
