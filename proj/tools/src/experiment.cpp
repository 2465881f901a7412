// experiment.cpp — Orchestration of the run modes

#include "heisen/cli/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "heisen/markov.hpp"
#include "heisen/npoint.hpp"
#include "heisen/oracle.hpp"

namespace heisen::cli {
namespace {

const std::vector<std::string> kLongColumns{"time", "observable", "row", "col", "re", "im"};

void add_matrix(Table& t, double time, const std::string& name, const Matrix& m) {
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            t.add({time, name, static_cast<std::int64_t>(r), static_cast<std::int64_t>(c), m(r, c).real(),
                   m(r, c).imag()});
        }
    }
}

bool wanted(const ObservableSpec& o, double t) {
    if (o.times.empty()) return true;
    for (double s : o.times) {
        if (std::abs(s - t) <= 1e-12 * std::max(1.0, std::abs(t))) return true;
    }
    return false;
}

Table base_table(const ExperimentConfig& cfg) {
    Table t;
    t.columns = kLongColumns;
    t.meta = {{"run", to_string(cfg.run)},
              {"model", cfg.model_label},
              {"hbar", cfg.model.hbar()},
              {"lambda", cfg.truncation.lambda},
              {"order", cfg.truncation.order},
              {"d_s", cfg.model.dims().sys},
              {"d_b", cfg.model.dims().bath}};
    return t;
}

KernelSet kernels(const ExperimentConfig& cfg, const TimeGrid& grid, int order) {
    KernelOptions ko;
    ko.hard_cap = cfg.kernel_cap;
    return compute_kernels(cfg.model, order, grid, ko);
}

// Runs f(k) for k in [0, n) on up to worker_threads() threads; results are
// written by index so the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned workers = std::min<unsigned>(worker_threads(), static_cast<unsigned>(n));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) f(k);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < n; k += workers) f(k);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

RunResult run_one_point(const ExperimentConfig& cfg) {
    RunResult res;
    res.table = base_table(cfg);
    const KernelSet ks = kernels(cfg, cfg.grid, cfg.truncation.order);
    for (const auto& o : cfg.observables) {
        const auto traj = one_point_operator(o.matrix, cfg.truncation, ks, cfg.model.rho_b(), o.name);
        for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
            if (wanted(o, cfg.grid[k])) add_matrix(res.table, cfg.grid[k], o.name, traj.values[k]);
        }
    }
    return res;
}

RunResult run_image_exact(const ExperimentConfig& cfg) {
    RunResult res;
    res.table = base_table(cfg);
    const Dims& d = cfg.model.dims();
    for (const auto& o : cfg.observables) {
        const auto fams = evolve_images_exact(cfg.model, o.matrix, cfg.grid);
        for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
            if (!wanted(o, cfg.grid[k])) continue;
            add_matrix(res.table, cfg.grid[k], o.name + "_S", contract_with_bath(fams[k], cfg.model.rho_b()));
            for (Index a = 0; a < d.bath; ++a) {
                for (Index b = 0; b < d.bath; ++b) {
                    const std::string name = o.name + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
                    add_matrix(res.table, cfg.grid[k], name, fams[k](a, b));
                }
            }
        }
    }
    return res;
}

RunResult run_n_point(const ExperimentConfig& cfg) {
    RunResult res;
    res.table = base_table(cfg);
    const KernelSet ks = kernels(cfg, cfg.grid, cfg.truncation.order);
    std::vector<StarFactor> factors;
    std::vector<std::pair<Matrix, double>> exact_ops;
    std::string label;
    for (const auto& o : cfg.observables) {
        const double t = o.times.front();
        const auto traj = one_point_operator(o.matrix, cfg.truncation, ks, cfg.model.rho_b(), o.name);
        factors.push_back({traj.at(t), t, true});
        exact_ops.emplace_back(o.matrix, t);
        label += (label.empty() ? "" : "*") + o.name;
    }
    const double t_last = factors.back().time;
    add_matrix(res.table, t_last, label, star_product(factors, cfg.truncation, ks, cfg.model.rho_b()));
    add_matrix(res.table, t_last, label + "_exact", npoint_reduced_exact(cfg.model, exact_ops));
    if (factors.size() == 2) {
        add_matrix(res.table, t_last, label + "_irreducible",
                   irreducible_2pt(ks, cfg.model.rho_b(), cfg.observables[0].matrix, cfg.observables[1].matrix,
                                   factors[0].time, factors[1].time, cfg.truncation));
    }
    return res;
}

struct MarkovPieces {
    InteractionDecomposition dec;
    std::vector<BohrDecomposition> bd;
    SpectralCoefficients sc;
};

MarkovPieces markov_pieces(const ExperimentConfig& cfg) {
    MarkovPieces p;
    p.dec = decompose_interaction(cfg.model.hi(), cfg.model.dims());
    for (const auto& t : p.dec.terms) p.bd.push_back(bohr_decomposition(t.r, cfg.model.h0(), cfg.model.hbar()));
    SpectralOptions so;
    so.horizon = cfg.markov.horizon;
    so.eta = cfg.markov.eta;
    so.extrapolate = cfg.markov.extrapolate;
    p.sc = spectral_coefficients(cfg.model, p.dec, bohr_frequencies(p.bd), so);
    return p;
}

RunResult run_lindblad(const ExperimentConfig& cfg) {
    RunResult res;
    res.table = base_table(cfg);
    const MarkovPieces p = markov_pieces(cfg);
    LindbladOptions lo;
    lo.one_sided_free_term = cfg.markov.one_sided_free_term;
    res.table.meta["spectral_converged"] = p.sc.converged;
    res.table.meta["spectral_defect"] = p.sc.defect;
    for (const auto& o : cfg.observables) {
        const auto traj = evolve_lindblad(o.matrix, p.bd, p.sc, cfg.model.h0(), cfg.model.constants(), cfg.grid, {}, lo);
        for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
            if (wanted(o, cfg.grid[k])) add_matrix(res.table, cfg.grid[k], o.name, traj[k]);
        }
    }
    if (!p.sc.converged) {
        res.summary = "warning: spectral coefficients not converged on the horizon (defect " +
                      std::to_string(p.sc.defect) + ")";
    }
    return res;
}

RunResult run_markov_report(const ExperimentConfig& cfg) {
    RunResult res;
    res.table.columns = {"quantity", "i", "j", "omega", "re", "im"};
    res.table.meta = base_table(cfg).meta;
    const MarkovPieces p = markov_pieces(cfg);
    const MarkovReport rep = check_markov_assumptions(cfg.model, p.dec, cfg.markov.horizon, cfg.markov.decay_threshold);
    auto scalar = [&](const std::string& q, double v) { res.table.add({q, std::int64_t{-1}, std::int64_t{-1}, 0.0, v, 0.0}); };
    for (std::size_t i = 0; i < rep.first_moment.size(); ++i) {
        const auto ii = static_cast<std::int64_t>(i);
        res.table.add({std::string("first_moment"), ii, std::int64_t{-1}, 0.0, rep.first_moment[i], 0.0});
        res.table.add({std::string("first_moment_rate"), ii, std::int64_t{-1}, 0.0, rep.first_moment_rate[i], 0.0});
    }
    scalar("stationarity_defect", rep.stationarity_defect);
    scalar("decay_time", rep.decay_time);
    scalar("first_moment_ok", rep.first_moment_ok ? 1.0 : 0.0);
    scalar("stationary_ok", rep.stationary_ok ? 1.0 : 0.0);
    scalar("decays", rep.decays ? 1.0 : 0.0);
    scalar("coupling_commutes_with_h0", rep.coupling_commutes_with_h0 ? 1.0 : 0.0);
    for (const auto& [tau, v] : rep.decay_profile) res.table.add({std::string("decay_profile"), std::int64_t{-1}, std::int64_t{-1}, tau, v, 0.0});
    for (std::size_t i = 0; i < p.sc.terms; ++i) {
        for (std::size_t j = 0; j < p.sc.terms; ++j) {
            for (std::size_t w = 0; w < p.sc.frequencies.size(); ++w) {
                const cplx v = p.sc.at(i, j, w);
                res.table.add({std::string("J"), static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                               p.sc.frequencies[w], v.real(), v.imag()});
            }
        }
    }
    scalar("spectral_defect", p.sc.defect);
    scalar("spectral_converged", p.sc.converged ? 1.0 : 0.0);
    return res;
}

std::string lambda_column(double l) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "err_lambda_%g", l);
    return buf;
}

RunResult run_validate(const ExperimentConfig& cfg) {
    RunResult res;
    const auto& lams = cfg.validate.lambdas;
    res.table.columns = {"check", "observable", "order", "slope", "threshold", "pass"};
    for (double l : lams) res.table.columns.push_back(lambda_column(l));
    res.table.meta = base_table(cfg).meta;
    res.table.meta["time"] = cfg.validate.time;

    const int n_max = std::max(cfg.truncation.order, 1);
    const double t = cfg.validate.time;
    const double t_half = 0.5 * t;
    const TimeGrid grid = TimeGrid::covering({t, t_half});
    const KernelSet ks = kernels(cfg, grid, n_max);
    const DensityMatrix& rho_b = cfg.model.rho_b();
    const std::size_t kt = ks.index_of(t);

    struct Check {
        std::string name;
        std::string observable;
        int order;
        std::vector<double> err;
    };
    std::vector<Check> checks;
    for (const auto& o : cfg.observables) {
        for (int n = 1; n <= n_max; ++n) checks.push_back({"one_point", o.name, n, std::vector<double>(lams.size())});
        checks.push_back({"lifted_image", o.name, n_max, std::vector<double>(lams.size())});
        checks.push_back({"two_point", o.name, 1, std::vector<double>(lams.size())});
    }

    parallel_for(lams.size(), [&](std::size_t li) {
        const double l = lams[li];
        const ExactEvolver ex(cfg.model.with_lambda(l));
        std::size_t c = 0;
        for (const auto& o : cfg.observables) {
            const Matrix exact = ex.one_point(o.matrix, t);
            for (int n = 1; n <= n_max; ++n) {
                const auto traj = one_point_operator(o.matrix, {n, l}, ks, rho_b);
                checks[c++].err[li] = (traj.values[kt] - exact).norm();
            }
            const SeriesTruncation top{n_max, l};
            const auto traj = one_point_operator(o.matrix, top, ks, rho_b);
            const ImageFamily img = image_from_one_point(traj.values[kt], top, ks, rho_b, kt);
            const ImageFamily exact_img = to_image_family(ex.evolve(o.matrix, t), cfg.model.dims());
            checks[c++].err[li] = (img - exact_img).norm();

            const SeriesTruncation first{1, l};
            const auto t1 = one_point_operator(o.matrix, first, ks, rho_b);
            const Matrix star = star_product({{t1.at(t_half), t_half, true}, {t1.at(t), t, true}}, first, ks, rho_b);
            checks[c++].err[li] = (star - ex.npoint({{o.matrix, t_half}, {o.matrix, t}})).norm();
        }
    });

    bool all_pass = true;
    for (const auto& ch : checks) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(lams.size());
        for (std::size_t k = 0; k < lams.size(); ++k) {
            const double x = std::log(lams[k]), y = std::log(std::max(ch.err[k], 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double threshold = ch.order + cfg.validate.slope_margin;
        // Errors at round-off level everywhere carry no slope information.
        const bool negligible = *std::max_element(ch.err.begin(), ch.err.end()) < 1e-12;
        const bool pass = negligible || slope >= threshold;
        all_pass = all_pass && pass;
        std::vector<Cell> row{ch.name, ch.observable, static_cast<std::int64_t>(ch.order), slope, threshold, pass};
        for (double e : ch.err) row.emplace_back(e);
        res.table.add(std::move(row));
    }
    res.status = all_pass ? exit_code::ok : exit_code::defect;
    res.summary = all_pass ? "validation passed" : "validation defect: a lambda-scaling slope is below threshold";
    return res;
}

} // namespace

unsigned worker_threads() {
    if (const char* env = std::getenv("HEISEN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return 1;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.run) {
    case RunMode::one_point: return run_one_point(cfg);
    case RunMode::n_point: return run_n_point(cfg);
    case RunMode::image_exact: return run_image_exact(cfg);
    case RunMode::lindblad: return run_lindblad(cfg);
    case RunMode::markov_report: return run_markov_report(cfg);
    case RunMode::validate: return run_validate(cfg);
    }
    throw std::logic_error("run_experiment: unhandled mode");
}

void emit(const RunResult& result, const OutputSpec& out) {
    const std::string text = out.format == OutputFormat::json ? to_json(result.table) : to_csv(result.table);
    if (out.path.empty()) {
        std::cout << text;
    } else {
        write_atomic(out.path, text);
    }
}

} // namespace heisen::cli
