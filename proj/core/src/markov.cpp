// markov.cpp — Markov-limit ingredients and the adjoint Lindblad generator

#include "heisen/markov.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace heisen {
namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kQuadDepth = 18;
constexpr double kQuadTol = 1e-12;

// Orthonormal (Hilbert–Schmidt) hermitian basis: |j⟩⟨j|, (|j⟩⟨k|+|k⟩⟨j|)/√2, i(|k⟩⟨j|−|j⟩⟨k|)/√2
std::vector<Matrix> hermitian_basis(Index n) {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(n * n));
    const double s = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < n; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(j, j) = 1.0;
        out.push_back(std::move(e));
    }
    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            Matrix sym = Matrix::Zero(n, n);
            sym(j, k) = s;
            sym(k, j) = s;
            Matrix asym = Matrix::Zero(n, n);
            asym(j, k) = -kI * s;
            asym(k, j) = kI * s;
            out.push_back(std::move(sym));
            out.push_back(std::move(asym));
        }
    }
    return out;
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b) {
    if (!(b > a)) return {};
    const double re = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(x).real(); }, a, b, kQuadDepth, kQuadTol);
    const double im = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(x).imag(); }, a, b, kQuadDepth, kQuadTol);
    return {re, im};
}

double op_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

// S̃(t)_{αβ} = S_{αβ} e^{-i(E_α-E_β)t/ħ}
Matrix bath_interaction(const Matrix& s, const Eigen::VectorXd& e, double t, double hbar) {
    Matrix out(s.rows(), s.cols());
    for (Index a = 0; a < s.rows(); ++a) {
        for (Index b = 0; b < s.cols(); ++b) out(a, b) = s(a, b) * std::polar(1.0, -(e(a) - e(b)) * t / hbar);
    }
    return out;
}

cplx bath_trace(const Matrix& x, const Matrix& rho) { return (x * rho).trace(); }

void require_terms(const ModelSpec& m, const InteractionDecomposition& dec) {
    if (!(dec.dims == m.dims())) throw DimensionError("interaction decomposition does not match the model");
}

} // namespace

Matrix InteractionDecomposition::reconstruct() const {
    Matrix out = Matrix::Zero(dims.full(), dims.full());
    for (const auto& t : terms) out += tensor_product(t.r, t.s);
    return out;
}

InteractionDecomposition decompose_interaction(const Matrix& hi, const Dims& d) {
    require_space(hi, {Space::Full, d}, "decompose_interaction");
    require_hermitian(hi, "decompose_interaction");
    const auto gs = hermitian_basis(d.sys);
    const auto fs = hermitian_basis(d.bath);
    Eigen::MatrixXd c(static_cast<Index>(gs.size()), static_cast<Index>(fs.size()));
    for (std::size_t a = 0; a < gs.size(); ++a) {
        for (std::size_t b = 0; b < fs.size(); ++b) {
            c(static_cast<Index>(a), static_cast<Index>(b)) = (tensor_product(gs[a], fs[b]) * hi).trace().real();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    InteractionDecomposition out{d, {}};
    if (sv.size() == 0 || sv(0) == 0.0) return out;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) < 1e-12 * sv(0)) break;
        Matrix r = Matrix::Zero(d.sys, d.sys);
        Matrix s = Matrix::Zero(d.bath, d.bath);
        for (std::size_t a = 0; a < gs.size(); ++a) r += svd.matrixU()(static_cast<Index>(a), i) * gs[a];
        for (std::size_t b = 0; b < fs.size(); ++b) s += (sv(i) * svd.matrixV()(static_cast<Index>(b), i)) * fs[b];
        out.terms.push_back({std::move(r), std::move(s)});
    }
    return out;
}

Matrix BohrDecomposition::evaluate(double t) const {
    if (coefficients.empty()) throw std::invalid_argument("BohrDecomposition: empty");
    Matrix out = Matrix::Zero(coefficients.front().rows(), coefficients.front().cols());
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        out += std::polar(1.0, frequencies[k] * t) * coefficients[k];
    }
    return out;
}

BohrDecomposition bohr_decomposition(const Matrix& r, const Matrix& h0, double hbar) {
    require_square(r, "bohr_decomposition(r)");
    require_space(h0, {Space::System, Dims{r.rows(), 1}}, "bohr_decomposition(h0)");
    const HermitianEigen eig = hermitian_eigen(h0);
    const Eigen::VectorXd& e = eig.values;
    const Matrix& v = eig.vectors;
    const Matrix rr = v.adjoint() * r * v;
    const Index n = r.rows();

    // U0|a⟩⟨a|R|b⟩⟨b|U0† = e^{i(ε_b-ε_a)t/ħ}|a⟩⟨a|R|b⟩⟨b|
    struct Entry {
        double omega;
        Index a;
        Index b;
    };
    std::vector<Entry> entries;
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) entries.push_back({(e(b) - e(a)) / hbar, a, b});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.omega < y.omega; });
    const double tol = 1e-9 * e.cwiseAbs().maxCoeff() / hbar;

    BohrDecomposition out;
    std::vector<Matrix> blocks;
    double anchor = 0.0;
    for (const auto& en : entries) {
        if (blocks.empty() || std::abs(en.omega - anchor) > tol) {
            anchor = en.omega;
            out.frequencies.push_back(en.omega);
            blocks.push_back(Matrix::Zero(n, n));
        }
        blocks.back()(en.a, en.b) += rr(en.a, en.b);
    }
    // Report each merged line at the mean of its members for symmetry under ω → −ω.
    std::size_t line = 0;
    std::vector<double> sum(out.frequencies.size(), 0.0);
    std::vector<int> count(out.frequencies.size(), 0);
    anchor = entries.front().omega;
    for (const auto& en : entries) {
        if (std::abs(en.omega - anchor) > tol) {
            ++line;
            anchor = en.omega;
        }
        sum[line] += en.omega;
        ++count[line];
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        out.frequencies[k] = sum[k] / count[k];
        out.coefficients.push_back(v * blocks[k] * v.adjoint());
    }
    return out;
}

cplx bath_correlation(const ModelSpec& m, const InteractionDecomposition& dec, std::size_t i,
                      std::size_t j, double tau) {
    require_terms(m, dec);
    const Matrix& si = dec.terms.at(i).s;
    const Matrix sj = bath_interaction(dec.terms.at(j).s, m.bath_energies(), -tau, m.hbar());
    return bath_trace(si * sj, m.rho_b().matrix());
}

MarkovReport check_markov_assumptions(const ModelSpec& m, const InteractionDecomposition& dec,
                                      double horizon, double decay_threshold,
                                      const MarkovCheckOptions& opts) {
    require_terms(m, dec);
    if (!(horizon > 0.0)) throw std::invalid_argument("check_markov_assumptions: horizon must be positive");
    const std::size_t nt = dec.terms.size();
    const Eigen::VectorXd& e = m.bath_energies();
    const Matrix& rho = m.rho_b().matrix();
    const double hbar = m.hbar();
    const std::size_t samples = std::max<std::size_t>(opts.samples, 2);

    MarkovReport rep;
    rep.horizon = horizon;
    rep.decay_threshold = decay_threshold;
    for (std::size_t k = 0; k < samples; ++k) {
        rep.sample_times.push_back(horizon * static_cast<double>(k) / static_cast<double>(samples - 1));
    }

    rep.first_moment.assign(nt, 0.0);
    rep.first_moment_rate.assign(nt, 0.0);
    const double h = 1e-4 * std::max(1.0, horizon);
    for (std::size_t i = 0; i < nt; ++i) {
        const Matrix& s = dec.terms[i].s;
        auto moment = [&](double t) { return bath_trace(bath_interaction(s, e, t, hbar), rho); };
        for (double t : rep.sample_times) {
            rep.first_moment[i] = std::max(rep.first_moment[i], std::abs(moment(t)));
            const double rate = std::abs(moment(t + h) - moment(t - h)) / (2.0 * h);
            rep.first_moment_rate[i] = std::max(rep.first_moment_rate[i], rate);
        }
    }

    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            const Matrix& si = dec.terms[i].s;
            const Matrix& sj = dec.terms[j].s;
            for (double tau : rep.sample_times) {
                const cplx ref = bath_trace(si * bath_interaction(sj, e, -tau, hbar), rho);
                for (double t : rep.sample_times) {
                    const cplx val = bath_trace(bath_interaction(si, e, t, hbar) *
                                                    bath_interaction(sj, e, t - tau, hbar),
                                                rho);
                    rep.stationarity_defect = std::max(rep.stationarity_defect, std::abs(val - ref));
                }
            }
        }
    }

    for (double tau : rep.sample_times) {
        double worst = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            for (std::size_t j = 0; j < nt; ++j) worst = std::max(worst, std::abs(bath_correlation(m, dec, i, j, tau)));
        }
        rep.decay_profile.emplace_back(tau, worst);
    }
    // Earliest sampled τ after which the profile stays below the threshold.
    std::size_t last_above = rep.decay_profile.size();
    for (std::size_t k = rep.decay_profile.size(); k-- > 0;) {
        if (rep.decay_profile[k].second >= decay_threshold) {
            last_above = k;
            break;
        }
    }
    if (last_above == rep.decay_profile.size()) {
        rep.decay_time = 0.0;
    } else if (last_above + 1 < rep.decay_profile.size()) {
        rep.decay_time = rep.decay_profile[last_above + 1].first;
    }

    rep.coupling_commutes_with_h0 = true;
    for (const auto& term : dec.terms) {
        const Matrix c = commutator(m.h0(), term.r);
        if (c.norm() > opts.tolerance * std::max(1.0, m.h0().norm())) rep.coupling_commutes_with_h0 = false;
    }

    const double scale = std::max(1.0, rho.norm());
    rep.first_moment_ok = std::all_of(rep.first_moment.begin(), rep.first_moment.end(),
                                      [&](double v) { return v <= opts.tolerance * scale; });
    rep.stationary_ok = rep.stationarity_defect <= opts.tolerance * scale;
    rep.decays = std::isfinite(rep.decay_time) && rep.decay_time < horizon;
    return rep;
}

cplx SpectralCoefficients::operator()(std::size_t i, std::size_t j, double omega) const {
    const double scale = std::max(1.0, std::abs(omega));
    for (std::size_t w = 0; w < frequencies.size(); ++w) {
        if (std::abs(frequencies[w] - omega) <= 1e-9 * scale) return at(i, j, w);
    }
    throw std::invalid_argument("SpectralCoefficients: frequency not tabulated");
}

cplx& SpectralCoefficients::at(std::size_t i, std::size_t j, std::size_t w) {
    if (i >= terms || j >= terms || w >= frequencies.size()) throw IndexOutOfRange("SpectralCoefficients: index");
    return values[(i * terms + j) * frequencies.size() + w];
}

cplx SpectralCoefficients::at(std::size_t i, std::size_t j, std::size_t w) const {
    if (i >= terms || j >= terms || w >= frequencies.size()) throw IndexOutOfRange("SpectralCoefficients: index");
    return values[(i * terms + j) * frequencies.size() + w];
}

void SpectralCoefficients::require_converged() const {
    if (!converged) {
        throw NonConvergent("spectral coefficients changed by " + std::to_string(defect) +
                            " when the horizon was doubled (tolerance " + std::to_string(tolerance) + ")");
    }
}

SpectralCoefficients spectral_coefficients(const ModelSpec& m, const InteractionDecomposition& dec,
                                           std::vector<double> freqs, const SpectralOptions& opts) {
    require_terms(m, dec);
    if (!(opts.horizon > 0.0)) throw std::invalid_argument("spectral_coefficients: horizon must be positive");
    if (opts.eta < 0.0) throw std::invalid_argument("spectral_coefficients: eta must be >= 0");
    if (opts.extrapolate && !(opts.eta > 0.0)) {
        throw std::invalid_argument("spectral_coefficients: extrapolation needs eta > 0");
    }
    const std::size_t nt = dec.terms.size();
    SpectralCoefficients sc;
    sc.terms = nt;
    sc.frequencies = std::move(freqs);
    sc.horizon = opts.horizon;
    sc.tolerance = opts.tolerance;
    sc.options = opts;
    sc.values.assign(nt * nt * sc.frequencies.size(), cplx{});

    auto integral = [&](std::size_t i, std::size_t j, double omega, double eta, double t_max) {
        return integrate_complex(
            [&](double tau) {
                return std::polar(std::exp(-eta * tau), -omega * tau) * bath_correlation(m, dec, i, j, tau);
            },
            0.0, t_max);
    };
    auto value = [&](std::size_t i, std::size_t j, double omega, double t_max) {
        if (!opts.extrapolate) return integral(i, j, omega, opts.eta, t_max);
        return 2.0 * integral(i, j, omega, 0.5 * opts.eta, t_max) - integral(i, j, omega, opts.eta, t_max);
    };

    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            for (std::size_t w = 0; w < sc.frequencies.size(); ++w) {
                const cplx jt = value(i, j, sc.frequencies[w], opts.horizon);
                const cplx j2t = value(i, j, sc.frequencies[w], 2.0 * opts.horizon);
                sc.at(i, j, w) = jt;
                sc.defect = std::max(sc.defect, std::abs(j2t - jt));
            }
        }
    }
    sc.converged = sc.defect <= opts.tolerance;
    return sc;
}

std::vector<double> bohr_frequencies(const std::vector<BohrDecomposition>& bd) {
    std::vector<double> all;
    for (const auto& b : bd) all.insert(all.end(), b.frequencies.begin(), b.frequencies.end());
    std::sort(all.begin(), all.end());
    double top = 0.0;
    for (double w : all) top = std::max(top, std::abs(w));
    const double tol = 1e-9 * std::max(top, 1e-300);
    std::vector<double> out;
    for (double w : all) {
        if (out.empty() || std::abs(w - out.back()) > tol) out.push_back(w);
    }
    return out;
}

Matrix lindblad_rhs(const Matrix& o_s, const std::vector<BohrDecomposition>& bd,
                    const SpectralCoefficients& sc, const Matrix& h0, const Constants& c,
                    const LindbladOptions& opts) {
    require_square(o_s, "lindblad_rhs(o_s)");
    require_space(h0, {Space::System, Dims{o_s.rows(), 1}}, "lindblad_rhs(h0)");
    if (bd.size() != sc.terms) throw DimensionError("lindblad_rhs: Bohr and spectral term counts differ");
    const Index n = o_s.rows();

    // Σ_{ω'} A^j_{ω'} = R̃ʲ(0) = Rʲ, so the double sum collapses on ω'.
    std::vector<Matrix> r;
    for (const auto& b : bd) {
        if (b.coefficients.empty() || b.coefficients.front().rows() != n) {
            throw DimensionError("lindblad_rhs: Bohr coefficient dimension mismatch");
        }
        Matrix sum = Matrix::Zero(n, n);
        for (const auto& a : b.coefficients) sum += a;
        r.push_back(std::move(sum));
    }

    auto bracket = [&](const Matrix& o) {
        Matrix acc = Matrix::Zero(n, n);
        for (std::size_t i = 0; i < bd.size(); ++i) {
            for (std::size_t w = 0; w < bd[i].frequencies.size(); ++w) {
                const Matrix ad = bd[i].coefficients[w].adjoint();
                for (std::size_t j = 0; j < bd.size(); ++j) {
                    const cplx jij = sc(i, j, bd[i].frequencies[w]);
                    if (jij == cplx{}) continue;
                    acc += jij * (ad * r[j] * o - ad * o * r[j]);
                }
            }
        }
        return acc;
    };

    const double eps = c.lambda / c.hbar;
    const Matrix diss = bracket(o_s);
    const Matrix diss_dag = bracket(o_s.adjoint()).adjoint();
    const Matrix free = opts.one_sided_free_term ? Matrix((kI / c.hbar) * h0 * o_s)
                                          : Matrix((kI / c.hbar) * commutator(h0, o_s));
    return free - eps * eps * (diss + diss_dag);
}

std::vector<Matrix> evolve_lindblad(const Matrix& o0, const std::vector<BohrDecomposition>& bd,
                                    const SpectralCoefficients& sc, const Matrix& h0,
                                    const Constants& c, const TimeGrid& grid,
                                    const ode::Options& ode_opts, const LindbladOptions& opts) {
    require_square(o0, "evolve_lindblad");
    std::vector<Matrix> buf{o0};
    std::vector<Matrix> out;
    out.reserve(grid.size());
    ode::State x0;
    ode::pack(buf, x0);
    auto rhs = [&](const ode::State& x, ode::State& dxdt, double) {
        ode::unpack(x, buf);
        const Matrix d = lindblad_rhs(buf[0], bd, sc, h0, c, opts);
        ode::pack(std::span<const Matrix>(&d, 1), dxdt);
    };
    ode::integrate(rhs, std::move(x0), grid,
                   [&](std::size_t, const ode::State& x) {
                       std::vector<Matrix> s{Matrix::Zero(o0.rows(), o0.cols())};
                       ode::unpack(x, s);
                       out.push_back(std::move(s[0]));
                   },
                   ode_opts);
    return out;
}

double markov_rhs_defect_bound(const ModelSpec& m, const InteractionDecomposition& dec,
                               const MarkovReport& report, const SpectralCoefficients& sc,
                               double o_norm, double t) {
    require_terms(m, dec);
    if (!report.coupling_commutes_with_h0 || !report.stationary_ok) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t nt = dec.terms.size();
    const double eps = m.lambda() / m.hbar();
    if (sc.terms != nt) throw DimensionError("markov_rhs_defect_bound: spectral term count mismatch");

    std::vector<double> rn(nt);
    for (std::size_t i = 0; i < nt; ++i) rn[i] = op_norm(dec.terms[i].r);

    double first = 0.0;
    for (std::size_t i = 0; i < nt; ++i) first += 2.0 * rn[i] * report.first_moment[i];

    // Coefficient error |G_ij(t) − conj J_ji| ≤ ∫_t^T |C_ji| + |J_ji − ∫_0^T C_ji|
    double second = 0.0;
    const double t_max = sc.horizon;
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            double tail = 0.0;
            if (t < t_max) {
                tail = gauss_kronrod<double, 61>::integrate(
                    [&](double tau) { return std::abs(bath_correlation(m, dec, j, i, tau)); }, t, t_max,
                    kQuadDepth, kQuadTol);
            } else if (t > t_max) {
                tail = gauss_kronrod<double, 61>::integrate(
                    [&](double tau) { return std::abs(bath_correlation(m, dec, j, i, tau)); }, t_max, t,
                    kQuadDepth, kQuadTol);
            }
            double regulator = 0.0;
            if (sc.options.eta > 0.0) {
                const cplx bare = integrate_complex(
                    [&](double tau) { return bath_correlation(m, dec, j, i, tau); }, 0.0, t_max);
                regulator = std::abs(sc(j, i, 0.0) - bare);
            }
            second += 4.0 * rn[i] * rn[j] * (tail + regulator);
        }
    }
    return o_norm * (eps * first + eps * eps * (first * first * t + second));
}

} // namespace heisen
