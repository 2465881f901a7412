// dyson.cpp — Interaction frame and kernel recurrence

#include "heisen/dyson.hpp"

#include <cmath>
#include <string>

namespace heisen {

InteractionFrame::InteractionFrame(const ModelSpec& m)
    : dims_(m.dims()),
      h0_(m.h0()),
      h0_eig_(hermitian_eigen(m.h0())),
      energies_(m.bath_energies()),
      hbar_(m.hbar()),
      hi_images_(to_image_family(m.hi(), m.dims())) {}

Matrix InteractionFrame::u0(double t) const { return unitary_propagator(h0_eig_, t, hbar_); }

Matrix InteractionFrame::free_evolve(const Matrix& o, double t) const {
    require_space(o, {Space::System, dims_}, "free_evolve");
    const Matrix u = u0(t);
    return u.adjoint() * o * u;
}

ImageFamily InteractionFrame::rotate(const ImageFamily& f, double t, int direction) const {
    if (!(f.dims() == dims_)) throw DimensionError("InteractionFrame: family dimension mismatch");
    // direction +1: to interaction picture, -1: back to the Heisenberg picture.
    const Matrix u = u0(t);
    const Matrix left = direction > 0 ? u : Matrix(u.adjoint());
    const Matrix right = direction > 0 ? Matrix(u.adjoint()) : u;
    ImageFamily out(dims_, f.time());
    for (Index a = 0; a < dims_.bath; ++a) {
        for (Index b = 0; b < dims_.bath; ++b) {
            const double phase = -direction * (energies_(a) - energies_(b)) * t / hbar_;
            out(a, b) = std::polar(1.0, phase) * (left * f(a, b) * right);
        }
    }
    return out;
}

ImageFamily InteractionFrame::to_interaction(const ImageFamily& f, double t) const {
    return rotate(f, t, +1);
}

ImageFamily InteractionFrame::from_interaction(const ImageFamily& f, double t) const {
    return rotate(f, t, -1);
}

ImageFamily interaction_hamiltonian_images(const InteractionFrame& frame, double t) {
    ImageFamily h = frame.to_interaction(frame.hi_images(), t);
    h.set_time(t);
    return h;
}

ImageFamily interaction_hamiltonian_images(const ModelSpec& m, double t) {
    return interaction_hamiltonian_images(InteractionFrame(m), t);
}

KernelSet::KernelSet(InteractionFrame frame, TimeGrid grid, int max_order)
    : frame_(std::move(frame)), grid_(std::move(grid)), max_order_(max_order) {
    const std::size_t n = static_cast<std::size_t>(max_order_ + 1) * grid_.size();
    tilde_.assign(n, ImageFamily(frame_.dims()));
    k_.assign(n, ImageFamily(frame_.dims()));
    kdot_.assign(n, ImageFamily(frame_.dims()));
}

void KernelSet::require_order(int n) const {
    if (n < 0 || n > max_order_) {
        throw OrderExceedsKernels("kernel order " + std::to_string(n) + " requested, only " +
                                  std::to_string(max_order_) + " available");
    }
}

std::size_t KernelSet::slot(int n, std::size_t k) const {
    require_order(n);
    if (k >= grid_.size()) throw IndexOutOfRange("KernelSet: grid index out of range");
    return static_cast<std::size_t>(n) * grid_.size() + k;
}

const ImageFamily& KernelSet::tilde(int n, std::size_t k) const { return tilde_[slot(n, k)]; }
const ImageFamily& KernelSet::k(int n, std::size_t k) const { return k_[slot(n, k)]; }
const ImageFamily& KernelSet::kdot(int n, std::size_t k) const { return kdot_[slot(n, k)]; }

KernelSet compute_kernels(const ModelSpec& m, int n_max, const TimeGrid& grid,
                          const KernelOptions& opts) {
    if (n_max < 0) throw std::invalid_argument("compute_kernels: n_max must be >= 0");
    if (n_max > opts.hard_cap) {
        throw OrderExceedsKernels("compute_kernels: order " + std::to_string(n_max) +
                                  " exceeds the configured cap " + std::to_string(opts.hard_cap));
    }
    KernelSet ks(InteractionFrame(m), grid, n_max);
    const InteractionFrame& frame = ks.frame_;
    const Dims d = m.dims();
    const std::size_t per_order = static_cast<std::size_t>(d.bath * d.bath);

    const ImageFamily delta = ImageFamily::diagonal(identity(d.sys), d.bath);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ImageFamily t0 = delta;
        t0.set_time(grid[k]);
        ks.tilde_[ks.slot(0, k)] = t0;
        ks.k_[ks.slot(0, k)] = t0;
        ks.kdot_[ks.slot(0, k)] = ImageFamily::zero(d, grid[k]);
    }
    if (n_max == 0) return ks;

    // d/dt K̃⁽ⁿ⁾ = K̃⁽ⁿ⁻¹⁾ H̃(t)
    auto derivative = [&](const std::vector<ImageFamily>& kt, const ImageFamily& h,
                          std::vector<ImageFamily>& out) {
        for (int n = 1; n <= n_max; ++n) {
            const ImageFamily& prev = n == 1 ? delta : kt[static_cast<std::size_t>(n - 2)];
            out[static_cast<std::size_t>(n - 1)] = compose_images(prev, h);
        }
    };

    std::vector<ImageFamily> state(static_cast<std::size_t>(n_max), ImageFamily(d));
    std::vector<ImageFamily> deriv(static_cast<std::size_t>(n_max), ImageFamily(d));
    std::vector<Matrix> flat(per_order * static_cast<std::size_t>(n_max), Matrix::Zero(d.sys, d.sys));

    auto to_flat = [&](const std::vector<ImageFamily>& fams) {
        for (std::size_t n = 0; n < fams.size(); ++n) {
            for (std::size_t b = 0; b < per_order; ++b) flat[n * per_order + b] = fams[n].blocks()[b];
        }
    };
    auto from_flat = [&](std::vector<ImageFamily>& fams) {
        for (std::size_t n = 0; n < fams.size(); ++n) {
            for (std::size_t b = 0; b < per_order; ++b) fams[n].blocks()[b] = flat[n * per_order + b];
        }
    };

    auto rhs = [&](const ode::State& x, ode::State& dxdt, double t) {
        ode::unpack(x, flat);
        from_flat(state);
        derivative(state, interaction_hamiltonian_images(frame, t), deriv);
        to_flat(deriv);
        ode::pack(flat, dxdt);
    };

    ode::State x0;
    to_flat(state);
    ode::pack(flat, x0);

    auto observer = [&](std::size_t k, const ode::State& x) {
        const double t = grid[k];
        ode::unpack(x, flat);
        from_flat(state);
        const ImageFamily h = interaction_hamiltonian_images(frame, t);
        derivative(state, h, deriv);
        for (int n = 1; n <= n_max; ++n) {
            ImageFamily kt = state[static_cast<std::size_t>(n - 1)];
            kt.set_time(t);
            // U0†(d/dt)[U0 K U0†]U0 = from_interaction((i/ħ)(E_α−E_β) K̃ + dK̃/dt)
            ImageFamily frame_rate = deriv[static_cast<std::size_t>(n - 1)];
            for (Index a = 0; a < d.bath; ++a) {
                for (Index b = 0; b < d.bath; ++b) {
                    const double de = frame.bath_energies()(a) - frame.bath_energies()(b);
                    frame_rate(a, b) += (kI * de / frame.hbar()) * kt(a, b);
                }
            }
            ImageFamily kk = frame.from_interaction(kt, t);
            ImageFamily kd = frame.from_interaction(frame_rate, t);
            kk.set_time(t);
            kd.set_time(t);
            ks.tilde_[ks.slot(n, k)] = std::move(kt);
            ks.k_[ks.slot(n, k)] = std::move(kk);
            ks.kdot_[ks.slot(n, k)] = std::move(kd);
        }
    };

    ode::integrate(rhs, std::move(x0), grid, observer, opts.ode);
    return ks;
}

ImageFamily dyson_propagator(const KernelSet& ks, double lambda, int order, std::size_t k) {
    ks.require_order(order);
    const cplx c = -kI * lambda / ks.hbar();
    ImageFamily u = ks.tilde(0, k);
    cplx coeff{1.0, 0.0};
    for (int n = 1; n <= order; ++n) {
        coeff *= c;
        u += coeff * ks.tilde(n, k);
    }
    return u;
}

ImageFamily unitarity_defect(const ImageFamily& u) {
    ImageFamily out = compose_images(u.adjoint(), u);
    for (Index a = 0; a < u.dims().bath; ++a) out(a, a) -= identity(u.dims().sys);
    return out;
}

ImageFamily image_first_order(const Matrix& o, const KernelSet& ks, double lambda, std::size_t k) {
    ks.require_order(1);
    const Dims& d = ks.dims();
    require_space(o, {Space::System, d}, "image_first_order");
    ImageFamily out = ImageFamily::diagonal(o, d.bath, ks.grid()[k]);
    const ImageFamily& k1 = ks.tilde(1, k);
    const cplx c = kI * lambda / ks.hbar();
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) out(a, b) += c * commutator(k1(a, b), o);
    }
    return out;
}

} // namespace heisen
