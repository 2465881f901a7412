// dyson.hpp — Interaction picture for image operators and the Dyson kernels K̃⁽ⁿ⁾, K⁽ⁿ⁾

#pragma once

#include <vector>

#include "heisen/images.hpp"

namespace heisen {

// Free frame of H0 and the bath energies E_α.
//   to_interaction:   X_{αβ} ↦ U0 X_{αβ} U0† e^{-i(E_α-E_β)t/ħ}
//   from_interaction: the inverse map
class InteractionFrame {
public:
    explicit InteractionFrame(const ModelSpec& m);

    // U0(t) = exp(-i H0 t / ħ)
    Matrix u0(double t) const;
    // U0† o U0
    Matrix free_evolve(const Matrix& o, double t) const;

    ImageFamily to_interaction(const ImageFamily& f, double t) const;
    ImageFamily from_interaction(const ImageFamily& f, double t) const;

    const Dims& dims() const noexcept { return dims_; }
    const Matrix& h0() const noexcept { return h0_; }
    double hbar() const noexcept { return hbar_; }
    const Eigen::VectorXd& bath_energies() const noexcept { return energies_; }
    // Schrödinger images H_{Iαβ}
    const ImageFamily& hi_images() const noexcept { return hi_images_; }

private:
    ImageFamily rotate(const ImageFamily& f, double t, int direction) const;

    Dims dims_;
    Matrix h0_;
    HermitianEigen h0_eig_;
    Eigen::VectorXd energies_;
    double hbar_;
    ImageFamily hi_images_;
};

// H̃_{Iαβ}(t) = U0 H_{Iαβ} U0† e^{-i(E_α-E_β)t/ħ}
ImageFamily interaction_hamiltonian_images(const ModelSpec& m, double t);
ImageFamily interaction_hamiltonian_images(const InteractionFrame& frame, double t);

struct KernelOptions {
    int hard_cap{8};
    ode::Options ode{};
};

inline constexpr int kDefaultKernelOrder = 4;

// Per-order, per-grid-point kernel families.
//   tilde(n, k): K̃⁽ⁿ⁾_{αβ}(t_k)
//   k(n, k):     K⁽ⁿ⁾_{αβ}(t_k) = e^{i(E_α-E_β)t/ħ} U0† K̃⁽ⁿ⁾ U0
//   kdot(n, k):  U0† d/dt[U0 K⁽ⁿ⁾ U0†] U0, the frame derivative used by the
//                local-in-time one-point equation
class KernelSet {
public:
    KernelSet(InteractionFrame frame, TimeGrid grid, int max_order);

    int max_order() const noexcept { return max_order_; }
    const TimeGrid& grid() const noexcept { return grid_; }
    const InteractionFrame& frame() const noexcept { return frame_; }
    const Dims& dims() const noexcept { return frame_.dims(); }
    double hbar() const noexcept { return frame_.hbar(); }

    const ImageFamily& tilde(int n, std::size_t k) const;
    const ImageFamily& k(int n, std::size_t k) const;
    const ImageFamily& kdot(int n, std::size_t k) const;

    std::size_t index_of(double t) const { return grid_.index_of(t); }
    // OrderExceedsKernels unless 0 <= n <= max_order()
    void require_order(int n) const;

private:
    friend KernelSet compute_kernels(const ModelSpec&, int, const TimeGrid&, const KernelOptions&);

    std::size_t slot(int n, std::size_t k) const;

    InteractionFrame frame_;
    TimeGrid grid_;
    int max_order_;
    std::vector<ImageFamily> tilde_;
    std::vector<ImageFamily> k_;
    std::vector<ImageFamily> kdot_;
};

// Integrates d/dt K̃⁽ⁿ⁾_{αβ} = Σ_γ K̃⁽ⁿ⁻¹⁾_{αγ}(t) H̃_{Iγβ}(t), K̃⁽ⁿ⁾(0) = 0 for n ≥ 1,
// K̃⁽⁰⁾ = δ_{αβ}. The interaction Hamiltonian enters at the latest time on the
// right, the ordering for which Ũ = Σ(-iλ/ħ)ⁿ K̃⁽ⁿ⁾ satisfies Õ = Ũ† O Ũ.
KernelSet compute_kernels(const ModelSpec& m, int n_max, const TimeGrid& grid,
                          const KernelOptions& opts = {});

// Ũ_{Iαβ}(t) = Σ_{n≤order} (-iλ/ħ)ⁿ K̃⁽ⁿ⁾_{αβ}(t)
ImageFamily dyson_propagator(const KernelSet& ks, double lambda, int order, std::size_t k);

// Σ_γ Ũ†_{γα} Ũ_{γβ} − δ_{αβ} 1
ImageFamily unitarity_defect(const ImageFamily& u);

// Interaction-picture image to first order: O δ_{αβ} + (iλ/ħ)[K̃⁽¹⁾_{αβ}(t), O]
ImageFamily image_first_order(const Matrix& o, const KernelSet& ks, double lambda, std::size_t k);

} // namespace heisen
