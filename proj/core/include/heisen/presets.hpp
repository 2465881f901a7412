// presets.hpp — Ready-made models: the two-spin example, an engineered dephasing bath, random specs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heisen/model.hpp"

namespace heisen::presets {

// Spin-½ operators S = ħσ/2 in the basis (↑, ↓).
Matrix spin_x(double hbar = 1.0);
Matrix spin_y(double hbar = 1.0);
Matrix spin_z(double hbar = 1.0);

struct TwoQubit {
    ModelSpec model;
    Matrix s1x;
    Matrix s1y;
    Matrix s1z;
};

// H0 = H_B = 0, H_I = S̄₁·S̄₂, ρ_B = diag(1-c, c), ρ0 = 𝟙/2.
TwoQubit two_qubit(double c, double lambda = 0.0, double hbar = 1.0);

struct DephasingBathParams {
    double delta{1.0};         // H0 = (Δ/2)σ_z
    double center{4.0};        // mean bath excitation energy
    double spread{1.0};        // width of the excitation band
    double coupling{1.0};      // Σ_k g_k²
};

// d_S = 2, d_B = 8. H_I = σ_z ⊗ S with S = Σ_k g_k(|0⟩⟨k| + |k⟩⟨0|), ρ_B = |0⟩⟨0|.
// Excitation energies and weights are 7-point Gauss–Hermite nodes, so the bath
// correlation function follows a Gaussian envelope e^{-(spread·τ)²/2} until the
// finite spectrum recurs near spread·τ ≈ 3.5. kDephasingQuietWindow (for spread 1)
// ends inside the decayed stretch and is the natural Markov horizon.
inline constexpr double kDephasingQuietWindow = 3.0;

ModelSpec dephasing_bath(double lambda = 0.0, double hbar = 1.0, const DephasingBathParams& p = {});

// Portable generator: identical streams on every platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();   // [0, 1)
    double normal();    // Box–Muller
    cplx complex_normal();

private:
    std::uint64_t state_;
    std::uint64_t next();
};

// Hermitian matrix with complex Gaussian entries, scaled to unit spectral radius.
Matrix random_hermitian(Rng& rng, Index n);
// A A† / tr(A A†) for complex Gaussian A
Matrix random_density(Rng& rng, Index n);

ModelSpec random_model(std::uint64_t seed, Index d_s, Index d_b, double lambda = 0.0,
                       double hbar = 1.0);

struct PresetInfo {
    std::string name;
    std::string description;
};

std::vector<PresetInfo> preset_list();

} // namespace heisen::presets
