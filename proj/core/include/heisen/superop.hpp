// superop.hpp — Super-operators P⁽ⁿ⁾, one-point operators, their inversion, and the star product
//
// With ε = λ/ħ and Ô(t) = U0†(t) O U0(t):
//
//   P⁽ⁿ⁾_{αβ} A = Σ_{r=0..n} i^{n-2r} K⁽ⁿ⁻ʳ⁾†_{γα} A K⁽ʳ⁾_{γβ}
//   P⁽ⁿ⁾_S A    = P⁽ⁿ⁾_{αβ} A ρ_B[β,α]
//   O_S(t)      = Σ_n εⁿ P⁽ⁿ⁾_S Ô(t)
//   Ô(t)        = Σ_k Σ_{n_i≥1} (-1)^k ε^{Σn_i} P⁽ⁿ¹⁾_S … P⁽ⁿᵏ⁾_S O_S(t)
//   O_{αβ}(t)   = Σ_n εⁿ P⁽ⁿ⁾_{αβ} Ô(t)
//
// All series are truncated by total order in ε, never per factor.

#pragma once

#include <string>
#include <vector>

#include "heisen/dyson.hpp"

namespace heisen {

struct SeriesTruncation {
    int order{2};
    double lambda{0.0};
};

struct OnePointTrajectory {
    std::string label;
    TimeGrid grid{std::vector<double>{0.0}};
    std::vector<Matrix> values;
    SeriesTruncation truncation{};

    const Matrix& at(double t) const { return values.at(grid.index_of(t)); }
};

// i^m for any integer m
cplx ipow(int m);

ImageFamily apply_P_ab(int n, const Matrix& a, const KernelSet& ks, std::size_t k);
Matrix apply_P_S(int n, const Matrix& a, const KernelSet& ks, const DensityMatrix& rho_b, std::size_t k);
// 𝒟_t P⁽ⁿ⁾_S: P⁽ⁿ⁾_S with one kernel at a time replaced by its frame derivative
Matrix apply_DtP_S(int n, const Matrix& a, const KernelSet& ks, const DensityMatrix& rho_b,
                   std::size_t k);

// Σ_n εⁿ P⁽ⁿ⁾_S U0†OU0 at every kernel grid point
OnePointTrajectory one_point_operator(const Matrix& o, const SeriesTruncation& trunc,
                                      const KernelSet& ks, const DensityMatrix& rho_b,
                                      std::string label = "O");

// Unscaled order-m pieces W_m of the inverted series, Ô = Σ_m ε^m W_m:
// W_0 = O_S, W_m = -Σ_{n=1..m} P⁽ⁿ⁾_S W_{m-n}.
std::vector<Matrix> inversion_terms(const Matrix& o_s, int order, const KernelSet& ks,
                                    const DensityMatrix& rho_b, std::size_t k);

// U0†OU0 recovered from a one-point value, truncated at trunc.order
Matrix invert_one_point(const Matrix& o_s, const SeriesTruncation& trunc, const KernelSet& ks,
                        const DensityMatrix& rho_b, std::size_t k);

// O_{αβ}(t) from a one-point value O_S(t)
ImageFamily image_from_one_point(const Matrix& o_s, const SeriesTruncation& trunc,
                                 const KernelSet& ks, const DensityMatrix& rho_b, std::size_t k);
ImageFamily image_from_one_point(const OnePointTrajectory& o_s, const KernelSet& ks,
                                 const DensityMatrix& rho_b, double t);

// Heisenberg image from the Dyson product Ũ† O Ũ taken back out of the
// interaction picture, truncated at total order. Independent route to Σ εⁿ P⁽ⁿ⁾_{αβ} Ô.
ImageFamily image_from_dyson_product(const Matrix& o, const KernelSet& ks, double lambda, int order,
                                     std::size_t k);

// One factor of a star product. A factor that is not lifted enters as O_S δ_{αβ}.
struct StarFactor {
    Matrix value;
    double time{0.0};
    bool lifted{true};
};

// O_{α1α2}(t1) … O_{αNα(N+1)}(tN) ρ_B[α(N+1), α1]
Matrix star_product(const std::vector<StarFactor>& factors, const SeriesTruncation& trunc,
                    const KernelSet& ks, const DensityMatrix& rho_b);
Matrix star_product(const std::vector<std::pair<const OnePointTrajectory*, double>>& factors,
                    const KernelSet& ks, const DensityMatrix& rho_b);

// dO_S/dt = (i/ħ)[H0, O_S] + Σ_{n≥1} Σ (-1)^k ε^{n+Σn_i} 𝒟_t P⁽ⁿ⁾_S P⁽ⁿ¹⁾_S … O_S
Matrix one_point_rhs(const Matrix& o_s, const SeriesTruncation& trunc, const KernelSet& ks,
                     const DensityMatrix& rho_b, std::size_t k);

} // namespace heisen
