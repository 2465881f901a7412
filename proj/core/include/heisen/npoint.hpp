// npoint.hpp — Even partitions, partition-by-partition image assembly, and cumulant decompositions

#pragma once

#include <utility>
#include <vector>

#include "heisen/superop.hpp"

namespace heisen {

// {(n₁,m₁),…,(n_k,m_k)}. The first pair may be (0,0); every later pair has n_i+m_i > 0.
class EvenPartition {
public:
    using Pair = std::pair<int, int>;

    // Throws std::invalid_argument when the pair constraints are violated.
    explicit EvenPartition(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    int total() const noexcept { return total_; }
    int max_index() const noexcept;

    bool operator==(const EvenPartition&) const = default;

private:
    std::vector<Pair> pairs_;
    int total_{0};
};

struct MultiLegPartition {
    std::vector<EvenPartition> legs;

    int total() const noexcept;
};

// All partitions of n with 1 <= k <= k_max pairs, ordered by k and then
// by the flattened tuple (n₁,m₁,n₂,m₂,…) in descending lexicographic order.
std::vector<EvenPartition> enumerate_even_partitions(int n, int k_max);

// (-1)^{k-1} [c^{n₁}K⁽ⁿ¹⁾_{γα}]† ⋯ [c^{n_k}K⁽ⁿᵏ⁾]† O_S c^{m_k}K⁽ᵐᵏ⁾ ⋯ c^{m₁}K⁽ᵐ¹⁾_{γβ}
// with c = -iλ/ħ. Pairs 2…k are closed with ρ_B, the innermost next to O_S;
// pair 1 keeps the open (α,β).
ImageFamily assemble_partition_term(const EvenPartition& p, const Matrix& o_s, const KernelSet& ks,
                                    const DensityMatrix& rho_b, double lambda, std::size_t k);

// Σ_{n ≤ n_max} Σ_{p ∈ partitions(n, n+1)} assemble_partition_term(p, …)
ImageFamily expand_image_by_partitions(const Matrix& o_s, int n_max, const KernelSet& ks,
                                       const DensityMatrix& rho_b, double lambda, std::size_t k);

// (O₁O₂)_S − O₁S O₂S at shared truncation. The model overload computes its own kernels.
Matrix irreducible_2pt(const KernelSet& ks, const DensityMatrix& rho_b, const Matrix& o1,
                       const Matrix& o2, double t1, double t2, const SeriesTruncation& trunc);
Matrix irreducible_2pt(const ModelSpec& m, const Matrix& o1, const Matrix& o2, double t1,
                       double t2, const SeriesTruncation& trunc);

// Three-point operator split into disconnected, singly wired and irreducible parts.
// wired_ij = (O_i O_j with the third factor trivially lifted)_S − disconnected, in
// factor order; the five parts sum to the three-point star product.
struct ThreePointDecomposition {
    Matrix disconnected;
    Matrix wired_12;
    Matrix wired_31;
    Matrix wired_23;
    Matrix irreducible;
    Matrix total;
};

ThreePointDecomposition decompose_3pt(const KernelSet& ks, const DensityMatrix& rho_b,
                                      const Matrix& o1, const Matrix& o2, const Matrix& o3,
                                      double t1, double t2, double t3, const SeriesTruncation& trunc);
ThreePointDecomposition decompose_3pt(const ModelSpec& m, const Matrix& o1, const Matrix& o2,
                                      const Matrix& o3, double t1, double t2, double t3,
                                      const SeriesTruncation& trunc);

} // namespace heisen
