// npoint.cpp — Partition enumeration and assembly, 2- and 3-point cumulants

#include "heisen/npoint.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace heisen {
namespace {

// (c^n K⁽ⁿ⁾)† at every (γ, α)
ImageFamily scaled_kernel(const KernelSet& ks, int n, cplx c, std::size_t k) {
    cplx s{1.0, 0.0};
    for (int i = 0; i < n; ++i) s *= c;
    return s * ks.k(n, k);
}

Matrix one_point_at(const Matrix& o, double t, const SeriesTruncation& trunc, const KernelSet& ks,
                    const DensityMatrix& rho_b) {
    const std::size_t k = ks.index_of(t);
    const Matrix free = ks.frame().free_evolve(o, t);
    const double eps = trunc.lambda / ks.hbar();
    Matrix acc = free;
    double scale = 1.0;
    for (int n = 1; n <= trunc.order; ++n) {
        scale *= eps;
        acc += scale * apply_P_S(n, free, ks, rho_b, k);
    }
    return acc;
}

KernelSet kernels_for(const ModelSpec& m, std::vector<double> times, int order) {
    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("n-point times must be non-negative");
    }
    return compute_kernels(m, order, TimeGrid::covering(std::move(times)));
}

} // namespace

EvenPartition::EvenPartition(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw std::invalid_argument("EvenPartition: at least one pair required");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const auto [n, m] = pairs_[i];
        if (n < 0 || m < 0) throw std::invalid_argument("EvenPartition: negative entry");
        if (i > 0 && n + m == 0) {
            throw std::invalid_argument("EvenPartition: pair " + std::to_string(i + 1) + " is (0,0)");
        }
        total_ += n + m;
    }
}

int EvenPartition::max_index() const noexcept {
    int out = 0;
    for (const auto& [n, m] : pairs_) out = std::max({out, n, m});
    return out;
}

int MultiLegPartition::total() const noexcept {
    int s = 0;
    for (const auto& l : legs) s += l.total();
    return s;
}

std::vector<EvenPartition> enumerate_even_partitions(int n, int k_max) {
    if (n < 0) throw std::invalid_argument("enumerate_even_partitions: n must be >= 0");
    if (k_max < 1) throw std::invalid_argument("enumerate_even_partitions: k_max must be >= 1");
    std::vector<EvenPartition> out;
    std::vector<EvenPartition::Pair> cur;
    std::function<void(int, int)> rec = [&](int remaining, int k_left) {
        if (k_left == 0) {
            if (remaining == 0) out.emplace_back(cur);
            return;
        }
        const bool first = cur.empty();
        // Later pairs need at least one unit each.
        const int reserve = k_left - 1;
        for (int s = remaining - reserve; s >= (first ? 0 : 1); --s) {
            for (int a = s; a >= 0; --a) {
                cur.emplace_back(a, s - a);
                rec(remaining - s, k_left - 1);
                cur.pop_back();
            }
        }
    };
    for (int k = 1; k <= k_max; ++k) {
        if (k - 1 > n) break;
        const auto begin = static_cast<std::ptrdiff_t>(out.size());
        rec(n, k);
        std::sort(out.begin() + begin, out.end(), [](const EvenPartition& x, const EvenPartition& y) {
            return y.pairs() < x.pairs();
        });
    }
    return out;
}

ImageFamily assemble_partition_term(const EvenPartition& p, const Matrix& o_s, const KernelSet& ks,
                                    const DensityMatrix& rho_b, double lambda, std::size_t k) {
    ks.require_order(p.max_index());
    const Dims& d = ks.dims();
    require_space(o_s, {Space::System, d}, "assemble_partition_term");
    if (rho_b.dim() != d.bath) throw DimensionError("assemble_partition_term: bath dimension mismatch");
    const cplx c = -kI * lambda / ks.hbar();

    // Close pairs k…2 around O_S, innermost first.
    Matrix inner = o_s;
    const auto& pairs = p.pairs();
    for (std::size_t i = pairs.size(); i-- > 1;) {
        const ImageFamily left = scaled_kernel(ks, pairs[i].first, c, k);
        const ImageFamily right = scaled_kernel(ks, pairs[i].second, c, k);
        Matrix next = Matrix::Zero(d.sys, d.sys);
        for (Index g = 0; g < d.bath; ++g) {
            for (Index a = 0; a < d.bath; ++a) {
                for (Index b = 0; b < d.bath; ++b) {
                    const cplx w = rho_b(b, a);
                    if (w != cplx{}) next.noalias() += w * (left(g, a).adjoint() * inner * right(g, b));
                }
            }
        }
        inner = std::move(next);
    }

    const ImageFamily left = scaled_kernel(ks, pairs[0].first, c, k);
    const ImageFamily right = scaled_kernel(ks, pairs[0].second, c, k);
    ImageFamily out(d, ks.grid()[k]);
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) {
            Matrix& acc = out(a, b);
            for (Index g = 0; g < d.bath; ++g) acc.noalias() += left(g, a).adjoint() * inner * right(g, b);
        }
    }
    if (pairs.size() % 2 == 0) out *= cplx{-1.0, 0.0};
    return out;
}

ImageFamily expand_image_by_partitions(const Matrix& o_s, int n_max, const KernelSet& ks,
                                       const DensityMatrix& rho_b, double lambda, std::size_t k) {
    if (n_max < 0) throw std::invalid_argument("expand_image_by_partitions: n_max must be >= 0");
    ks.require_order(n_max);
    ImageFamily out(ks.dims(), ks.grid()[k]);
    for (int n = 0; n <= n_max; ++n) {
        for (const auto& p : enumerate_even_partitions(n, n + 1)) {
            out += assemble_partition_term(p, o_s, ks, rho_b, lambda, k);
        }
    }
    return out;
}

Matrix irreducible_2pt(const KernelSet& ks, const DensityMatrix& rho_b, const Matrix& o1,
                       const Matrix& o2, double t1, double t2, const SeriesTruncation& trunc) {
    const Matrix a = one_point_at(o1, t1, trunc, ks, rho_b);
    const Matrix b = one_point_at(o2, t2, trunc, ks, rho_b);
    return star_product({{a, t1, true}, {b, t2, true}}, trunc, ks, rho_b) - a * b;
}

Matrix irreducible_2pt(const ModelSpec& m, const Matrix& o1, const Matrix& o2, double t1,
                       double t2, const SeriesTruncation& trunc) {
    const KernelSet ks = kernels_for(m, {t1, t2}, trunc.order);
    return irreducible_2pt(ks, m.rho_b(), o1, o2, t1, t2, trunc);
}

ThreePointDecomposition decompose_3pt(const KernelSet& ks, const DensityMatrix& rho_b,
                                      const Matrix& o1, const Matrix& o2, const Matrix& o3,
                                      double t1, double t2, double t3, const SeriesTruncation& trunc) {
    const Matrix a = one_point_at(o1, t1, trunc, ks, rho_b);
    const Matrix b = one_point_at(o2, t2, trunc, ks, rho_b);
    const Matrix c = one_point_at(o3, t3, trunc, ks, rho_b);
    auto star = [&](bool l1, bool l2, bool l3) {
        return star_product({{a, t1, l1}, {b, t2, l2}, {c, t3, l3}}, trunc, ks, rho_b);
    };
    ThreePointDecomposition out;
    out.disconnected = a * b * c;
    out.wired_12 = star(true, true, false) - out.disconnected;
    out.wired_31 = star(true, false, true) - out.disconnected;
    out.wired_23 = star(false, true, true) - out.disconnected;
    out.total = star(true, true, true);
    out.irreducible = out.total - out.wired_12 - out.wired_31 - out.wired_23 - out.disconnected;
    return out;
}

ThreePointDecomposition decompose_3pt(const ModelSpec& m, const Matrix& o1, const Matrix& o2,
                                      const Matrix& o3, double t1, double t2, double t3,
                                      const SeriesTruncation& trunc) {
    const KernelSet ks = kernels_for(m, {t1, t2, t3}, trunc.order);
    return decompose_3pt(ks, m.rho_b(), o1, o2, o3, t1, t2, t3, trunc);
}

} // namespace heisen
