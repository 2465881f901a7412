// superop.cpp — P⁽ⁿ⁾ super-operators and the one-point / image / star-product series

#include "heisen/superop.hpp"

#include <string>

namespace heisen {
namespace {

void require_trunc(const SeriesTruncation& trunc, const KernelSet& ks) {
    if (trunc.order < 0) throw std::invalid_argument("SeriesTruncation: order must be >= 0");
    ks.require_order(trunc.order);
}

void require_bath(const KernelSet& ks, const DensityMatrix& rho_b) {
    if (rho_b.dim() != ks.dims().bath) throw DimensionError("bath state dimension differs from kernels");
}

// M_{γα} = Σ_β X_{γβ} ρ_B[β,α]
ImageFamily right_contract(const ImageFamily& x, const DensityMatrix& rho_b) {
    const Dims& d = x.dims();
    ImageFamily m(d, x.time());
    for (Index g = 0; g < d.bath; ++g) {
        for (Index a = 0; a < d.bath; ++a) {
            Matrix& acc = m(g, a);
            for (Index b = 0; b < d.bath; ++b) {
                const cplx w = rho_b(b, a);
                if (w != cplx{}) acc += w * x(g, b);
            }
        }
    }
    return m;
}

// Σ_{γα} L_{γα}† A M_{γα}
Matrix sandwich_sum(const ImageFamily& left, const Matrix& a, const ImageFamily& right) {
    const Dims& d = left.dims();
    Matrix out = Matrix::Zero(d.sys, d.sys);
    for (Index g = 0; g < d.bath; ++g) {
        for (Index al = 0; al < d.bath; ++al) {
            out.noalias() += left(g, al).adjoint() * a * right(g, al);
        }
    }
    return out;
}

} // namespace

cplx ipow(int m) {
    switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

ImageFamily apply_P_ab(int n, const Matrix& a, const KernelSet& ks, std::size_t k) {
    ks.require_order(n);
    const Dims& d = ks.dims();
    require_space(a, {Space::System, d}, "apply_P_ab");
    ImageFamily out(d, ks.grid()[k]);
    for (int r = 0; r <= n; ++r) {
        const cplx c = ipow(n - 2 * r);
        const ImageFamily& kl = ks.k(n - r, k);
        const ImageFamily& kr = ks.k(r, k);
        for (Index al = 0; al < d.bath; ++al) {
            for (Index be = 0; be < d.bath; ++be) {
                Matrix acc = Matrix::Zero(d.sys, d.sys);
                for (Index g = 0; g < d.bath; ++g) acc.noalias() += kl(g, al).adjoint() * a * kr(g, be);
                out(al, be) += c * acc;
            }
        }
    }
    return out;
}

Matrix apply_P_S(int n, const Matrix& a, const KernelSet& ks, const DensityMatrix& rho_b, std::size_t k) {
    ks.require_order(n);
    require_bath(ks, rho_b);
    require_space(a, {Space::System, ks.dims()}, "apply_P_S");
    if (n == 0) return a;
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (int r = 0; r <= n; ++r) {
        out += ipow(n - 2 * r) * sandwich_sum(ks.k(n - r, k), a, right_contract(ks.k(r, k), rho_b));
    }
    return out;
}

Matrix apply_DtP_S(int n, const Matrix& a, const KernelSet& ks, const DensityMatrix& rho_b,
                   std::size_t k) {
    ks.require_order(n);
    require_bath(ks, rho_b);
    require_space(a, {Space::System, ks.dims()}, "apply_DtP_S");
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    if (n == 0) return out;
    for (int r = 0; r <= n; ++r) {
        const cplx c = ipow(n - 2 * r);
        if (n - r > 0) out += c * sandwich_sum(ks.kdot(n - r, k), a, right_contract(ks.k(r, k), rho_b));
        if (r > 0) out += c * sandwich_sum(ks.k(n - r, k), a, right_contract(ks.kdot(r, k), rho_b));
    }
    return out;
}

OnePointTrajectory one_point_operator(const Matrix& o, const SeriesTruncation& trunc,
                                      const KernelSet& ks, const DensityMatrix& rho_b,
                                      std::string label) {
    require_trunc(trunc, ks);
    require_bath(ks, rho_b);
    require_space(o, {Space::System, ks.dims()}, "one_point_operator");
    OnePointTrajectory out{std::move(label), ks.grid(), {}, trunc};
    out.values.reserve(ks.grid().size());
    const double eps = trunc.lambda / ks.hbar();
    for (std::size_t k = 0; k < ks.grid().size(); ++k) {
        const Matrix free = ks.frame().free_evolve(o, ks.grid()[k]);
        Matrix acc = free;
        double scale = 1.0;
        for (int n = 1; n <= trunc.order; ++n) {
            scale *= eps;
            acc += scale * apply_P_S(n, free, ks, rho_b, k);
        }
        out.values.push_back(std::move(acc));
    }
    return out;
}

std::vector<Matrix> inversion_terms(const Matrix& o_s, int order, const KernelSet& ks,
                                    const DensityMatrix& rho_b, std::size_t k) {
    ks.require_order(order);
    require_space(o_s, {Space::System, ks.dims()}, "inversion_terms");
    std::vector<Matrix> w;
    w.reserve(static_cast<std::size_t>(order + 1));
    w.push_back(o_s);
    for (int m = 1; m <= order; ++m) {
        Matrix acc = Matrix::Zero(o_s.rows(), o_s.cols());
        for (int n = 1; n <= m; ++n) acc -= apply_P_S(n, w[static_cast<std::size_t>(m - n)], ks, rho_b, k);
        w.push_back(std::move(acc));
    }
    return w;
}

Matrix invert_one_point(const Matrix& o_s, const SeriesTruncation& trunc, const KernelSet& ks,
                        const DensityMatrix& rho_b, std::size_t k) {
    require_trunc(trunc, ks);
    const auto w = inversion_terms(o_s, trunc.order, ks, rho_b, k);
    const double eps = trunc.lambda / ks.hbar();
    Matrix acc = w[0];
    double scale = 1.0;
    for (int m = 1; m <= trunc.order; ++m) {
        scale *= eps;
        acc += scale * w[static_cast<std::size_t>(m)];
    }
    return acc;
}

ImageFamily image_from_one_point(const Matrix& o_s, const SeriesTruncation& trunc,
                                 const KernelSet& ks, const DensityMatrix& rho_b, std::size_t k) {
    require_trunc(trunc, ks);
    require_bath(ks, rho_b);
    const auto w = inversion_terms(o_s, trunc.order, ks, rho_b, k);
    const double eps = trunc.lambda / ks.hbar();
    ImageFamily out(ks.dims(), ks.grid()[k]);
    double scale_n = 1.0;
    for (int n = 0; n <= trunc.order; ++n) {
        double scale = scale_n;
        for (int m = 0; n + m <= trunc.order; ++m) {
            out += cplx{scale} * apply_P_ab(n, w[static_cast<std::size_t>(m)], ks, k);
            scale *= eps;
        }
        scale_n *= eps;
    }
    return out;
}

ImageFamily image_from_one_point(const OnePointTrajectory& o_s, const KernelSet& ks,
                                 const DensityMatrix& rho_b, double t) {
    return image_from_one_point(o_s.at(t), o_s.truncation, ks, rho_b, ks.index_of(t));
}

ImageFamily image_from_dyson_product(const Matrix& o, const KernelSet& ks, double lambda, int order,
                                     std::size_t k) {
    ks.require_order(order);
    const Dims& d = ks.dims();
    require_space(o, {Space::System, d}, "image_from_dyson_product");
    const cplx c = -kI * lambda / ks.hbar();
    std::vector<ImageFamily> u;
    cplx coeff{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        u.push_back(coeff * ks.tilde(n, k));
        coeff *= c;
    }
    const ImageFamily center = ImageFamily::diagonal(o, d.bath);
    ImageFamily tilde_o(d, ks.grid()[k]);
    for (int a = 0; a <= order; ++a) {
        const ImageFamily left = compose_images(u[static_cast<std::size_t>(a)].adjoint(), center);
        for (int b = 0; a + b <= order; ++b) {
            tilde_o += compose_images(left, u[static_cast<std::size_t>(b)]);
        }
    }
    return ks.frame().from_interaction(tilde_o, ks.grid()[k]);
}

Matrix star_product(const std::vector<StarFactor>& factors, const SeriesTruncation& trunc,
                    const KernelSet& ks, const DensityMatrix& rho_b) {
    if (factors.empty()) throw std::invalid_argument("star_product: no factors");
    require_trunc(trunc, ks);
    require_bath(ks, rho_b);
    const Dims& d = ks.dims();
    ImageFamily chain;
    bool first = true;
    for (const auto& f : factors) {
        const std::size_t k = ks.index_of(f.time);
        ImageFamily img = f.lifted ? image_from_one_point(f.value, trunc, ks, rho_b, k)
                                   : ImageFamily::diagonal(f.value, d.bath, f.time);
        if (!(img.dims() == d)) throw DimensionError("star_product: factor dimension mismatch");
        chain = first ? std::move(img) : compose_images(chain, img);
        first = false;
    }
    return contract_with_bath(chain, rho_b);
}

Matrix star_product(const std::vector<std::pair<const OnePointTrajectory*, double>>& factors,
                    const KernelSet& ks, const DensityMatrix& rho_b) {
    if (factors.empty()) throw std::invalid_argument("star_product: no factors");
    std::vector<StarFactor> fs;
    const SeriesTruncation trunc = factors.front().first->truncation;
    for (const auto& [traj, t] : factors) {
        if (traj->truncation.order != trunc.order || traj->truncation.lambda != trunc.lambda) {
            throw std::invalid_argument("star_product: trajectories use different truncations");
        }
        fs.push_back({traj->at(t), t, true});
    }
    return star_product(fs, trunc, ks, rho_b);
}

Matrix one_point_rhs(const Matrix& o_s, const SeriesTruncation& trunc, const KernelSet& ks,
                     const DensityMatrix& rho_b, std::size_t k) {
    require_trunc(trunc, ks);
    require_bath(ks, rho_b);
    const auto w = inversion_terms(o_s, trunc.order, ks, rho_b, k);
    const double eps = trunc.lambda / ks.hbar();
    Matrix acc = (kI / ks.hbar()) * commutator(ks.frame().h0(), o_s);
    double scale_n = 1.0;
    for (int n = 1; n <= trunc.order; ++n) {
        scale_n *= eps;
        double scale = scale_n;
        for (int m = 0; n + m <= trunc.order; ++m) {
            acc += scale * apply_DtP_S(n, w[static_cast<std::size_t>(m)], ks, rho_b, k);
            scale *= eps;
        }
    }
    return acc;
}

} // namespace heisen
