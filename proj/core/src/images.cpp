// images.cpp — Image families, composition, bath contraction and the exact image ODE

#include "heisen/images.hpp"

#include <cmath>

#include "heisen/oracle.hpp"

namespace heisen {

ImageFamily::ImageFamily(Dims d, double time)
    : dims_(d), time_(time),
      blocks_(static_cast<std::size_t>(d.bath * d.bath), Matrix::Zero(d.sys, d.sys)) {
    if (d.sys < 1 || d.bath < 1) throw DimensionError("ImageFamily: dimensions must be positive");
}

ImageFamily ImageFamily::zero(Dims d, double time) { return ImageFamily(d, time); }

ImageFamily ImageFamily::diagonal(const Matrix& o, Index d_bath, double time) {
    require_square(o, "ImageFamily::diagonal");
    ImageFamily f(Dims{o.rows(), d_bath}, time);
    for (Index a = 0; a < d_bath; ++a) f(a, a) = o;
    return f;
}

void ImageFamily::check(Index alpha, Index beta) const {
    if (alpha < 0 || beta < 0 || alpha >= dims_.bath || beta >= dims_.bath) {
        throw IndexOutOfRange("ImageFamily: bath index out of range");
    }
}

Matrix& ImageFamily::operator()(Index alpha, Index beta) {
    check(alpha, beta);
    return blocks_[static_cast<std::size_t>(alpha * dims_.bath + beta)];
}

const Matrix& ImageFamily::operator()(Index alpha, Index beta) const {
    check(alpha, beta);
    return blocks_[static_cast<std::size_t>(alpha * dims_.bath + beta)];
}

ImageFamily ImageFamily::adjoint() const {
    ImageFamily out(dims_, time_);
    for (Index a = 0; a < dims_.bath; ++a) {
        for (Index b = 0; b < dims_.bath; ++b) out(a, b) = (*this)(b, a).adjoint();
    }
    return out;
}

double ImageFamily::norm() const {
    double s = 0.0;
    for (const auto& b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
}

ImageFamily& ImageFamily::operator+=(const ImageFamily& rhs) {
    if (!(dims_ == rhs.dims_)) throw DimensionError("ImageFamily: dimension mismatch in +");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += rhs.blocks_[k];
    return *this;
}

ImageFamily& ImageFamily::operator-=(const ImageFamily& rhs) {
    if (!(dims_ == rhs.dims_)) throw DimensionError("ImageFamily: dimension mismatch in -");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= rhs.blocks_[k];
    return *this;
}

ImageFamily& ImageFamily::operator*=(cplx s) {
    for (auto& b : blocks_) b *= s;
    return *this;
}

ImageFamily to_image_family(const Matrix& x, const Dims& d, double time) {
    require_space(x, {Space::Full, d}, "to_image_family");
    ImageFamily f(d, time);
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) f(a, b) = image_extract_exact(x, d, a, b);
    }
    return f;
}

Matrix from_image_family(const ImageFamily& f) {
    const Dims& d = f.dims();
    Matrix x(d.full(), d.full());
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) {
            const Matrix& blk = f(a, b);
            for (Index i = 0; i < d.sys; ++i) {
                for (Index j = 0; j < d.sys; ++j) x(i * d.bath + a, j * d.bath + b) = blk(i, j);
            }
        }
    }
    return x;
}

ImageFamily compose_images(const ImageFamily& f1, const ImageFamily& f2) {
    if (!(f1.dims() == f2.dims())) throw DimensionError("compose_images: dimension mismatch");
    const Dims& d = f1.dims();
    ImageFamily out(d, f1.time());
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) {
            Matrix& acc = out(a, b);
            for (Index g = 0; g < d.bath; ++g) acc.noalias() += f1(a, g) * f2(g, b);
        }
    }
    return out;
}

Matrix contract_with_bath(const ImageFamily& f, const DensityMatrix& rho_b) {
    const Dims& d = f.dims();
    if (rho_b.dim() != d.bath) throw DimensionError("contract_with_bath: bath dimension mismatch");
    Matrix out = Matrix::Zero(d.sys, d.sys);
    for (Index a = 0; a < d.bath; ++a) {
        for (Index b = 0; b < d.bath; ++b) {
            const cplx w = rho_b(b, a);
            if (w != cplx{}) out += w * f(a, b);
        }
    }
    return out;
}

std::vector<ImageFamily> evolve_images_exact(const ModelSpec& m, const Matrix& o0,
                                             const TimeGrid& grid, const ode::Options& opts) {
    const Dims& d = m.dims();
    require_space(o0, {Space::System, d}, "evolve_images_exact(o0)");
    require_hermitian(total_hamiltonian(m), "evolve_images_exact(H)");
    const ImageFamily h = to_image_family(total_hamiltonian(m), d);
    const cplx pref = kI / m.hbar();

    ImageFamily o = ImageFamily::diagonal(o0, d.bath);
    ImageFamily scratch(d);
    auto rhs = [&](const ode::State& x, ode::State& dxdt, double) {
        ode::unpack(x, o.blocks());
        for (Index a = 0; a < d.bath; ++a) {
            for (Index b = 0; b < d.bath; ++b) {
                Matrix& acc = scratch(a, b);
                acc.setZero();
                for (Index g = 0; g < d.bath; ++g) {
                    acc.noalias() += h(a, g) * o(g, b);
                    acc.noalias() -= o(a, g) * h(g, b);
                }
                acc *= pref;
            }
        }
        ode::pack(scratch.blocks(), dxdt);
    };

    std::vector<ImageFamily> out;
    out.reserve(grid.size());
    ode::State x0;
    ode::pack(o.blocks(), x0);
    ImageFamily sample(d);
    ode::integrate(rhs, std::move(x0), grid,
                   [&](std::size_t k, const ode::State& x) {
                       ode::unpack(x, sample.blocks());
                       sample.set_time(grid[k]);
                       out.push_back(sample);
                   },
                   opts);
    return out;
}

} // namespace heisen
