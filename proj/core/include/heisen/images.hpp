// images.hpp — Image operators O_{αβ} = T_α† O T_β and their exact dynamics

#pragma once

#include <vector>

#include "heisen/model.hpp"
#include "heisen/ode.hpp"

namespace heisen {

// Bath-indexed family {X_{αβ}} of system operators, stored row-major in (α, β).
class ImageFamily {
public:
    ImageFamily() = default;
    ImageFamily(Dims d, double time = 0.0);

    static ImageFamily zero(Dims d, double time = 0.0);
    // X_{αβ} = o δ_{αβ}
    static ImageFamily diagonal(const Matrix& o, Index d_bath, double time = 0.0);

    Matrix& operator()(Index alpha, Index beta);
    const Matrix& operator()(Index alpha, Index beta) const;

    const Dims& dims() const noexcept { return dims_; }
    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

    std::vector<Matrix>& blocks() noexcept { return blocks_; }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

    // Family of the full-space adjoint: (X†)_{αβ} = (X_{βα})†
    ImageFamily adjoint() const;
    // sqrt(Σ_{αβ} ||X_{αβ}||_F²), i.e. the Frobenius norm of the full operator
    double norm() const;

    ImageFamily& operator+=(const ImageFamily& rhs);
    ImageFamily& operator-=(const ImageFamily& rhs);
    ImageFamily& operator*=(cplx s);

    friend ImageFamily operator+(ImageFamily a, const ImageFamily& b) { return a += b; }
    friend ImageFamily operator-(ImageFamily a, const ImageFamily& b) { return a -= b; }
    friend ImageFamily operator*(cplx s, ImageFamily a) { return a *= s; }

private:
    void check(Index alpha, Index beta) const;

    Dims dims_{};
    double time_{0.0};
    std::vector<Matrix> blocks_;
};

// T_α† x T_β for every (α, β)
ImageFamily to_image_family(const Matrix& x, const Dims& d, double time = 0.0);
// Σ_{αβ} T_α X_{αβ} T_β†
Matrix from_image_family(const ImageFamily& f);

// (f1 f2)_{αβ} = Σ_γ f1_{αγ} f2_{γβ}
ImageFamily compose_images(const ImageFamily& f1, const ImageFamily& f2);

// Σ_{αβ} X_{αβ} ρ_B[β, α]
Matrix contract_with_bath(const ImageFamily& f, const DensityMatrix& rho_b);

// Integrates dO_{αβ}/dt = (i/ħ){H_{αγ} O_{γβ} − O_{αγ} H_{γβ}} from O_{αβ}(0) = o0 δ_{αβ}
// with the image family of the total Hamiltonian. One family per grid point.
std::vector<ImageFamily> evolve_images_exact(const ModelSpec& m, const Matrix& o0,
                                             const TimeGrid& grid, const ode::Options& opts = {});

} // namespace heisen
