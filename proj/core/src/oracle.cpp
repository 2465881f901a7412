// oracle.cpp — Exact brute-force reference computations

#include "heisen/oracle.hpp"

#include <stdexcept>

namespace heisen {

Matrix total_hamiltonian(const ModelSpec& m) {
    const Dims& d = m.dims();
    return tensor_product(m.h0(), identity(d.bath)) + tensor_product(identity(d.sys), m.hb()) +
           m.lambda() * m.hi();
}

ExactEvolver::ExactEvolver(const ModelSpec& m) : model_(m), eig_(hermitian_eigen(total_hamiltonian(m))) {}

Matrix ExactEvolver::evolve_full(const Matrix& x, double t) const {
    require_space(x, {Space::Full, model_.dims()}, "evolve_full");
    if (t < 0.0) throw std::invalid_argument("heisenberg evolution requires t >= 0");
    const Matrix u = unitary_propagator(eig_, t, model_.hbar());
    return u.adjoint() * x * u;
}

Matrix ExactEvolver::evolve(const Matrix& o0, double t) const {
    require_space(o0, {Space::System, model_.dims()}, "heisenberg_evolve_exact(o0)");
    return evolve_full(tensor_product(o0, identity(model_.dims().bath)), t);
}

Matrix ExactEvolver::one_point(const Matrix& o0, double t) const {
    return weighted_bath_trace(evolve(o0, t), model_.rho_b());
}

Matrix ExactEvolver::npoint(const std::vector<std::pair<Matrix, double>>& ops) const {
    if (ops.empty()) throw std::invalid_argument("npoint_reduced_exact: empty operator sequence");
    Matrix prod = identity(model_.dims().full());
    for (const auto& [op, t] : ops) prod = prod * evolve(op, t);
    return weighted_bath_trace(prod, model_.rho_b());
}

Matrix heisenberg_evolve_exact(const ModelSpec& m, const Matrix& o0, double t) {
    return ExactEvolver(m).evolve(o0, t);
}

Matrix npoint_reduced_exact(const ModelSpec& m, const std::vector<std::pair<Matrix, double>>& ops) {
    return ExactEvolver(m).npoint(ops);
}

Matrix image_extract_exact(const Matrix& x, const Dims& d, Index alpha, Index beta) {
    require_space(x, {Space::Full, d}, "image_extract_exact");
    if (alpha < 0 || alpha >= d.bath || beta < 0 || beta >= d.bath) {
        throw IndexOutOfRange("image_extract_exact: bath index out of range");
    }
    Matrix out(d.sys, d.sys);
    for (Index i = 0; i < d.sys; ++i) {
        for (Index j = 0; j < d.sys; ++j) out(i, j) = x(i * d.bath + alpha, j * d.bath + beta);
    }
    return out;
}

cplx expectation(const Matrix& o_s, const DensityMatrix& rho0) {
    if (o_s.rows() != rho0.dim() || o_s.cols() != rho0.dim()) {
        throw DimensionError("expectation: operator and state dimensions differ");
    }
    return (o_s * rho0.matrix()).trace();
}

} // namespace heisen
