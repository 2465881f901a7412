// ode.hpp — Time grids and the adaptive Runge–Kutta driver for matrix-valued ODEs

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heisen/hilbert.hpp"

namespace heisen {

// Strictly increasing sample times starting at 0.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times);

    static TimeGrid uniform(double t_max, std::size_t intervals);
    // Sorted, de-duplicated union of {0} and `times`.
    static TimeGrid covering(std::vector<double> times);

    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const noexcept { return times_; }
    double back() const { return times_.back(); }

    // Index of a grid time equal to t within 1e-12·max(1,|t|); IndexOutOfRange otherwise.
    std::size_t index_of(double t) const;

private:
    std::vector<double> times_;
};

namespace ode {

using State = std::vector<cplx>;
using Rhs = std::function<void(const State& x, State& dxdt, double t)>;
using Observer = std::function<void(std::size_t grid_index, const State& x)>;

struct Options {
    double abs_tol{1e-12};
    double rel_tol{1e-12};
    double initial_step{1e-3};
    std::size_t max_steps_between_samples{2'000'000};
};

// Dormand–Prince 5(4) with dense output, started at grid[0] from x0. The
// observer sees the interpolated state at every grid time. Step-size collapse
// or non-finite states raise IntegratorFailure.
void integrate(const Rhs& rhs, State x0, const TimeGrid& grid, const Observer& observer,
               const Options& opts = {});

// Flatten / unflatten a list of equally sized square blocks.
void pack(std::span<const Matrix> blocks, State& out);
void unpack(const State& in, std::span<Matrix> blocks);

} // namespace ode
} // namespace heisen
