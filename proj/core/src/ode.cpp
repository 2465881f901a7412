// ode.cpp — Boost.Odeint backed dense-output integration

#include "heisen/ode.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heisen {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw std::invalid_argument("TimeGrid: empty");
    if (times_.front() != 0.0) throw std::invalid_argument("TimeGrid: must start at 0");
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1]) || !std::isfinite(times_[k])) {
            throw std::invalid_argument("TimeGrid: times must be finite and strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t intervals) {
    if (intervals == 0 || !(t_max > 0.0)) return TimeGrid({0.0});
    std::vector<double> t(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
        t[k] = t_max * static_cast<double>(k) / static_cast<double>(intervals);
    }
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::covering(std::vector<double> times) {
    times.push_back(0.0);
    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("TimeGrid: negative time");
    }
    std::sort(times.begin(), times.end());
    std::vector<double> out;
    for (double t : times) {
        if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, std::abs(t))) out.push_back(t);
    }
    return TimeGrid(std::move(out));
}

std::size_t TimeGrid::index_of(double t) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(times_.begin(), times_.end(), t - eps);
    if (it == times_.end() || std::abs(*it - t) > eps) {
        throw IndexOutOfRange("TimeGrid: time " + std::to_string(t) + " is not a grid point");
    }
    return static_cast<std::size_t>(it - times_.begin());
}

namespace ode {

namespace odeint = boost::numeric::odeint;

void integrate(const Rhs& rhs, State x0, const TimeGrid& grid, const Observer& observer,
               const Options& opts) {
    auto finite_check = [](const State& x) {
        for (const auto& v : x) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw IntegratorFailure("ode: state became non-finite");
            }
        }
    };

    if (grid.size() == 1) {
        observer(0, x0);
        return;
    }

    auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol,
                                             odeint::runge_kutta_dopri5<State>());
    std::size_t index = 0;
    auto obs = [&](const State& x, double) {
        finite_check(x);
        observer(index++, x);
    };
    auto system = [&rhs](const State& x, State& dxdt, double t) { rhs(x, dxdt, t); };
    const double dt0 = std::min(opts.initial_step, grid[1] - grid[0]);
    try {
        odeint::integrate_times(stepper, system, x0, grid.times().begin(), grid.times().end(), dt0,
                                obs, odeint::max_step_checker(opts.max_steps_between_samples));
    } catch (const IntegratorFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw IntegratorFailure(std::string("ode: ") + e.what());
    }
    if (index != grid.size()) throw IntegratorFailure("ode: integration stopped before the last grid time");
}

void pack(std::span<const Matrix> blocks, State& out) {
    std::size_t total = 0;
    for (const auto& b : blocks) total += static_cast<std::size_t>(b.size());
    out.resize(total);
    std::size_t k = 0;
    for (const auto& b : blocks) {
        for (Index c = 0; c < b.cols(); ++c) {
            for (Index r = 0; r < b.rows(); ++r) out[k++] = b(r, c);
        }
    }
}

void unpack(const State& in, std::span<Matrix> blocks) {
    std::size_t k = 0;
    for (auto& b : blocks) {
        for (Index c = 0; c < b.cols(); ++c) {
            for (Index r = 0; r < b.rows(); ++r) b(r, c) = in[k++];
        }
    }
    if (k != in.size()) throw DimensionError("ode::unpack: state size does not match blocks");
}

} // namespace ode
} // namespace heisen
