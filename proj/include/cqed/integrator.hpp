// integrator.hpp: adaptive Dormand-Prince 5(4) with continuous output.

#pragma once

#include "cqed/hilbert.hpp"

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace cqed {

struct IntegratorOptions {
    double rtol{1e-8};
    double atol{1e-10};
    double initial_step{0.0};  // 0 selects a starting step automatically
    double max_step{std::numeric_limits<double>::infinity()};
    std::size_t max_steps{50'000'000};
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double time)
        : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

struct IntegratorStats {
    std::size_t accepted{0};
    std::size_t rejected{0};
    std::size_t rhs_evaluations{0};
};

// dy/dt = f(t, y). `out` is pre-sized to y.size().
using OdeRhs = std::function<void(double t, std::span<const cplx> y, std::span<cplx> out)>;

// Called once per output time, in order, with the interpolated state.
using OdeObserver = std::function<void(double t, const DenseVector& y)>;

// Called after every accepted step with the new state; may throw to abort.
using StepHook = std::function<void(double t, const DenseVector& y)>;

// Integrates from t0 through every time in `outputs` (strictly increasing,
// all >= t0). Throws SolverError on step-size underflow or step budget
// exhaustion.
IntegratorStats integrate_dopri5(const OdeRhs& rhs, double t0, DenseVector y0,
                                 std::span<const double> outputs, const OdeObserver& observe,
                                 const IntegratorOptions& options = {},
                                 const StepHook& on_step = {});

}  // namespace cqed
