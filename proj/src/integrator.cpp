#include "cqed/integrator.hpp"

#include "cqed/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace cqed {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer & Wanner, dopri5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

std::span<const cplx> view(const DenseVector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}
std::span<cplx> view(DenseVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

double rms_norm(const DenseVector& v, const DenseVector& scale_ref, double rtol, double atol) {
    return kernels::scaled_rms(view(v), view(scale_ref), view(scale_ref), rtol, atol);
}

}  // namespace

IntegratorStats integrate_dopri5(const OdeRhs& rhs, double t0, DenseVector y0,
                                 std::span<const double> outputs, const OdeObserver& observe,
                                 const IntegratorOptions& options, const StepHook& on_step) {
    if (!(options.rtol > 0.0) || !(options.atol > 0.0)) {
        throw std::invalid_argument("integrate_dopri5: tolerances must be positive");
    }
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i] < t0 || (i > 0 && !(outputs[i] > outputs[i - 1]))) {
            throw std::invalid_argument(
                "integrate_dopri5: output times must be strictly increasing and >= t0");
        }
    }

    IntegratorStats stats;
    const Eigen::Index n = y0.size();
    auto f = [&](double t, const DenseVector& y, DenseVector& out) {
        rhs(t, view(y), view(out));
        ++stats.rhs_evaluations;
    };

    std::size_t next_out = 0;
    while (next_out < outputs.size() && outputs[next_out] == t0) {
        observe(t0, y0);
        ++next_out;
    }
    if (next_out == outputs.size()) return stats;
    const double t_end = outputs.back();

    DenseVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
    f(t0, y0, k1);

    double h = options.initial_step;
    if (h <= 0.0) {
        const double dy0 = rms_norm(y0, y0, options.rtol, options.atol);
        const double df0 = rms_norm(k1, y0, options.rtol, options.atol);
        double h0 = (dy0 < 1e-5 || df0 < 1e-5) ? 1e-6 : 0.01 * dy0 / df0;
        h0 = std::min(h0, t_end - t0);
        ytmp = y0 + h0 * k1;
        f(t0 + h0, ytmp, k2);
        const double ddf = rms_norm(DenseVector(k2 - k1), y0, options.rtol, options.atol) / h0;
        const double m = std::max(df0, ddf);
        const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 1.0 / 5.0);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min({h, options.max_step, t_end - t0});

    double t = t0;
    DenseVector& y = y0;
    bool last_rejected = false;
    std::size_t steps = 0;

    while (next_out < outputs.size()) {
        if (++steps > options.max_steps) {
            throw SolverError("integrate_dopri5: step budget exhausted", t);
        }
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            throw SolverError("integrate_dopri5: step size underflow (stiffness failure)", t);
        }
        const bool reaches_end = t + h >= t_end;
        if (reaches_end) h = t_end - t;

        ytmp = y + h * (a21 * k1);
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        f(t + h, ynew, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err_norm =
            kernels::scaled_rms(view(err), view(y), view(ynew), options.rtol, options.atol);
        if (!std::isfinite(err_norm)) {
            throw SolverError("integrate_dopri5: non-finite error estimate", t);
        }

        if (err_norm <= 1.0) {
            ++stats.accepted;
            const double t_new = reaches_end ? t_end : t + h;
            while (next_out < outputs.size() && outputs[next_out] <= t_new) {
                const double theta = (outputs[next_out] - t) / h;
                const double theta1 = 1.0 - theta;
                const DenseVector r2 = ynew - y;
                const DenseVector r3 = h * k1 - r2;
                const DenseVector r4 = r2 - h * k7 - r3;
                const DenseVector r5 =
                    h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                const DenseVector yi =
                    y + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
                observe(outputs[next_out], outputs[next_out] == t_new ? ynew : yi);
                ++next_out;
            }
            t = t_new;
            y.swap(ynew);
            k1.swap(k7);
            if (on_step) on_step(t, y);

            double fac = err_norm == 0.0 ? 10.0 : 0.9 * std::pow(err_norm, -0.2);
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
            h = std::min(h * fac, options.max_step);
            last_rejected = false;
        } else {
            ++stats.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            last_rejected = true;
        }
    }
    return stats;
}

}  // namespace cqed
