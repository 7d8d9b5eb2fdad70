#include "cqed/integrator.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cqed;

TEST_CASE("exponential decay to tolerance") {
    const double rate = 1.7;
    const OdeRhs rhs = [rate](double, std::span<const cplx> y, std::span<cplx> out) {
        out[0] = -rate * y[0];
    };
    const std::vector<double> outputs{0.0, 0.5, 1.0, 2.0, 3.0};
    std::vector<double> seen;
    double worst = 0.0;
    DenseVector y0(1);
    y0(0) = 1.0;
    integrate_dopri5(rhs, 0.0, y0, outputs, [&](double t, const DenseVector& y) {
        seen.push_back(t);
        worst = std::max(worst, std::abs(y(0) - std::exp(-rate * t)));
    });
    CHECK(seen == outputs);
    CHECK(worst < 1e-8);
}

TEST_CASE("oscillator phase and dense output between steps") {
    const double w = 3.0;
    const OdeRhs rhs = [w](double, std::span<const cplx> y, std::span<cplx> out) {
        out[0] = cplx(0.0, -w) * y[0];
    };
    std::vector<double> outputs;
    for (int k = 0; k <= 2000; ++k) outputs.push_back(0.0025 * k);
    double worst = 0.0;
    DenseVector y0(1);
    y0(0) = 1.0;
    const IntegratorStats stats = integrate_dopri5(
        rhs, 0.0, y0, outputs,
        [&](double t, const DenseVector& y) {
            worst = std::max(worst, std::abs(y(0) - std::exp(cplx(0.0, -w * t))));
        },
        {.rtol = 1e-9, .atol = 1e-12});
    CHECK(worst < 1e-7);
    CHECK(stats.accepted < outputs.size() / 4);  // most outputs come from interpolation
    CHECK(stats.rhs_evaluations > 0);
}

TEST_CASE("output at the start time returns the initial state") {
    const OdeRhs rhs = [](double, std::span<const cplx> y, std::span<cplx> out) { out[0] = y[0]; };
    DenseVector y0(1);
    y0(0) = 2.0;
    int calls = 0;
    integrate_dopri5(rhs, 1.0, y0, std::vector<double>{1.0}, [&](double t, const DenseVector& y) {
        ++calls;
        CHECK(t == 1.0);
        CHECK(y(0) == cplx(2.0));
    });
    CHECK(calls == 1);
}

TEST_CASE("step-size underflow raises SolverError with the time") {
    // y' = y^2 blows up at t = 1.
    const OdeRhs rhs = [](double, std::span<const cplx> y, std::span<cplx> out) { out[0] = y[0] * y[0]; };
    DenseVector y0(1);
    y0(0) = 1.0;
    try {
        integrate_dopri5(rhs, 0.0, y0, std::vector<double>{2.0}, [](double, const DenseVector&) {});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.time() == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("step hook can abort the integration") {
    const OdeRhs rhs = [](double, std::span<const cplx> y, std::span<cplx> out) { out[0] = -y[0]; };
    DenseVector y0(1);
    y0(0) = 1.0;
    CHECK_THROWS_AS(integrate_dopri5(
                        rhs, 0.0, y0, std::vector<double>{10.0}, [](double, const DenseVector&) {}, {},
                        [](double t, const DenseVector&) {
                            if (t > 1.0) throw SolverError("stop", t);
                        }),
                    SolverError);
}

TEST_CASE("outputs must be ordered") {
    const OdeRhs rhs = [](double, std::span<const cplx> y, std::span<cplx> out) { out[0] = -y[0]; };
    DenseVector y0(1);
    y0(0) = 1.0;
    CHECK_THROWS_AS(integrate_dopri5(rhs, 0.0, y0, std::vector<double>{1.0, 0.5},
                                     [](double, const DenseVector&) {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_dopri5(rhs, 0.0, y0, std::vector<double>{-1.0},
                                     [](double, const DenseVector&) {}),
                    std::invalid_argument);
}
