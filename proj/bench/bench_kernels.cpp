// Times each OpenMP kernel against its serial twin.
// Usage: bench_kernels [threads]

#include "cqed/kernels.hpp"
#include "cqed/liouvillian.hpp"
#include "cqed/model.hpp"
#include "cqed/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

using namespace cqed;
using kernels::cplx;

namespace {

double time_best(const std::function<void()>& body, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void row(const char* name, double parallel, double serial) {
    std::printf("%-12s parallel %10.3e s  serial %10.3e s  speedup %.2f\n", name, parallel, serial,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) kernels::set_threads(std::atoi(argv[1]));
    std::printf("threads %d\n", kernels::max_threads());

    ModelParams p;
    p.n_max = 10;
    const kernels::CsrMatrix l = assemble(build_liouvillian_spec(p)).matrix();
    const auto n = static_cast<std::size_t>(l.cols());
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    std::vector<cplx> x(n), y(n), err(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {normal(rng), normal(rng)};
        err[i] = 1e-6 * cplx(normal(rng), normal(rng));
    }

    row("spmv", time_best([&] { kernels::spmv(l, x, y); }, 50),
        time_best([&] { kernels::spmv_serial(l, x, y); }, 50));

    volatile double sink = 0.0;
    row("scaled_rms", time_best([&] { sink = kernels::scaled_rms(err, x, y, 1e-8, 1e-10); }, 200),
        time_best([&] { sink = kernels::scaled_rms_serial(err, x, y, 1e-8, 1e-10); }, 200));

    SweepConfig c;
    c.base.variant = Variant::CascadedJC;
    c.base.n_max = 6;
    c.grid = linear_grid(-10.0, 10.0, 16);
    c.check_truncation = false;
    row("run_sweep", time_best([&] { run_sweep(c); }, 2), time_best([&] { run_sweep_serial(c); }, 2));
    return 0;
}
