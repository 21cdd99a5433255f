// Serial reference vs OpenMP kernels: wall time and bitwise agreement.

#include <omp.h>

#include <cstdio>
#include <random>
#include <vector>

#include "qfd/fracdiff.hpp"
#include "qfd/kernels.hpp"

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

} // namespace

int main() {
    namespace k = qfd::kernels;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::printf("threads: %d\n", omp_get_max_threads());

    const std::size_t n = 4096;
    const qfd::CoeffStream c = qfd::forward_coeffs(0.5, qfd::QParam(0.5), n - 1);
    std::vector<double> x(n), ys(n), yp(n);
    for (double& v : x) {
        v = u(rng);
    }
    const double ts = best_of(5, [&] { k::serial::lower_toeplitz_apply(c.coeffs(), x, ys); });
    const double tp = best_of(5, [&] { k::omp::lower_toeplitz_apply(c.coeffs(), x, yp); });
    std::printf("toeplitz_apply   N=%zu  serial %.4fs  omp %.4fs  speedup %.2f  identical %s\n", n, ts, tp, ts / tp,
                ys == yp ? "yes" : "no");

    const std::size_t r = 20;
    std::vector<double> e(r * 24);
    for (double& v : e) {
        v = u(rng);
    }
    const qfd::MatrixWindow m(r, 24, e);
    k::SubsetSupResult rs, rp;
    const double ss = best_of(1, [&] { rs = k::serial::subset_sup(m, 1.0, k::SubsetMode::SumOverColsOfAbsColSum, r); });
    const double sp = best_of(1, [&] { rp = k::omp::subset_sup(m, 1.0, k::SubsetMode::SumOverColsOfAbsColSum, r); });
    std::printf("subset_sup       r=%zu   serial %.4fs  omp %.4fs  speedup %.2f  identical %s\n", r, ss, sp, ss / sp,
                rs.value == rp.value && rs.witness == rp.witness ? "yes" : "no");
    return 0;
}
