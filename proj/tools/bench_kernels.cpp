// Benchmark: parallel kernels vs their serial reference implementations.
// Prints wall-clock times, speedups, and the max deviation between the two
// routes so regressions in either speed or agreement are visible.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "spinframe/fidelity.hpp"
#include "spinframe/ref.hpp"
#include "spinframe/signature.hpp"
#include "spinframe/symmetry.hpp"

using namespace spinframe;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

double sig_deviation(const FidelitySignature& a, const FidelitySignature& b) {
    double worst = 0.0;
    auto it = b.entries().begin();
    for (const auto& [key, value] : a.entries()) {
        worst = std::max(worst, std::abs(value - it->second));
        ++it;
    }
    return worst;
}

void bench_signature(int num_spins, const PairFamily& family, const char* label) {
    auto state = haar_random_state(num_spins, 1000 + num_spins);

    double t0 = now_seconds();
    auto parallel = signature(state, family, Convention::SquareRoot);
    double t_par = now_seconds() - t0;

    t0 = now_seconds();
    auto serial = ref::signature_serial(state, family, Convention::SquareRoot);
    double t_ser = now_seconds() - t0;

    std::printf("%-28s N=%2d pairs=%5zu  serial %8.3f ms  parallel %8.3f ms  "
                "speedup %5.2fx  max dev %.3e\n",
                label, num_spins, parallel.entries().size(), t_ser * 1e3, t_par * 1e3,
                t_ser / t_par, sig_deviation(parallel, serial));
}

void bench_povm_oracle(int resolution) {
    auto rho = reduce(haar_random_state(2, 42), SubsystemSpec({1}));
    auto sigma = reduce(haar_random_state(2, 43), SubsystemSpec({1}));
    double closed = fidelity(rho, sigma);

    double t0 = now_seconds();
    double grid = fidelity_povm_oracle(rho, sigma, resolution);
    double elapsed = now_seconds() - t0;

    std::printf("povm oracle R=%-5d               %33.3f ms  gap vs closed form "
                "%.3e\n",
                resolution, elapsed * 1e3, grid - closed);
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());

    bench_signature(8, PairFamily::single_spin(), "signature single-spin");
    bench_signature(10, PairFamily::single_spin(), "signature single-spin");
    bench_signature(8, PairFamily::sorted_subsets(2, true), "signature subsets k=2");
    bench_signature(10, PairFamily::sorted_subsets(2, true), "signature subsets k=2");
    bench_signature(7, PairFamily::ordered_tuples(3, true, 200000),
                    "signature tuples k=3");

    std::printf("\n");
    bench_povm_oracle(200);
    bench_povm_oracle(1000);
    bench_povm_oracle(4000);
    return 0;
}
