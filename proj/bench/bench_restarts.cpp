// Wall-clock comparison of serial and OpenMP optimizer restarts.
// Usage: bench_restarts [restarts] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "gme/search.hpp"

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    gme::SearchConfig cfg;
    cfg.restarts = argc > 1 ? std::atoi(argv[1]) : 64;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
    const auto rho = gme::noisy_w(0.95);

    std::printf("threads %d, restarts %d, repeats %d\n", omp_get_max_threads(), cfg.restarts, repeats);
    for (auto objective : {gme::Objective::mermin, gme::Objective::svetlichny}) {
        double serial = 0.0, parallel = 0.0;
        gme::SearchResult a, b;
        for (int r = 0; r < repeats; ++r) {
            serial += seconds([&] { a = gme::maximize_witness_serial(rho, objective, cfg); });
            parallel += seconds([&] { b = gme::maximize_witness(rho, objective, cfg); });
        }
        std::printf("%-10s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  identical %s\n",
                    objective == gme::Objective::mermin ? "mermin" : "svetlichny", serial / repeats,
                    parallel / repeats, serial / parallel, a.best_value == b.best_value && a.trace == b.trace ? "yes" : "no");
    }
}
