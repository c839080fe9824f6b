// bench_sweep.cpp - serial vs OpenMP membership sweeps on the gallery machines
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wk/lang.hpp"
#include "wk/transform.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f, int repeat) {
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        auto t0 = Clock::now();
        f();
        auto t1 = Clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (ms < best) best = ms;
    }
    return best;
}

void bench(const char* label, const wk::TwoWayMachine& m, std::size_t max_len, int repeat) {
    const auto words = wk::enumerate_words(m.alphabet, max_len);
    std::vector<char> serial, parallel;
    double ts = time_ms([&] { serial = wk::sweep_membership_serial(m, words); }, repeat);
    double tp = time_ms([&] { parallel = wk::sweep_membership_parallel(m, words); }, repeat);
    const char* match = serial == parallel ? "ok" : "MISMATCH";
    std::printf("%-14s %6zu words  serial %8.2f ms  parallel %8.2f ms  speedup %.2fx  %s\n",
                label, words.size(), ts, tp, ts / tp, match);
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t max_len = 9;
    int repeat = 3;
    if (argc > 1) max_len = static_cast<std::size_t>(std::stoul(argv[1]));
    if (argc > 2) repeat = std::stoi(argv[2]);

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    const auto ww = wk::gallery_ww();
    bench("ww", ww, max_len, repeat);
    bench("ww-allfinal", wk::to_all_final(ww).machine, max_len, repeat);
    return 0;
}
