// Compares the serial reference integrators against the OpenMP kernels on
// a representative rank-2 workload and checks that the two paths agree bit
// for bit (the partial results are reduced in a fixed order, so thread
// scheduling must not change any output).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include <omp.h>

#include "volent/catalog.hpp"
#include "volent/verify.hpp"

using volent::verify::Exec;
using volent::verify::LogEstimate;

namespace {

template <typename F>
double time_ms(F&& run) {
    const auto begin = std::chrono::steady_clock::now();
    run();
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - begin).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int64_t samples = 4'000'000;
    if (argc > 1) samples = std::stoll(argv[1]);

    const auto domain = volent::catalog::ProductSpec{volent::catalog::type_iii(2)};
    std::printf("domain III:2, %d OpenMP threads\n", omp_get_max_threads());

    {
        const volent::verify::Method method = volent::verify::MonteCarlo{samples, 7};
        LogEstimate serial, parallel;
        const double serial_ms = time_ms([&] {
            serial = volent::verify::log_ball_volume(domain, 8.0, method, Exec::Serial);
        });
        const double parallel_ms = time_ms([&] {
            parallel = volent::verify::log_ball_volume(domain, 8.0, method, Exec::Parallel);
        });
        report(("monte carlo (" + std::to_string(samples) + ")").c_str(), serial_ms,
               parallel_ms, serial.log_value == parallel.log_value);
    }

    {
        const volent::verify::Method method = volent::verify::Quadrature{0.05, 24};
        LogEstimate serial, parallel;
        const double serial_ms = time_ms([&] {
            serial = volent::verify::log_ball_volume(domain, 8.0, method, Exec::Serial);
        });
        const double parallel_ms = time_ms([&] {
            parallel = volent::verify::log_ball_volume(domain, 8.0, method, Exec::Parallel);
        });
        report("quadrature (0.05, 24pt)", serial_ms, parallel_ms,
               serial.log_value == parallel.log_value);
    }

    return 0;
}
