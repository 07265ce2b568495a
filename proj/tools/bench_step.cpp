#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsa/harness.hpp"

// Compares the serial reference step loop against the OpenMP per-agent loop
// on an enlarged flocking scenario and checks that both produce identical
// results.
int main() {
    dsa::Scenario s = dsa::demo_scenario("flocking", 1);
    s.n = 600;
    s.duration = 30.0;
    auto& ui = std::get<dsa::UniformInit>(s.init);
    ui.pos_min = {-550, -550};
    ui.pos_max = {550, 550};

    dsa::RunOptions serial{dsa::ExecMode::Serial, false};
    dsa::RunOptions parallel{dsa::ExecMode::Parallel, false};

    const auto a = dsa::run(s, serial);
    const auto b = dsa::run(s, parallel);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("agents: %d, steps: %d, threads: %d\n", s.n, a.steps, threads);
    std::printf("serial:   %.3f s\n", a.wall_time_s);
    std::printf("parallel: %.3f s  (speedup %.2fx)\n", b.wall_time_s,
                a.wall_time_s / b.wall_time_s);

    const bool match = a.min_pair_distance == b.min_pair_distance &&
                       a.violation_count == b.violation_count &&
                       a.mean_bc_fraction == b.mean_bc_fraction &&
                       a.switch_count == b.switch_count;
    std::printf("serial/parallel results identical: %s\n", match ? "yes" : "NO");
    return match ? 0 : 1;
}
