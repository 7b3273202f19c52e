// Times the ensemble kernel: plain serial loop against the OpenMP path at a
// few thread counts, and checks that the aggregated numbers agree bitwise.

#include <chrono>
#include <cstdio>

#include "varprop/ensemble.hpp"

using namespace varprop;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
  return std::chrono::duration<double>(b - a).count();
}

bool identical(const EvolutionCurves& a, const EvolutionCurves& b) {
  for (const auto& [method, matrix] : a.l2) {
    const auto it = b.l2.find(method);
    if (it == b.l2.end()) return false;
    if ((matrix.array() != it->second.array()).any()) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  EvolutionConfig cfg;
  cfg.dim = argc > 1 ? std::atoi(argv[1]) : 48;
  cfg.samples = argc > 2 ? std::atoi(argv[2]) : 24;
  cfg.seed = 1234;
  cfg.grid_points = 60;

  auto t0 = std::chrono::steady_clock::now();
  const EvolutionCurves reference = evolution_curves_serial(cfg);
  auto t1 = std::chrono::steady_clock::now();
  const double serial_time = seconds(t0, t1);
  std::printf("dim=%d samples=%d\n", cfg.dim, cfg.samples);
  std::printf("%-18s %8.3f s\n", "serial reference", serial_time);

  for (const int threads : {1, 2, 4, 8}) {
    cfg.threads = threads;
    t0 = std::chrono::steady_clock::now();
    const EvolutionCurves curves = evolution_curves(cfg);
    t1 = std::chrono::steady_clock::now();
    const double elapsed = seconds(t0, t1);
    std::printf("openmp %2d threads  %8.3f s  speedup %5.2fx  %s\n", threads, elapsed,
                serial_time / elapsed, identical(reference, curves) ? "bitwise equal" : "MISMATCH");
    if (!identical(reference, curves)) return 1;
  }
  return 0;
}
