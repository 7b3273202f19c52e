#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "varprop/hermitian.hpp"
#include "varprop/ode.hpp"
#include "varprop/types.hpp"

namespace varprop {

/// Deterministic stream splitter: sample s of run seed drives its own RNG,
/// so ensembles are reproducible and order-independent.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

/// GUE draw (M + M^dag)/2 with i.i.d. standard complex Gaussian entries.
/// Fully specified by the seed: raw mt19937_64 output is mapped to normal
/// deviates by an explicit Box-Muller, so the bytes never depend on the
/// standard library's distribution implementation.
Matrix gue_sample(int dim, std::uint64_t seed);

struct EvolutionConfig {
  int dim = 5;
  int samples = 100;
  std::uint64_t seed = 0;
  double t_max = 2.0;   // in units of t |H|
  int grid_points = 100;
  std::vector<Method> methods = {Method::kTaylor, Method::kKpm, Method::kVariational,
                                 Method::kVariationalClosedForm, Method::kResidualAction};
  int taylor_order = 2;
  int n_star = 2;
  OdeSolverConfig ode;
  int threads = 0;
};

/// Distances per sample and normalized-time grid point. Every requested
/// approximant of exp(-iHt) is a polynomial in H, so each distance is
/// evaluated in the eigenbasis of H from eigenvalues alone.
struct EvolutionCurves {
  std::vector<double> t_norm;
  std::map<Method, RealMatrix> l2;  // samples x grid
  /// Pairwise distance between the closed-form and flow-solved coefficients
  /// (filled when both methods are requested).
  RealMatrix closed_vs_ode;
};

EvolutionCurves evolution_curves(const EvolutionConfig& cfg);

/// Plain-loop reference with identical per-sample arithmetic; kept as the
/// comparison point for the parallel path.
EvolutionCurves evolution_curves_serial(const EvolutionConfig& cfg);

struct BenchRecord {
  Method method;
  int dim;
  double t_norm;
  double l2_mean;
  double l2_std;
  int n;
};

std::vector<BenchRecord> aggregate_records(const EvolutionCurves& curves, int dim);

}  // namespace varprop
