#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "varprop/ensemble.hpp"

using namespace varprop;

TEST_CASE("gue samples are hermitian and reproducible") {
  const Matrix a = gue_sample(6, 42);
  const Matrix b = gue_sample(6, 42);
  const Matrix c = gue_sample(6, 43);
  REQUIRE((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE((a - b).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((a - c).cwiseAbs().maxCoeff() > 0.0);
  REQUIRE(sub_seed(1, 0) != sub_seed(1, 1));
  REQUIRE(sub_seed(1, 0) != sub_seed(2, 0));
}

TEST_CASE("parallel ensemble equals the serial reference bitwise") {
  EvolutionConfig cfg;
  cfg.dim = 5;
  cfg.samples = 12;
  cfg.seed = 7;
  cfg.grid_points = 25;
  cfg.threads = 4;
  const EvolutionCurves parallel = evolution_curves(cfg);
  const EvolutionCurves serial = evolution_curves_serial(cfg);
  REQUIRE(parallel.l2.size() == serial.l2.size());
  for (const auto& [method, matrix] : parallel.l2) {
    REQUIRE((matrix.array() == serial.l2.at(method).array()).all());
  }
  REQUIRE((parallel.closed_vs_ode.array() == serial.closed_vs_ode.array()).all());
}

TEST_CASE("curve ordering on a small ensemble") {
  EvolutionConfig cfg;
  cfg.dim = 5;
  cfg.samples = 20;
  cfg.seed = 1234;
  cfg.grid_points = 41;
  const EvolutionCurves curves = evolution_curves(cfg);
  const auto mean_at = [&](Method m, int k) {
    return curves.l2.at(m).col(k).mean();
  };
  for (int k = 0; k < 41; ++k) {
    if (curves.t_norm[k] < 0.2) continue;
    REQUIRE(mean_at(Method::kVariational, k) <= mean_at(Method::kTaylor, k));
  }
  // The Chebyshev expansion also beats the bare series at the end of the
  // reliability window.
  REQUIRE(mean_at(Method::kKpm, 40) < mean_at(Method::kTaylor, 40));
  // All approximants start exact.
  for (const auto& [method, matrix] : curves.l2) {
    REQUIRE(matrix.col(0).maxCoeff() < 1e-12);
  }
}

TEST_CASE("records aggregate sample statistics") {
  EvolutionConfig cfg;
  cfg.dim = 3;
  cfg.samples = 5;
  cfg.seed = 99;
  cfg.grid_points = 11;
  cfg.methods = {Method::kTaylor};
  const EvolutionCurves curves = evolution_curves(cfg);
  const auto records = aggregate_records(curves, cfg.dim);
  REQUIRE(records.size() == 11);
  for (const auto& r : records) {
    REQUIRE(r.n == 5);
    REQUIRE(r.dim == 3);
    REQUIRE(r.l2_mean >= 0.0);
    REQUIRE(r.l2_std >= 0.0);
  }
}
