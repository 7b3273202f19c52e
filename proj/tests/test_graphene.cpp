#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "varprop/graphene.hpp"

using namespace varprop;
using testutil::max_abs;

TEST_CASE("flat bands span the stated vectors and V vanishes at p = 0") {
  GrapheneParams p;
  p.gamma = 2.0;
  p.p1 = 0.3;
  p.p2 = -0.4;
  const PerturbationSplit split = graphene_hamiltonians(p);
  Vector e1 = Vector::Zero(4), e2 = Vector::Zero(4);
  e1(1) = 1.0;
  e2(2) = 1.0;
  REQUIRE((split.h0.entries() * e1).norm() == 0.0);
  REQUIRE((split.h0.entries() * e2).norm() == 0.0);

  GrapheneParams origin;
  REQUIRE(max_abs(graphene_hamiltonians(origin).v.entries()) == 0.0);

  GrapheneParams bad;
  bad.gamma = 0.0;
  REQUIRE_THROWS_AS(graphene_hamiltonians(bad), std::invalid_argument);
}

TEST_CASE("full spectrum is symmetric about zero") {
  GrapheneParams p;
  p.p1 = 0.7;
  p.p2 = 0.2;
  const PerturbationSplit split = graphene_hamiltonians(p);
  const Spectrum s =
      eigendecompose(HermitianOperator(split.h0.entries() + split.v.entries()));
  REQUIRE(s.eigenvalues(0) == Catch::Approx(-s.eigenvalues(3)));
  REQUIRE(s.eigenvalues(1) == Catch::Approx(-s.eigenvalues(2)));
}

TEST_CASE("improved block reduces to the plain one as p goes to zero") {
  GrapheneParams p;
  p.p2 = 1e-6;
  const Matrix h2 = graphene_h2(p);
  const Matrix h2v = graphene_h2_improved(p);
  REQUIRE(max_abs(h2v - h2) < 1e-11);
}

TEST_CASE("sweep matches the generic downfolding at every grid point") {
  GrapheneSweepConfig cfg;
  cfg.points = 12;
  cfg.p_min = 0.05;
  cfg.p_max = 1.0;
  cfg.convention = PmConvention::kComplex;
  const GrapheneSweepResult sweep = graphene_sweep(cfg);
  REQUIRE(sweep.points.size() == 12);
  for (const auto& point : sweep.points) {
    REQUIRE(point.valid);
    GrapheneParams gp;
    gp.p2 = point.p;
    gp.pm_convention = PmConvention::kComplex;
    const PerturbationSplit split = graphene_hamiltonians(gp);
    const Generator gen = solve_generator(split);
    const DownfoldCoefficients c = downfold_coefficients(super_moments(gen.o, 5), {});
    const Matrix block =
        effective_hamiltonian(split, gen, c, graphene_low_energy_basis()).h_effective.entries();
    REQUIRE(max_abs(block - graphene_h2_improved(gp)) < 1e-9);
  }
}

TEST_CASE("improved mismatch beats the plain one at moderate momentum") {
  GrapheneSweepConfig cfg;
  cfg.points = 20;
  cfg.p_min = 0.05;
  cfg.p_max = 0.6;
  const GrapheneSweepResult sweep = graphene_sweep(cfg);
  for (const auto& point : sweep.points) {
    REQUIRE(point.delta_var < point.delta_std);
  }
}

TEST_CASE("axis choice does not change the mismatch curves") {
  GrapheneSweepConfig along_p2;
  along_p2.points = 9;
  GrapheneSweepConfig along_p1 = along_p2;
  along_p1.axis = SweepAxis::kP1;
  const GrapheneSweepResult a = graphene_sweep(along_p2);
  const GrapheneSweepResult b = graphene_sweep(along_p1);
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    REQUIRE(std::abs(a.points[k].delta_std - b.points[k].delta_std) < 1e-9);
    REQUIRE(std::abs(a.points[k].delta_var - b.points[k].delta_var) < 1e-9);
  }
}

TEST_CASE("both momentum conventions agree on the sweep axes") {
  GrapheneSweepConfig printed;
  printed.points = 7;
  GrapheneSweepConfig complex_convention = printed;
  complex_convention.convention = PmConvention::kComplex;
  const GrapheneSweepResult a = graphene_sweep(printed);
  const GrapheneSweepResult b = graphene_sweep(complex_convention);
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    REQUIRE(a.points[k].delta_std == Catch::Approx(b.points[k].delta_std).margin(1e-12));
    REQUIRE(a.points[k].delta_var == Catch::Approx(b.points[k].delta_var).margin(1e-12));
  }
}

TEST_CASE("sweep output is independent of the thread count") {
  GrapheneSweepConfig cfg;
  cfg.points = 15;
  cfg.threads = 1;
  const GrapheneSweepResult serial = graphene_sweep(cfg);
  cfg.threads = 4;
  const GrapheneSweepResult parallel = graphene_sweep(cfg);
  for (std::size_t k = 0; k < serial.points.size(); ++k) {
    REQUIRE(serial.points[k].delta_std == parallel.points[k].delta_std);
    REQUIRE(serial.points[k].delta_var == parallel.points[k].delta_var);
  }
}
