#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "varprop/hermitian.hpp"
#include "varprop/propagators.hpp"

using namespace varprop;
using testutil::max_abs;
using testutil::pauli;

TEST_CASE("construction symmetrizes small asymmetry and rejects large") {
  Matrix a(2, 2);
  a << 1.0, Complex(0.5, 1e-10), Complex(0.5, -1e-10) + Complex(1e-10, 0), 2.0;
  const HermitianOperator h(a);
  REQUIRE(max_abs(h.entries() - h.entries().adjoint()) == 0.0);

  Matrix bad(2, 2);
  bad << 1.0, 1.0, -1.0, 1.0;
  REQUIRE_THROWS_AS(HermitianOperator(bad), std::invalid_argument);

  REQUIRE_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("eigendecompose on diagonal and pauli matrices") {
  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, -1.0;
  const Spectrum s = eigendecompose(HermitianOperator(d));
  REQUIRE(s.eigenvalues(0) == Catch::Approx(-1.0));
  REQUIRE(s.eigenvalues(1) == Catch::Approx(2.0));

  const Spectrum s1 = eigendecompose(HermitianOperator(pauli(1)));
  REQUIRE(s1.eigenvalues(0) == Catch::Approx(-1.0));
  REQUIRE(s1.eigenvalues(1) == Catch::Approx(1.0));
}

TEST_CASE("eigendecomposition residual and unitarity on random draws") {
  for (const int dim : {2, 5, 10}) {
    const HermitianOperator h = testutil::random_hermitian(dim, 100 + dim);
    const Spectrum s = eigendecompose(h);
    for (int k = 1; k < dim; ++k) REQUIRE(s.eigenvalues(k) >= s.eigenvalues(k - 1));
    const double vtv =
        max_abs(s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(dim, dim));
    REQUIRE(vtv < 1e-10);
    const Matrix lhs = h.entries() * s.eigenvectors;
    const Matrix rhs = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal();
    REQUIRE((lhs - rhs).norm() <= 1e-9 * h.entries().norm());
  }
}

TEST_CASE("operator norm") {
  REQUIRE(operator_norm(HermitianOperator(pauli(3))) == Catch::Approx(1.0));
  Matrix d(2, 2);
  d << -3.0, 0.0, 0.0, 2.0;
  REQUIRE(operator_norm(HermitianOperator(d)) == Catch::Approx(3.0));
  REQUIRE(operator_norm(HermitianOperator(Matrix::Zero(3, 3))) == 0.0);
}

TEST_CASE("exact propagator basics") {
  const HermitianOperator h = testutil::random_hermitian(4, 7);
  const PropagatorMatrix u0 = exact_propagator(h, 0.0);
  REQUIRE(max_abs(u0.entries - Matrix::Identity(4, 4)) < 1e-14);

  const PropagatorMatrix upi = exact_propagator(HermitianOperator(pauli(3)), std::numbers::pi);
  Matrix expected = -Matrix::Identity(2, 2);
  REQUIRE(max_abs(upi.entries - expected) < 1e-12);
}

TEST_CASE("exact propagator is unitary and composes") {
  for (const int dim : {2, 3, 6, 10}) {
    const HermitianOperator h = testutil::random_hermitian(dim, 40 + dim);
    const Spectrum s = eigendecompose(h);
    const double t1 = 0.37, t2 = 1.21;
    const Matrix u1 = exact_propagator(s, t1).entries;
    const Matrix u2 = exact_propagator(s, t2).entries;
    const Matrix u12 = exact_propagator(s, t1 + t2).entries;
    REQUIRE(max_abs(u1 * u1.adjoint() - Matrix::Identity(dim, dim)) < 1e-10);
    REQUIRE(max_abs(u1 * u2 - u12) < 1e-9);
  }
}

TEST_CASE("l2 distance basics") {
  const HermitianOperator h = testutil::random_hermitian(5, 11);
  const PropagatorMatrix u = exact_propagator(h, 0.8);
  REQUIRE(l2_distance(u, u) == 0.0);
  PropagatorMatrix minus = u;
  minus.entries = -u.entries;
  REQUIRE(l2_distance(u, minus) == Catch::Approx(1.0));

  PropagatorMatrix wrong_dim{Matrix::Identity(4, 4), 0.0, Method::kExact};
  REQUIRE_THROWS_AS(l2_distance(u, wrong_dim), std::invalid_argument);
}

TEST_CASE("taylor order-2 error grows as t^3 with the series prefactor") {
  const HermitianOperator h = testutil::random_hermitian(5, 21);
  const Spectrum s = eigendecompose(h);
  const double norm = operator_norm(s);
  // Leading deviation of the order-2 series is (-it)^3 H^3 / 6; the cubic
  // power is formed by explicit matrix products, independent of the
  // eigensolver route.
  const Matrix h3 = h.entries() * h.entries() * h.entries();
  for (const double tau : {1e-2, 1e-3}) {
    const double t = tau / norm;
    const double l2 = l2_distance(exact_propagator(s, t), taylor_propagator(h, t, 2));
    const double predicted = std::pow(t, 3) * h3.norm() / (6.0 * 2.0 * std::sqrt(5.0));
    REQUIRE(l2 / predicted == Catch::Approx(1.0).margin(0.05));
  }
}

TEST_CASE("l2 against exact is invariant under a common basis change") {
  const HermitianOperator h = testutil::random_hermitian(4, 33);
  const Matrix q = eigendecompose(testutil::random_hermitian(4, 44)).eigenvectors;
  const HermitianOperator h_rot(q * h.entries() * q.adjoint());

  const double t = 0.9;
  const double base = l2_distance(exact_propagator(h, t), taylor_propagator(h, t, 2));
  const double rotated =
      l2_distance(exact_propagator(h_rot, t), taylor_propagator(h_rot, t, 2));
  REQUIRE(base == Catch::Approx(rotated).epsilon(1e-10));
}
