#pragma once

#include <string>

#include "varprop/types.hpp"

namespace varprop {

/// Dense complex Hermitian matrix. Construction symmetrizes (A + A^dag)/2;
/// inputs whose asymmetry exceeds 1e-8 * max(1, |A|_max) are rejected instead
/// of silently repaired.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// Eigendecomposition of a Hermitian operator. Eigenvalues ascending,
/// eigenvector columns unitary.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

enum class Method {
  kExact,
  kTaylor,
  kKpm,
  kVariational,
  kVariationalClosedForm,
  kResidualAction,
};

std::string method_name(Method m);

/// A (possibly approximate) time-evolution operator at a single time.
struct PropagatorMatrix {
  Matrix entries;
  double time = 0.0;
  Method method = Method::kExact;

  int dim() const { return static_cast<int>(entries.rows()); }
};

Spectrum eigendecompose(const HermitianOperator& h);

/// Largest |eigenvalue| (the operator norm of a Hermitian matrix).
double operator_norm(const HermitianOperator& h);
double operator_norm(const Spectrum& s);

/// U(t) = V exp(-i Lambda t) V^dag.
PropagatorMatrix exact_propagator(const HermitianOperator& h, double t);
PropagatorMatrix exact_propagator(const Spectrum& s, double t);

/// |Ua - Ub|_Frob / (2 sqrt(D)); lies in [0, 1] when both arguments are
/// unitary, but truncated approximants may exceed 1 and are reported raw.
double l2_distance(const PropagatorMatrix& a, const PropagatorMatrix& b);
double l2_distance(const Matrix& a, const Matrix& b);

}  // namespace varprop
