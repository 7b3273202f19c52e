#pragma once

#include "varprop/hermitian.hpp"
#include "varprop/types.hpp"

namespace varprop {

/// Normalized spectral moments h[n] = tr(H^n)/D for n = 0..max_order.
/// Real for Hermitian input; h[0] == 1 and even orders are nonnegative.
struct MomentTable {
  int max_order = 0;
  RealVector h;

  double operator[](int n) const { return h(n); }
};

/// Moments from eigenvalues, h[n] = (1/D) sum_i lambda_i^n. Avoids repeated
/// matrix products, so one decomposition serves moments, norm and exact U.
MomentTable moments_from_eigenvalues(const RealVector& eigenvalues, int max_order);
MomentTable moments(const Spectrum& s, int max_order);
MomentTable moments(const HermitianOperator& h, int max_order);

/// Gram matrix of the monomial family {H^j}: G[j][k] = h[j+k], a Hankel
/// matrix, Hermitian and positive semidefinite. Requires max_order >= 2*n_star.
RealMatrix gram_tensor(const MomentTable& m, int n_star);

}  // namespace varprop
