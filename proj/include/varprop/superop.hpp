#pragma once

#include "varprop/hermitian.hpp"
#include "varprop/moments.hpp"
#include "varprop/ode.hpp"
#include "varprop/types.hpp"

namespace varprop {

/// H = H0 + V with H0 the solvable part and V the perturbation.
struct PerturbationSplit {
  HermitianOperator h0;
  HermitianOperator v;

  PerturbationSplit(HermitianOperator h0_in, HermitianOperator v_in);
  int dim() const { return h0.dim(); }
};

/// First-order generator of the block-diagonalizing transform e^{-i[O, .]}.
/// first_order_residual measures the part of V coupling distinct H0
/// eigenspaces that survives i[O, H0] (zero up to roundoff for the
/// pseudoinverse construction); undecoupled_block_norm is the part of V
/// living inside H0 eigenspaces, which no first-order generator can remove.
struct Generator {
  HermitianOperator o;
  double first_order_residual = 0.0;
  double undecoupled_block_norm = 0.0;
};

/// O_ab = i V_ab / (E_a - E_b) in the H0 eigenbasis for non-degenerate
/// pairs, zero inside degenerate blocks (|E_a - E_b| <= tol * max(1, |H0|)).
Generator solve_generator(const PerturbationSplit& split, double degeneracy_tol = 1e-9);

/// Moments of the adjoint map O x 1 - 1 x O^T, computed from eigenvalue
/// differences: h[n] = (1/D^2) sum_ij (lambda_i - lambda_j)^n. The D^2
/// superoperator is never materialized. Odd orders vanish by antisymmetry.
struct SuperMomentTable {
  int max_order = 0;
  RealVector h;

  double operator[](int n) const { return h(n); }
  MomentTable as_moment_table() const { return MomentTable{max_order, h}; }
};
SuperMomentTable super_moments(const HermitianOperator& o, int max_order);
SuperMomentTable super_moments_from_eigenvalues(const RealVector& eigenvalues, int max_order);

struct DownfoldCoefficients {
  Complex c0, c1, c2;
};

/// Endpoint of the variational coefficient flow for the super-moment table,
/// evolved to time 1 (so that sum_j c_j [O, .]^j approximates e^{-i[O, .]}).
DownfoldCoefficients downfold_coefficients(const SuperMomentTable& sm,
                                           const OdeSolverConfig& cfg);

struct DownfoldResult {
  DownfoldCoefficients coefficients;
  HermitianOperator h_effective;
  Matrix projector_basis;
  /// Max-abs asymmetry of the projected block before symmetrization.
  double asymmetry = 0.0;
};

/// Assembles c0 (H0+V) + c1 [O, H0+V] + c2 [O, [O, H0+V]] and projects onto
/// the subspace spanned by the orthonormal columns of projector_basis.
DownfoldResult effective_hamiltonian(const PerturbationSplit& split, const Generator& gen,
                                     const DownfoldCoefficients& c,
                                     const Matrix& projector_basis);

/// Baseline second order: P^dag (H0 - (i/2)[O, V]) P.
HermitianOperator standard_second_order(const PerturbationSplit& split, const Generator& gen,
                                        const Matrix& projector_basis);

}  // namespace varprop
