#pragma once

#include <span>
#include <vector>

#include "varprop/hermitian.hpp"
#include "varprop/moments.hpp"
#include "varprop/ode.hpp"
#include "varprop/types.hpp"

namespace varprop {

/// Time-sampled coefficients c_j(t) of the polynomial family
/// U(t) = sum_{j=0}^{n_star} c_j(t) H^j. Row k holds the coefficients at
/// times[k]; the row at t = 0 is (1, 0, ..., 0).
struct CoefficientTrajectory {
  int n_star = 0;
  std::vector<double> times;
  Matrix coeffs;  // times.size() x (n_star + 1)
  Method method = Method::kVariational;
};

/// Truncated Taylor series sum_{n<=order} (-iHt)^n / n!.
PropagatorMatrix taylor_propagator(const HermitianOperator& h, double t, int order);

/// Order-2 Chebyshev expansion of exp(-i x tau) with Bessel-function
/// coefficients, evaluated at x = H/|H| and tau = t |H|. Returns the
/// coefficients (c0, c1, c2) in powers of H (not of x).
std::array<Complex, 3> kpm_coefficients(double t, double norm);
PropagatorMatrix kpm_propagator(const HermitianOperator& h, double t);
PropagatorMatrix kpm_propagator(const Spectrum& s, double t);

/// Solves the coefficient equations G c' = -i A c with G[l][k] = h[l+k] and
/// A[l][k] = h[l+k+1], c(0) = (1, 0, ..., 0), by adaptive Runge-Kutta.
/// The system is solved in the variable H/sqrt(h2) for conditioning; a
/// singular G (exactly representable evolution) is handled by the
/// minimum-norm pseudoinverse, which leaves the assembled operator unchanged.
/// Requires m.max_order >= 2 n_star + 1 and t_grid starting at 0.
CoefficientTrajectory variational_coefficients(const MomentTable& m, int n_star,
                                               std::span<const double> t_grid,
                                               const OdeSolverConfig& cfg);

std::vector<PropagatorMatrix> variational_propagator(const HermitianOperator& h,
                                                     std::span<const double> t_grid, int n_star,
                                                     const OdeSolverConfig& cfg);

/// Closed-form approximation c0 = 1, c1 = -it + c13 t^3 + c14 t^4,
/// c2 = -t^2/2 + c23 t^3 + c24 t^4 with moment-ratio prefactors. Throws
/// DegenerateMoments when |h1 h3 - h2^2| < 1e-12 max(1, h2^2).
struct ClosedFormCoefficients {
  Complex c0, c1, c2;
};
ClosedFormCoefficients closed_form_coefficients(const MomentTable& m, double t);
PropagatorMatrix closed_form_propagator(const HermitianOperator& h, double t);

/// Least-squares minimizer of the action integral of
/// tr[(i dU/dt - H U)(i dU/dt - H U)^dag] over polynomial-coefficient
/// trajectories with c(0) = (1, 0, ..., 0). The trajectory is expanded in a
/// global Chebyshev basis and the residual is collocated on a Gauss-Legendre
/// grid of at least 64 points per unit normalized time; the trace reduces
/// every term to moments, so no matrix of dimension dim(H) is touched.
/// action_value is the achieved integral in the rescaled variable
/// (normalized trace, x = H/sqrt(h2)).
struct ResidualActionSolution {
  CoefficientTrajectory trajectory;
  double action_value = 0.0;
};
ResidualActionSolution residual_action_coefficients(const MomentTable& m, int n_star,
                                                    std::span<const double> t_grid,
                                                    const OdeSolverConfig& cfg);

std::vector<PropagatorMatrix> residual_action_propagator(const HermitianOperator& h,
                                                         std::span<const double> t_grid,
                                                         int n_star,
                                                         const OdeSolverConfig& cfg);

/// sum_j coeffs[j] H^j.
Matrix assemble_polynomial(const Matrix& h, std::span<const Complex> coeffs);

/// P(lambda_i) for every eigenvalue: the propagator polynomial evaluated in
/// the eigenbasis, enough to compute any Frobenius distance between
/// approximants of the same H.
Vector evaluate_polynomial(const RealVector& eigenvalues, std::span<const Complex> coeffs);

}  // namespace varprop
