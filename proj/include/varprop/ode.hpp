#pragma once

#include <span>
#include <vector>

#include "varprop/types.hpp"

namespace varprop {

struct OdeSolverConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Relative singular-value cutoff for the mass-matrix pseudoinverse.
  double pseudoinverse_cutoff = 1e-10;
  long max_steps = 1000000;

  void validate() const;
};

/// Integrates the linear system y' = A y with adaptive Dormand-Prince 5(4)
/// and returns y at every point of t_grid (which must start at 0 and be
/// strictly increasing). One row per grid point.
Matrix integrate_linear(const Matrix& a, const Vector& y0, std::span<const double> t_grid,
                        const OdeSolverConfig& cfg);

/// Minimum-norm least-squares solve via SVD with a relative cutoff.
RealMatrix pseudoinverse_solve(const RealMatrix& a, const RealMatrix& b, double rel_cutoff);

}  // namespace varprop
