#include "varprop/superop.hpp"

#include <cmath>

#include "varprop/propagators.hpp"

namespace varprop {

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

void check_projector(const Matrix& basis, int dim) {
  if (basis.rows() != dim || basis.cols() < 1 || basis.cols() > dim) {
    throw std::invalid_argument("projector basis has wrong shape");
  }
  const Matrix overlap = basis.adjoint() * basis;
  const double err =
      (overlap - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) {
    throw std::invalid_argument("projector basis is not orthonormal (deviation " +
                                std::to_string(err) + ")");
  }
}

}  // namespace

PerturbationSplit::PerturbationSplit(HermitianOperator h0_in, HermitianOperator v_in)
    : h0(std::move(h0_in)), v(std::move(v_in)) {
  if (h0.dim() != v.dim()) {
    throw std::invalid_argument("PerturbationSplit: H0 and V dimensions differ");
  }
}

Generator solve_generator(const PerturbationSplit& split, double degeneracy_tol) {
  const Spectrum s = eigendecompose(split.h0);
  const int d = split.dim();
  const Matrix v_eig = s.eigenvectors.adjoint() * split.v.entries() * s.eigenvectors;
  const double scale = std::max(1.0, operator_norm(s));

  Matrix o_eig = Matrix::Zero(d, d);
  double block_norm_sq = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double gap = s.eigenvalues(a) - s.eigenvalues(b);
      if (std::abs(gap) > degeneracy_tol * scale) {
        o_eig(a, b) = kImag * v_eig(a, b) / gap;
      } else {
        block_norm_sq += std::norm(v_eig(a, b));
      }
    }
  }
  // Off-block residual of V - i[O, H0] in the eigenbasis: i[O, H0]_ab =
  // i O_ab (E_b - E_a), which cancels V_ab exactly where O_ab was set.
  double resid_sq = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double gap = s.eigenvalues(a) - s.eigenvalues(b);
      if (std::abs(gap) > degeneracy_tol * scale) {
        resid_sq += std::norm(v_eig(a, b) - kImag * o_eig(a, b) * (-gap));
      }
    }
  }
  Matrix o = s.eigenvectors * o_eig * s.eigenvectors.adjoint();
  return Generator{HermitianOperator(std::move(o)), std::sqrt(resid_sq),
                   std::sqrt(block_norm_sq)};
}

SuperMomentTable super_moments_from_eigenvalues(const RealVector& eigenvalues, int max_order) {
  if (max_order < 0) throw std::invalid_argument("super_moments: max_order must be >= 0");
  const int d = static_cast<int>(eigenvalues.size());
  RealVector h = RealVector::Zero(max_order + 1);
  h(0) = 1.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double diff = eigenvalues(i) - eigenvalues(j);
      double p = 1.0;
      for (int n = 1; n <= max_order; ++n) {
        p *= diff;
        h(n) += p;
      }
    }
  }
  const double d2 = static_cast<double>(d) * static_cast<double>(d);
  for (int n = 1; n <= max_order; ++n) h(n) /= d2;
  // Odd orders are exact zeros of the antisymmetric difference set; clear
  // the accumulated roundoff.
  for (int n = 1; n <= max_order; n += 2) h(n) = 0.0;
  return SuperMomentTable{max_order, std::move(h)};
}

SuperMomentTable super_moments(const HermitianOperator& o, int max_order) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(o.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("super_moments: eigensolver failed");
  }
  return super_moments_from_eigenvalues(solver.eigenvalues(), max_order);
}

DownfoldCoefficients downfold_coefficients(const SuperMomentTable& sm,
                                           const OdeSolverConfig& cfg) {
  if (sm.max_order < 5) {
    throw std::invalid_argument("downfold_coefficients: need super moments up to order 5");
  }
  const std::array<double, 2> grid{0.0, 1.0};
  const CoefficientTrajectory traj =
      variational_coefficients(sm.as_moment_table(), 2, grid, cfg);
  return DownfoldCoefficients{traj.coeffs(1, 0), traj.coeffs(1, 1), traj.coeffs(1, 2)};
}

DownfoldResult effective_hamiltonian(const PerturbationSplit& split, const Generator& gen,
                                     const DownfoldCoefficients& c,
                                     const Matrix& projector_basis) {
  check_projector(projector_basis, split.dim());
  const Matrix h = split.h0.entries() + split.v.entries();
  const Matrix& o = gen.o.entries();
  const Matrix c1 = commutator(o, h);
  const Matrix c2 = commutator(o, c1);
  const Matrix full = c.c0 * h + c.c1 * c1 + c.c2 * c2;
  const Matrix projected = projector_basis.adjoint() * full * projector_basis;
  const double asym = (projected - projected.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * std::max(1.0, projected.cwiseAbs().maxCoeff())) {
    throw NumericalError("effective_hamiltonian: projected block is not Hermitian");
  }
  return DownfoldResult{c, HermitianOperator(projected), projector_basis, asym};
}

HermitianOperator standard_second_order(const PerturbationSplit& split, const Generator& gen,
                                        const Matrix& projector_basis) {
  check_projector(projector_basis, split.dim());
  const Matrix full =
      split.h0.entries() -
      kImag / 2.0 * commutator(gen.o.entries(), split.v.entries());
  return HermitianOperator(projector_basis.adjoint() * full * projector_basis);
}

}  // namespace varprop
