#include "varprop/hermitian.hpp"

#include <cmath>

namespace varprop {

HermitianOperator::HermitianOperator(Matrix entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix must be square with dim >= 1");
  }
  const double max_abs = entries.cwiseAbs().maxCoeff();
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * std::max(1.0, max_abs)) {
    throw std::invalid_argument("HermitianOperator: input is not Hermitian (asymmetry " +
                                std::to_string(asym) + ")");
  }
  entries_ = (entries + entries.adjoint()) / 2.0;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kExact: return "exact";
    case Method::kTaylor: return "taylor2";
    case Method::kKpm: return "kpm2";
    case Method::kVariational: return "variational";
    case Method::kVariationalClosedForm: return "closed_form";
    case Method::kResidualAction: return "residual_action";
  }
  return "unknown";
}

Spectrum eigendecompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecompose: solver failed to converge for dim " +
                         std::to_string(h.dim()));
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const Spectrum& s) {
  if (s.eigenvalues.size() == 0) return 0.0;
  return std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(s.dim() - 1)));
}

double operator_norm(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("operator_norm: eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

PropagatorMatrix exact_propagator(const Spectrum& s, double t) {
  Vector phases(s.dim());
  for (int k = 0; k < s.dim(); ++k) {
    phases(k) = std::exp(Complex(0.0, -s.eigenvalues(k) * t));
  }
  Matrix u = s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
  return PropagatorMatrix{std::move(u), t, Method::kExact};
}

PropagatorMatrix exact_propagator(const HermitianOperator& h, double t) {
  return exact_propagator(eigendecompose(h), t);
}

double l2_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("l2_distance: dimension mismatch");
  }
  return (a - b).norm() / (2.0 * std::sqrt(static_cast<double>(a.rows())));
}

double l2_distance(const PropagatorMatrix& a, const PropagatorMatrix& b) {
  return l2_distance(a.entries, b.entries);
}

}  // namespace varprop
