#include "varprop/moments.hpp"

namespace varprop {

MomentTable moments_from_eigenvalues(const RealVector& eigenvalues, int max_order) {
  if (max_order < 0) {
    throw std::invalid_argument("moments: max_order must be >= 0");
  }
  const int d = static_cast<int>(eigenvalues.size());
  if (d < 1) {
    throw std::invalid_argument("moments: empty spectrum");
  }
  RealVector h = RealVector::Zero(max_order + 1);
  h(0) = 1.0;
  RealVector pow = RealVector::Ones(d);
  for (int n = 1; n <= max_order; ++n) {
    pow = pow.cwiseProduct(eigenvalues);
    h(n) = pow.sum() / d;
  }
  return MomentTable{max_order, std::move(h)};
}

MomentTable moments(const Spectrum& s, int max_order) {
  return moments_from_eigenvalues(s.eigenvalues, max_order);
}

MomentTable moments(const HermitianOperator& h, int max_order) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("moments: eigensolver failed");
  }
  return moments_from_eigenvalues(solver.eigenvalues(), max_order);
}

RealMatrix gram_tensor(const MomentTable& m, int n_star) {
  if (n_star < 0) {
    throw std::invalid_argument("gram_tensor: n_star must be >= 0");
  }
  if (m.max_order < 2 * n_star) {
    throw std::invalid_argument("gram_tensor: moment table of order " +
                                std::to_string(m.max_order) + " too short for n_star " +
                                std::to_string(n_star));
  }
  RealMatrix g(n_star + 1, n_star + 1);
  for (int j = 0; j <= n_star; ++j) {
    for (int k = 0; k <= n_star; ++k) {
      g(j, k) = m[j + k];
    }
  }
  return g;
}

}  // namespace varprop
