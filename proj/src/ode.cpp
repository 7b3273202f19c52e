#include "varprop/ode.hpp"

#include <algorithm>
#include <cmath>

namespace varprop {

void OdeSolverConfig::validate() const {
  if (rel_tol <= 0 || abs_tol <= 0 || pseudoinverse_cutoff <= 0 || max_steps <= 0) {
    throw std::invalid_argument("OdeSolverConfig: all fields must be positive");
  }
}

RealMatrix pseudoinverse_solve(const RealMatrix& a, const RealMatrix& b, double rel_cutoff) {
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) {
    return RealMatrix::Zero(a.cols(), b.cols());
  }
  RealVector inv = RealVector::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_cutoff * sv(0)) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * b;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

Matrix integrate_linear(const Matrix& a, const Vector& y0, std::span<const double> t_grid,
                        const OdeSolverConfig& cfg) {
  cfg.validate();
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw std::invalid_argument("integrate_linear: t_grid must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw std::invalid_argument("integrate_linear: t_grid must be strictly increasing");
    }
  }
  const int n = static_cast<int>(y0.size());
  Matrix out(t_grid.size(), n);
  out.row(0) = y0.transpose();
  if (t_grid.size() == 1) return out;

  const double a_scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  Vector y = y0;
  double t = 0.0;
  double h = std::min(0.1 / a_scale, t_grid.back());
  long steps = 0;
  std::array<Vector, 7> k;

  for (std::size_t gi = 1; gi < t_grid.size(); ++gi) {
    const double t_end = t_grid[gi];
    while (t < t_end) {
      if (++steps > cfg.max_steps) {
        throw NumericalError("integrate_linear: exceeded max_steps");
      }
      const double h_step = std::min(h, t_end - t);
      k[0] = a * y;
      for (int s = 1; s < 7; ++s) {
        Vector ys = y;
        for (int j = 0; j < s; ++j) {
          if (kA[s][j] != 0.0) ys += (h_step * kA[s][j]) * k[j];
        }
        k[s] = a * ys;
      }
      Vector y5 = y, y4 = y;
      for (int s = 0; s < 7; ++s) {
        if (kB5[s] != 0.0) y5 += (h_step * kB5[s]) * k[s];
        if (kB4[s] != 0.0) y4 += (h_step * kB4[s]) * k[s];
      }
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        const double scale =
            cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
        err = std::max(err, std::abs(y5(i) - y4(i)) / scale);
      }
      if (err <= 1.0) {
        t += h_step;
        y = std::move(y5);
      }
      const double factor =
          std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
      h = std::max(h_step * factor, 1e-14 * std::max(1.0, t_end));
      if (h_step * factor < 1e-14 * std::max(1.0, t_end) && err > 1.0) {
        throw NumericalError("integrate_linear: step size collapsed");
      }
    }
    out.row(gi) = y.transpose();
  }
  return out;
}

}  // namespace varprop
