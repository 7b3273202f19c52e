#include "varprop/graphene.hpp"

#include <cmath>

#include "varprop/parallel.hpp"

namespace varprop {

namespace {

Matrix pauli(int i) {
  Matrix m(2, 2);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return m;
}

Matrix raising() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::pair<Complex, Complex> p_pm(const GrapheneParams& p) {
  if (p.pm_convention == PmConvention::kAsPrinted) {
    return {Complex(p.p1 + p.p2), Complex(p.p1 - p.p2)};
  }
  return {Complex(p.p1, p.p2), Complex(p.p1, -p.p2)};
}

}  // namespace

std::string pm_convention_name(PmConvention c) {
  return c == PmConvention::kAsPrinted ? "printed" : "complex";
}

PerturbationSplit graphene_hamiltonians(const GrapheneParams& p) {
  if (p.gamma <= 0.0) throw std::invalid_argument("graphene: gamma must be positive");
  const Matrix sp = raising();
  const Matrix sm = raising().adjoint();
  Matrix h0 = p.gamma * (kron(sp, sp) + kron(sm, sm));
  Matrix v = kron(Matrix::Identity(2, 2), p.p1 * pauli(1) + p.p2 * pauli(2));
  return PerturbationSplit(HermitianOperator(std::move(h0)), HermitianOperator(std::move(v)));
}

HermitianOperator graphene_generator_closed_form(const GrapheneParams& p) {
  Matrix o = kron(-(p.p1 * pauli(2) + p.p2 * pauli(1)) / p.gamma, pauli(3));
  return HermitianOperator(std::move(o));
}

Matrix graphene_low_energy_basis() {
  Matrix basis = Matrix::Zero(4, 2);
  basis(1, 0) = 1.0;
  basis(2, 1) = 1.0;
  return basis;
}

Matrix graphene_h2(const GrapheneParams& p) {
  const auto [pp, pm] = p_pm(p);
  return -(pp * pp * raising() + pm * pm * raising().adjoint()) / p.gamma;
}

Matrix graphene_h2_improved(const GrapheneParams& p) {
  const double a = std::hypot(p.p1, p.p2) / p.gamma;
  const double pref = sinc(a) * sinc(a) - 2.0 * sinc(2.0 * a);
  const auto [pp, pm] = p_pm(p);
  return pref / p.gamma * (pp * pp * raising() + pm * pm * raising().adjoint());
}

DownfoldCoefficients graphene_coefficients_closed_form(const GrapheneParams& p) {
  const double a = std::hypot(p.p1, p.p2) / p.gamma;
  return DownfoldCoefficients{Complex(1.0), Complex(0.0, -sinc(2.0 * a)),
                              Complex(-0.5 * sinc(a) * sinc(a))};
}

GrapheneSweepResult graphene_sweep(const GrapheneSweepConfig& cfg) {
  if (cfg.points < 1 || cfg.p_min <= 0.0 || cfg.p_max < cfg.p_min || cfg.gamma <= 0.0) {
    throw std::invalid_argument("graphene_sweep: invalid grid");
  }
  GrapheneSweepResult result;
  result.config = cfg;
  result.points.resize(cfg.points);

  parallel_for(cfg.points, cfg.threads, [&](std::size_t k) {
    const double p = cfg.points == 1
                         ? cfg.p_min
                         : cfg.p_min + (cfg.p_max - cfg.p_min) * k / (cfg.points - 1);
    GrapheneParams gp;
    gp.gamma = cfg.gamma;
    gp.pm_convention = cfg.convention;
    (cfg.axis == SweepAxis::kP2 ? gp.p2 : gp.p1) = p;

    const PerturbationSplit split = graphene_hamiltonians(gp);
    const Spectrum s = eigendecompose(HermitianOperator(split.h0.entries() + split.v.entries()));
    // Four levels, symmetric about zero; the mid-spectrum pair is the
    // downfolded target.
    const double e_exact = std::abs(s.eigenvalues(1));
    GrapheneSweepPoint& point = result.points[k];
    point.p = p;
    if (e_exact < 1e-14) {
      point.valid = false;
      return;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> std_solver(graphene_h2(gp));
    Eigen::SelfAdjointEigenSolver<Matrix> var_solver(graphene_h2_improved(gp));
    const double e_std = std::abs(std_solver.eigenvalues()(0));
    const double e_var = std::abs(var_solver.eigenvalues()(0));
    point.delta_std = std::abs(e_exact - e_std) / e_exact;
    point.delta_var = std::abs(e_exact - e_var) / e_exact;
  });
  return result;
}

}  // namespace varprop
