#include "varprop/propagators.hpp"

#include <cmath>
#include <numbers>

namespace varprop {

namespace {

// Scale used to solve the coefficient equations in x = H/s: the raw Hankel
// systems become numerically singular long before they are mathematically
// singular when moments span many orders of magnitude.
double moment_scale(const MomentTable& m) {
  return m.max_order >= 2 ? std::sqrt(std::max(m[2], 0.0)) : 0.0;
}

MomentTable rescaled(const MomentTable& m, double s) {
  RealVector h(m.max_order + 1);
  double p = 1.0;
  for (int n = 0; n <= m.max_order; ++n) {
    h(n) = m[n] / p;
    p *= s;
  }
  return MomentTable{m.max_order, std::move(h)};
}

CoefficientTrajectory constant_identity_trajectory(int n_star, std::span<const double> t_grid,
                                                   Method method) {
  Matrix coeffs = Matrix::Zero(t_grid.size(), n_star + 1);
  coeffs.col(0).setOnes();
  return CoefficientTrajectory{n_star, {t_grid.begin(), t_grid.end()}, std::move(coeffs),
                               method};
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw std::invalid_argument("coefficient trajectory: t_grid must start at 0");
  }
}

std::vector<PropagatorMatrix> assemble_sequence(const HermitianOperator& h,
                                                const CoefficientTrajectory& traj) {
  std::vector<PropagatorMatrix> out;
  out.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<Complex> c(traj.coeffs.cols());
    for (int j = 0; j < traj.coeffs.cols(); ++j) c[j] = traj.coeffs(k, j);
    out.push_back(PropagatorMatrix{assemble_polynomial(h.entries(), c), traj.times[k],
                                   traj.method});
  }
  return out;
}

}  // namespace

Matrix assemble_polynomial(const Matrix& h, std::span<const Complex> coeffs) {
  const int d = static_cast<int>(h.rows());
  Matrix result = Matrix::Zero(d, d);
  if (coeffs.empty()) return result;
  result = coeffs[0] * Matrix::Identity(d, d);
  Matrix power = Matrix::Identity(d, d);
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    power = power * h;
    result += coeffs[j] * power;
  }
  return result;
}

Vector evaluate_polynomial(const RealVector& eigenvalues, std::span<const Complex> coeffs) {
  Vector out = Vector::Zero(eigenvalues.size());
  for (int i = 0; i < eigenvalues.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      acc = acc * eigenvalues(i) + coeffs[j];
    }
    out(i) = acc;
  }
  return out;
}

PropagatorMatrix taylor_propagator(const HermitianOperator& h, double t, int order) {
  if (order < 0) throw std::invalid_argument("taylor_propagator: order must be >= 0");
  const int d = h.dim();
  Matrix u = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  for (int n = 1; n <= order; ++n) {
    term = term * ((Complex(0.0, -t) / static_cast<double>(n)) * h.entries());
    u += term;
  }
  return PropagatorMatrix{std::move(u), t, Method::kTaylor};
}

std::array<Complex, 3> kpm_coefficients(double t, double norm) {
  if (norm <= 0.0) return {Complex(1.0), Complex(0.0), Complex(0.0)};
  const double tau = t * norm;
  const double j0 = std::cyl_bessel_j(0, tau);
  const double j1 = std::cyl_bessel_j(1, tau);
  const double j2 = std::cyl_bessel_j(2, tau);
  return {Complex(j0 + 2.0 * j2), Complex(0.0, -2.0 * j1 / norm),
          Complex(-4.0 * j2 / (norm * norm))};
}

PropagatorMatrix kpm_propagator(const Spectrum& s, double t) {
  const auto c = kpm_coefficients(t, operator_norm(s));
  Vector values = evaluate_polynomial(s.eigenvalues, c);
  Matrix u = s.eigenvectors * values.asDiagonal() * s.eigenvectors.adjoint();
  return PropagatorMatrix{std::move(u), t, Method::kKpm};
}

PropagatorMatrix kpm_propagator(const HermitianOperator& h, double t) {
  return kpm_propagator(eigendecompose(h), t);
}

CoefficientTrajectory variational_coefficients(const MomentTable& m, int n_star,
                                               std::span<const double> t_grid,
                                               const OdeSolverConfig& cfg) {
  cfg.validate();
  check_grid(t_grid);
  if (n_star < 1) throw std::invalid_argument("variational_coefficients: n_star must be >= 1");
  if (m.max_order < 2 * n_star + 1) {
    throw std::invalid_argument("variational_coefficients: need moments up to order " +
                                std::to_string(2 * n_star + 1));
  }
  const double s = moment_scale(m);
  if (s <= 0.0) {
    // H = 0: the identity is exact and the higher coefficients are inert.
    return constant_identity_trajectory(n_star, t_grid, Method::kVariational);
  }
  const MomentTable ms = rescaled(m, s);
  const RealMatrix g = gram_tensor(ms, n_star);
  RealMatrix a(n_star + 1, n_star + 1);
  for (int l = 0; l <= n_star; ++l)
    for (int k = 0; k <= n_star; ++k) a(l, k) = ms[l + k + 1];

  const RealMatrix rhs = pseudoinverse_solve(g, a, cfg.pseudoinverse_cutoff);
  Matrix system = Complex(0.0, -1.0) * rhs.cast<Complex>();

  std::vector<double> scaled_grid(t_grid.begin(), t_grid.end());
  for (double& t : scaled_grid) t *= s;
  Vector y0 = Vector::Zero(n_star + 1);
  y0(0) = 1.0;
  Matrix coeffs = integrate_linear(system, y0, scaled_grid, cfg);

  // Undo the rescaling: c_j = c_j_scaled / s^j.
  double p = 1.0;
  for (int j = 0; j <= n_star; ++j) {
    coeffs.col(j) /= p;
    p *= s;
  }
  return CoefficientTrajectory{n_star, {t_grid.begin(), t_grid.end()}, std::move(coeffs),
                               Method::kVariational};
}

std::vector<PropagatorMatrix> variational_propagator(const HermitianOperator& h,
                                                     std::span<const double> t_grid, int n_star,
                                                     const OdeSolverConfig& cfg) {
  const MomentTable m = moments(h, 2 * n_star + 1);
  return assemble_sequence(h, variational_coefficients(m, n_star, t_grid, cfg));
}

ClosedFormCoefficients closed_form_coefficients(const MomentTable& m, double t) {
  if (m.max_order < 4) {
    throw std::invalid_argument("closed_form_coefficients: need moments up to order 4");
  }
  const double h1 = m[1], h2 = m[2], h3 = m[3], h4 = m[4];
  const double den = h1 * h3 - h2 * h2;
  if (std::abs(den) < 1e-12 * std::max(1.0, h2 * h2)) {
    throw DegenerateMoments("closed_form_coefficients: h1 h3 - h2^2 vanishes");
  }
  const Complex c13 = kImag / 6.0 * (h3 * h3 - h2 * h4) / den;
  const Complex c14 = Complex(h3 * h4 / (24.0 * den));
  const Complex c23 = kImag / 6.0 * (h1 * h4 - h2 * h3) / den;
  const Complex c24 = Complex(-h2 * h4 / (24.0 * den));
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  return ClosedFormCoefficients{
      Complex(1.0),
      Complex(0.0, -t) + c13 * t3 + c14 * t4,
      Complex(-t2 / 2.0) + c23 * t3 + c24 * t4,
  };
}

PropagatorMatrix closed_form_propagator(const HermitianOperator& h, double t) {
  const MomentTable m = moments(h, 4);
  const auto c = closed_form_coefficients(m, t);
  const std::array<Complex, 3> coeffs{c.c0, c.c1, c.c2};
  return PropagatorMatrix{assemble_polynomial(h.entries(), coeffs), t,
                          Method::kVariationalClosedForm};
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

// Chebyshev values T_m(x) and derivatives T'_m(x) = m U_{m-1}(x), m = 0..deg.
void chebyshev_basis(double x, int deg, std::vector<double>& val, std::vector<double>& der) {
  val.assign(deg + 1, 0.0);
  der.assign(deg + 1, 0.0);
  double t0 = 1.0, t1 = x, u0 = 1.0, u1 = 2.0 * x;
  val[0] = 1.0;
  if (deg >= 1) {
    val[1] = x;
    der[1] = 1.0;
  }
  for (int mdeg = 2; mdeg <= deg; ++mdeg) {
    const double t2 = 2.0 * x * t1 - t0;
    val[mdeg] = t2;
    der[mdeg] = mdeg * u1;
    t0 = t1;
    t1 = t2;
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
}

}  // namespace

ResidualActionSolution residual_action_coefficients(const MomentTable& m, int n_star,
                                                    std::span<const double> t_grid,
                                                    const OdeSolverConfig& cfg) {
  cfg.validate();
  check_grid(t_grid);
  if (n_star < 1) throw std::invalid_argument("residual_action: n_star must be >= 1");
  if (m.max_order < 2 * n_star + 2) {
    throw std::invalid_argument("residual_action: need moments up to order " +
                                std::to_string(2 * n_star + 2));
  }
  const double s = moment_scale(m);
  const double horizon = t_grid.back() * s;
  if (s <= 0.0 || horizon <= 0.0) {
    return {constant_identity_trajectory(n_star, t_grid, Method::kResidualAction), 0.0};
  }
  const MomentTable ms = rescaled(m, s);

  // Residual weight: r^dag Gp r with Gp[k][l] = h[k+l] over degrees 0..n*+1.
  const int nr = n_star + 2;
  RealMatrix gp(nr, nr);
  for (int k = 0; k < nr; ++k)
    for (int l = 0; l < nr; ++l) gp(k, l) = ms[k + l];
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gp);
  if (es.info() != Eigen::Success) throw NumericalError("residual_action: Gram eigensolve failed");
  RealMatrix half = RealMatrix::Zero(nr, nr);
  for (int k = 0; k < nr; ++k) {
    const double w = std::max(es.eigenvalues()(k), 0.0);
    half.row(k) = std::sqrt(w) * es.eigenvectors().col(k).transpose();
  }

  const int n_nodes = std::clamp(static_cast<int>(std::ceil(64.0 * horizon)), 64, 512);
  const int deg = std::clamp(16 + 8 * static_cast<int>(std::ceil(horizon)), 24, 48);
  std::vector<double> gl_x, gl_w;
  gauss_legendre(n_nodes, gl_x, gl_w);

  // Unknowns: Chebyshev coefficients a[j][m] for j = 0..n*, m = 1..deg; the
  // m = 0 coefficient is eliminated by c(0) = (1, 0, ..., 0) using
  // T_m(-1) = (-1)^m.
  const int nc = n_star + 1;
  const int nunk = nc * deg;
  Matrix rows = Matrix::Zero(n_nodes * nr, nunk);
  Vector rhs = Vector::Zero(n_nodes * nr);
  std::vector<double> val, der;

  for (int q = 0; q < n_nodes; ++q) {
    const double x = gl_x[q];
    chebyshev_basis(x, deg, val, der);
    const double dxdu = 2.0 / horizon;
    const double sqw = std::sqrt(gl_w[q] * horizon / 2.0);

    // Residual r_k = i c'_k - c_{k-1} as a linear map of the unknowns plus
    // the constant part from the eliminated m = 0 terms.
    Matrix block = Matrix::Zero(nr, nunk);
    Vector cpart = Vector::Zero(nr);
    for (int j = 0; j < nc; ++j) {
      for (int mdeg = 1; mdeg <= deg; ++mdeg) {
        const double sign0 = (mdeg % 2 == 0) ? 1.0 : -1.0;
        const double basis_val = val[mdeg] - sign0 * val[0];
        const double basis_der = (der[mdeg] - sign0 * der[0]) * dxdu;
        const int col = j * deg + (mdeg - 1);
        block(j, col) += kImag * basis_der;        // i c'_j contributes at degree j
        block(j + 1, col) -= basis_val;            // -c_j contributes at degree j+1
      }
    }
    // c_0's fixed part is T_0 = 1: derivative 0, value 1.
    cpart(1) -= 1.0;
    Matrix wrow = half.cast<Complex>() * block * sqw;
    Vector wrhs = half.cast<Complex>() * cpart * (-sqw);
    rows.block(q * nr, 0, nr, nunk) = wrow;
    rhs.segment(q * nr, nr) = wrhs;
  }

  Eigen::ColPivHouseholderQR<Matrix> qr(rows);
  Vector sol = qr.solve(rhs);
  if (!sol.allFinite()) throw NumericalError("residual_action: least-squares solve failed");
  const double action_value = (rows * sol - rhs).squaredNorm();

  // Reconstruct full Chebyshev coefficients including the eliminated m = 0.
  Matrix cheb = Matrix::Zero(nc, deg + 1);
  for (int j = 0; j < nc; ++j) {
    Complex a0 = (j == 0) ? Complex(1.0) : Complex(0.0);
    for (int mdeg = 1; mdeg <= deg; ++mdeg) {
      cheb(j, mdeg) = sol(j * deg + (mdeg - 1));
      const double sign0 = (mdeg % 2 == 0) ? 1.0 : -1.0;
      a0 -= sign0 * cheb(j, mdeg);
    }
    cheb(j, 0) = a0;
  }

  Matrix coeffs(t_grid.size(), nc);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double x = 2.0 * (t_grid[k] * s) / horizon - 1.0;
    chebyshev_basis(x, deg, val, der);
    double p = 1.0;
    for (int j = 0; j < nc; ++j) {
      Complex acc = 0.0;
      for (int mdeg = 0; mdeg <= deg; ++mdeg) acc += cheb(j, mdeg) * val[mdeg];
      coeffs(k, j) = acc / p;
      p *= s;
    }
  }
  CoefficientTrajectory traj{n_star, {t_grid.begin(), t_grid.end()}, std::move(coeffs),
                             Method::kResidualAction};
  return {std::move(traj), action_value};
}

std::vector<PropagatorMatrix> residual_action_propagator(const HermitianOperator& h,
                                                         std::span<const double> t_grid,
                                                         int n_star,
                                                         const OdeSolverConfig& cfg) {
  const MomentTable m = moments(h, 2 * n_star + 2);
  return assemble_sequence(h, residual_action_coefficients(m, n_star, t_grid, cfg).trajectory);
}

}  // namespace varprop
