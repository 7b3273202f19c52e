#include "varprop/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "varprop/moments.hpp"
#include "varprop/parallel.hpp"
#include "varprop/propagators.hpp"

namespace varprop {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step on seed + index.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // (0,1] and [0,1) uniforms from the standardized mt19937_64 word stream.
    const double u1 = ((rng_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = (rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

Matrix gue_sample(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("gue_sample: dim must be >= 1");
  NormalStream normal(seed);
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double re = normal.next();
      const double im = normal.next();
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return (m + m.adjoint()) / 2.0;
}

namespace {

double l2_eigenbasis(const RealVector& lam, const Vector& exact, const Vector& approx) {
  return (exact - approx).norm() / (2.0 * std::sqrt(static_cast<double>(lam.size())));
}

struct SampleTask {
  const EvolutionConfig& cfg;
  const std::vector<double>& grid;
  EvolutionCurves& out;
  bool want_pair;

  void operator()(std::size_t s) const {
    const Matrix h = gue_sample(cfg.dim, sub_seed(cfg.seed, s));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("evolution_curves: eigensolve failed");
    }
    const RealVector lam = solver.eigenvalues();
    const double norm = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
    const MomentTable m = moments_from_eigenvalues(lam, std::max(2 * cfg.n_star + 2, 6));

    std::vector<double> times(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) times[k] = grid[k] / norm;

    CoefficientTrajectory variational, residual;
    if (out.l2.count(Method::kVariational) || want_pair) {
      variational = variational_coefficients(m, cfg.n_star, times, cfg.ode);
    }
    if (out.l2.count(Method::kResidualAction)) {
      residual = residual_action_coefficients(m, cfg.n_star, times, cfg.ode).trajectory;
    }

    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = times[k];
      Vector exact(lam.size());
      for (int i = 0; i < lam.size(); ++i) exact(i) = std::exp(Complex(0.0, -lam(i) * t));

      Vector ode_values;
      if (variational.times.size() == grid.size()) {
        std::vector<Complex> c(cfg.n_star + 1);
        for (int j = 0; j <= cfg.n_star; ++j) c[j] = variational.coeffs(k, j);
        ode_values = evaluate_polynomial(lam, c);
      }

      for (auto& [method, matrix] : out.l2) {
        Vector values;
        switch (method) {
          case Method::kTaylor: {
            std::vector<Complex> c(cfg.taylor_order + 1);
            Complex term = 1.0;
            c[0] = term;
            for (int n = 1; n <= cfg.taylor_order; ++n) {
              term *= Complex(0.0, -t) / static_cast<double>(n);
              c[n] = term;
            }
            values = evaluate_polynomial(lam, c);
            break;
          }
          case Method::kKpm: {
            const auto c = kpm_coefficients(t, norm);
            values = evaluate_polynomial(lam, c);
            break;
          }
          case Method::kVariational:
            values = ode_values;
            break;
          case Method::kVariationalClosedForm: {
            const auto c = closed_form_coefficients(m, t);
            const std::array<Complex, 3> cc{c.c0, c.c1, c.c2};
            values = evaluate_polynomial(lam, cc);
            break;
          }
          case Method::kResidualAction: {
            std::vector<Complex> c(cfg.n_star + 1);
            for (int j = 0; j <= cfg.n_star; ++j) c[j] = residual.coeffs(k, j);
            values = evaluate_polynomial(lam, c);
            break;
          }
          case Method::kExact:
            values = exact;
            break;
        }
        matrix(s, k) = l2_eigenbasis(lam, exact, values);
        if (want_pair && method == Method::kVariationalClosedForm) {
          out.closed_vs_ode(s, k) = l2_eigenbasis(lam, ode_values, values);
        }
      }
    }
  }
};

EvolutionCurves run_curves(const EvolutionConfig& cfg, bool parallel) {
  if (cfg.samples < 1) throw std::invalid_argument("evolution_curves: samples must be >= 1");
  if (cfg.grid_points < 2 || cfg.t_max <= 0.0) {
    throw std::invalid_argument("evolution_curves: invalid time grid");
  }
  EvolutionCurves out;
  out.t_norm.resize(cfg.grid_points);
  for (int k = 0; k < cfg.grid_points; ++k) {
    out.t_norm[k] = cfg.t_max * k / (cfg.grid_points - 1);
  }
  for (const Method m : cfg.methods) {
    out.l2.emplace(m, RealMatrix::Zero(cfg.samples, cfg.grid_points));
  }
  const bool want_pair = out.l2.count(Method::kVariationalClosedForm) > 0;
  if (want_pair) out.closed_vs_ode = RealMatrix::Zero(cfg.samples, cfg.grid_points);

  SampleTask task{cfg, out.t_norm, out, want_pair};
  if (parallel) {
    parallel_for(cfg.samples, cfg.threads, task);
  } else {
    for (std::size_t s = 0; s < static_cast<std::size_t>(cfg.samples); ++s) task(s);
  }
  return out;
}

}  // namespace

EvolutionCurves evolution_curves(const EvolutionConfig& cfg) { return run_curves(cfg, true); }

EvolutionCurves evolution_curves_serial(const EvolutionConfig& cfg) {
  return run_curves(cfg, false);
}

std::vector<BenchRecord> aggregate_records(const EvolutionCurves& curves, int dim) {
  std::vector<BenchRecord> records;
  for (const auto& [method, matrix] : curves.l2) {
    const int n = static_cast<int>(matrix.rows());
    for (int k = 0; k < matrix.cols(); ++k) {
      double mean = 0.0;
      for (int s = 0; s < n; ++s) mean += matrix(s, k);
      mean /= n;
      double var = 0.0;
      for (int s = 0; s < n; ++s) var += (matrix(s, k) - mean) * (matrix(s, k) - mean);
      const double sd = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
      records.push_back(BenchRecord{method, dim, curves.t_norm[k], mean, sd, n});
    }
  }
  return records;
}

}  // namespace varprop
