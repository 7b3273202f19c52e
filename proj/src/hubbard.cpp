#include "varprop/hubbard.hpp"

#include <algorithm>
#include <cmath>

#include "varprop/parallel.hpp"

namespace varprop {

void HubbardParams::validate() const {
  if (n_sites < 2) throw std::invalid_argument("hubbard: n_sites must be >= 2");
  if (interaction <= 0.0) throw std::invalid_argument("hubbard: U must be positive");
  if (hopping < 0.0) throw std::invalid_argument("hubbard: t must be >= 0");
}

std::vector<std::pair<int, int>> ordered_bonds(int n_sites, Boundary boundary) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i < n_sites; ++i) {
    const int j = (i + 1) % n_sites;
    if (j == i) continue;
    if (boundary == Boundary::kPeriodic || i + 1 < n_sites) {
      bonds.emplace_back(i, j);
      bonds.emplace_back(j, i);
    }
  }
  return bonds;
}

namespace {

constexpr int kMaxDenseSites = 6;

std::vector<std::int64_t> index_of(const FockBasis& basis,
                                   std::span<const std::uint64_t> words) {
  std::vector<std::int64_t> idx(basis.n_states(), -1);
  for (std::size_t k = 0; k < words.size(); ++k) idx[words[k]] = static_cast<std::int64_t>(k);
  return idx;
}

std::vector<std::uint64_t> all_words(const FockBasis& basis) {
  std::vector<std::uint64_t> words(basis.n_states());
  for (std::uint64_t w = 0; w < basis.n_states(); ++w) words[w] = w;
  return words;
}

void check_dense(const FockBasis& basis) {
  if (basis.n_sites() > kMaxDenseSites) {
    throw std::invalid_argument("hubbard: dense Fock-space matrices limited to " +
                                std::to_string(kMaxDenseSites) + " sites; use the sector path");
  }
}

}  // namespace

Matrix hubbard_hopping_matrix(const FockBasis& basis, const HubbardParams& p,
                              std::span<const std::uint64_t> words) {
  p.validate();
  const auto idx = index_of(basis, words);
  const auto bonds = ordered_bonds(basis.n_sites(), p.boundary);
  Matrix v = Matrix::Zero(words.size(), words.size());
  for (std::size_t col = 0; col < words.size(); ++col) {
    const std::uint64_t w = words[col];
    for (const auto& [to, from] : bonds) {
      for (Spin spin : {Spin::kUp, Spin::kDown}) {
        const auto amp = FockBasis::hop(w, to, from, spin);
        if (!amp) continue;
        const std::int64_t row = idx[amp->word];
        if (row < 0) continue;  // outside the restricted basis
        v(row, col) += -p.hopping * amp->sign;
      }
    }
  }
  return v;
}

Matrix hubbard_interaction_matrix(const FockBasis& basis, const HubbardParams& p,
                                  std::span<const std::uint64_t> words) {
  p.validate();
  Matrix h0 = Matrix::Zero(words.size(), words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    h0(k, k) = p.interaction * basis.doublon_count(words[k]);
  }
  return h0;
}

PerturbationSplit hubbard_split(const FockBasis& basis, const HubbardParams& p) {
  check_dense(basis);
  const auto words = all_words(basis);
  return PerturbationSplit(HermitianOperator(hubbard_interaction_matrix(basis, p, words)),
                           HermitianOperator(hubbard_hopping_matrix(basis, p, words)));
}

HermitianOperator hubbard_hamiltonian(const FockBasis& basis, const HubbardParams& p) {
  check_dense(basis);
  const auto words = all_words(basis);
  return HermitianOperator(hubbard_interaction_matrix(basis, p, words) +
                           hubbard_hopping_matrix(basis, p, words));
}

Generator hubbard_generator(const FockBasis& basis, const HubbardParams& p) {
  p.validate();
  check_dense(basis);
  const auto words = all_words(basis);
  const auto bonds = ordered_bonds(basis.n_sites(), p.boundary);
  const Complex prefactor = -kImag * p.hopping / p.interaction;
  Matrix o = Matrix::Zero(words.size(), words.size());
  for (std::size_t col = 0; col < words.size(); ++col) {
    const std::uint64_t w = words[col];
    for (const auto& [to, from] : bonds) {
      for (Spin spin : {Spin::kUp, Spin::kDown}) {
        const Spin other = spin == Spin::kUp ? Spin::kDown : Spin::kUp;
        // The opposite-spin occupations are untouched by the hop, so the
        // projectors on both sides can be evaluated on the source word.
        const bool n_to = FockBasis::occupied(w, FockBasis::mode(to, other));
        const bool n_from = FockBasis::occupied(w, FockBasis::mode(from, other));
        if (n_to == n_from) continue;
        const auto amp = FockBasis::hop(w, to, from, spin);
        if (!amp) continue;
        const double sgn = amp->sign;
        if (n_to && !n_from) {
          o(amp->word, col) += prefactor * sgn;  // doublon-raising part
        } else {
          o(amp->word, col) -= prefactor * sgn;  // doublon-lowering part
        }
      }
    }
  }

  // Residual bookkeeping against the doublon-sector block structure of H0.
  const Matrix v = hubbard_hopping_matrix(basis, p, words);
  Vector e0(words.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    e0(k) = p.interaction * basis.doublon_count(words[k]);
  }
  double off_sq = 0.0, block_sq = 0.0;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      const Complex gap = e0(a) - e0(b);
      const Complex r = v(a, b) - kImag * o(a, b) * (-gap);
      if (basis.doublon_count(words[a]) != basis.doublon_count(words[b])) {
        off_sq += std::norm(r);
      } else {
        block_sq += std::norm(v(a, b));
      }
    }
  }
  return Generator{HermitianOperator(std::move(o)), std::sqrt(off_sq), std::sqrt(block_sq)};
}

HubbardCoefficients hubbard_coefficients_printed(const HubbardParams& p) {
  p.validate();
  const double omega =
      std::sqrt(1.5) * p.hopping * std::sqrt(2.0 * p.n_sites + 1.0) / p.interaction;
  return HubbardCoefficients{Complex(0.0, -sinc(omega)),
                             Complex(-0.5 * sinc(omega / 2.0) * sinc(omega / 2.0))};
}

HubbardCoefficients hubbard_coefficients_ode(const HubbardParams& p,
                                             const OdeSolverConfig& cfg) {
  const FockBasis basis(p.n_sites);
  const Generator gen = hubbard_generator(basis, p);
  const auto c = downfold_coefficients(super_moments(gen.o, 5), cfg);
  return HubbardCoefficients{c.c1, c.c2};
}

RealMatrix heisenberg_bond_matrix(int n_sites, Boundary boundary) {
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  RealMatrix m = RealMatrix::Zero(dim, dim);
  for (const auto& [i, j] : ordered_bonds(n_sites, boundary)) {
    for (std::uint64_t w = 0; w < dim; ++w) {
      const bool si = (w >> i) & 1;
      const bool sj = (w >> j) & 1;
      if (si == sj) continue;  // 1 - sigma.sigma = 2 (1 - swap) kills aligned pairs
      m(w, w) += 2.0;
      m(w ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j), w) -= 2.0;
    }
  }
  return m;
}

std::pair<Matrix, Matrix> heisenberg_models(const HubbardParams& p,
                                            const HubbardCoefficients& c) {
  p.validate();
  const RealMatrix bond = heisenberg_bond_matrix(p.n_sites, p.boundary);
  const double t2u = p.hopping * p.hopping / p.interaction;
  const Complex z = kImag * c.c1 + c.c2;
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z))) {
    throw std::invalid_argument("heisenberg_models: i c1 + c2 must be real");
  }
  Matrix h_std = (-0.5 * t2u) * bond.cast<Complex>();
  Matrix h_var = (-t2u * z.real()) * bond.cast<Complex>();
  return {std::move(h_std), std::move(h_var)};
}

namespace {

struct SectorDiagonalization {
  std::vector<double> energies;
  std::vector<double> weights;  // singly-occupied weight per eigenvector
  double max_abs_energy = 0.0;
};

SectorDiagonalization diagonalize_half_filled(const FockBasis& basis, const HubbardParams& p) {
  SectorDiagonalization out;
  const int n = basis.n_sites();
  for (int nup = 0; nup <= n; ++nup) {
    const auto& words = basis.sector(n, 2 * nup - n);
    if (words.empty()) continue;
    const Matrix h = hubbard_hopping_matrix(basis, p, words) +
                     hubbard_interaction_matrix(basis, p, words);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("hubbard_sweep: sector eigensolve failed");
    }
    std::vector<std::size_t> singly;
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (basis.singly_occupied(words[k])) singly.push_back(k);
    }
    for (int col = 0; col < solver.eigenvalues().size(); ++col) {
      double w = 0.0;
      for (const std::size_t row : singly) w += std::norm(solver.eigenvectors()(row, col));
      out.energies.push_back(solver.eigenvalues()(col));
      out.weights.push_back(w);
      out.max_abs_energy = std::max(out.max_abs_energy, std::abs(solver.eigenvalues()(col)));
    }
  }
  return out;
}

}  // namespace

HubbardSweepResult hubbard_sweep(const HubbardSweepConfig& cfg) {
  if (cfg.n_sites < 2 || cfg.n_sites > 7) {
    throw std::invalid_argument("hubbard_sweep: n_sites must be in [2, 7]");
  }
  if (cfg.n_sites == 7 && !cfg.allow_large) {
    throw std::invalid_argument(
        "hubbard_sweep: n_sites = 7 diagonalizes 3432 states per point; pass allow_large");
  }
  if (cfg.points < 1 || cfg.tu_min <= 0.0 || cfg.tu_max < cfg.tu_min || cfg.interaction <= 0.0) {
    throw std::invalid_argument("hubbard_sweep: invalid grid");
  }
  if (cfg.coefficients == CoefficientSource::kOde && cfg.n_sites > kMaxDenseSites) {
    throw std::invalid_argument("hubbard_sweep: the moment route needs the dense generator");
  }

  const FockBasis basis(cfg.n_sites);
  const std::uint64_t spin_dim = std::uint64_t{1} << cfg.n_sites;

  Eigen::SelfAdjointEigenSolver<RealMatrix> spin_solver(
      heisenberg_bond_matrix(cfg.n_sites, cfg.boundary));
  if (spin_solver.info() != Eigen::Success) {
    throw NumericalError("hubbard_sweep: spin-model eigensolve failed");
  }
  const RealVector bond_levels = spin_solver.eigenvalues();  // >= 0, ascending
  const double bond_scale = bond_levels(bond_levels.size() - 1);
  int n_zero_spin = 0;
  for (int k = 0; k < bond_levels.size(); ++k) {
    if (std::abs(bond_levels(k)) < 1e-12 * std::max(1.0, bond_scale)) ++n_zero_spin;
  }

  // The generator scales linearly with t/U, so one spectrum serves the
  // whole grid when the moment-route coefficients are requested.
  RealVector base_generator_spectrum;
  if (cfg.coefficients == CoefficientSource::kOde) {
    HubbardParams unit{cfg.n_sites, 1.0, 1.0, cfg.boundary};
    const Generator gen = hubbard_generator(basis, unit);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gen.o.entries(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("hubbard_sweep: generator eigensolve failed");
    base_generator_spectrum = es.eigenvalues();
  }

  std::vector<double> grid(cfg.points);
  const double log_min = std::log(cfg.tu_min), log_max = std::log(cfg.tu_max);
  for (int k = 0; k < cfg.points; ++k) {
    grid[k] = cfg.points == 1
                  ? cfg.tu_min
                  : std::exp(log_min + (log_max - log_min) * k / (cfg.points - 1));
  }

  std::vector<std::vector<HubbardLevelRow>> level_rows(cfg.points);
  std::vector<HubbardAggregateRow> aggregate(cfg.points);

  parallel_for(cfg.points, cfg.threads, [&](std::size_t k) {
    const double tu = grid[k];
    HubbardParams p{cfg.n_sites, tu * cfg.interaction, cfg.interaction, cfg.boundary};

    SectorDiagonalization ed = diagonalize_half_filled(basis, p);

    // Keep the 2^N states with the largest singly-occupied weight.
    std::vector<std::size_t> order(ed.energies.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (ed.weights[a] != ed.weights[b]) return ed.weights[a] > ed.weights[b];
      if (ed.energies[a] != ed.energies[b]) return ed.energies[a] < ed.energies[b];
      return a < b;
    });
    std::vector<double> selected;
    double min_weight = 1.0;
    for (std::uint64_t i = 0; i < spin_dim; ++i) {
      selected.push_back(ed.energies[order[i]]);
      min_weight = std::min(min_weight, ed.weights[order[i]]);
    }
    std::sort(selected.begin(), selected.end());

    HubbardCoefficients coeff =
        cfg.coefficients == CoefficientSource::kPrinted
            ? hubbard_coefficients_printed(p)
            : [&] {
                const double scale = p.hopping / p.interaction;
                const auto sm =
                    super_moments_from_eigenvalues(base_generator_spectrum * scale, 5);
                const auto c = downfold_coefficients(sm, OdeSolverConfig{});
                return HubbardCoefficients{c.c1, c.c2};
              }();
    const double t2u = p.hopping * p.hopping / p.interaction;
    const double coupling_var = (kImag * coeff.c1 + coeff.c2).real();
    std::vector<double> e_std(bond_levels.size()), e_var(bond_levels.size());
    for (int i = 0; i < bond_levels.size(); ++i) {
      e_std[i] = -0.5 * t2u * bond_levels(i);
      e_var[i] = -t2u * coupling_var * bond_levels(i);
    }
    std::sort(e_std.begin(), e_std.end());
    std::sort(e_var.begin(), e_var.end());

    // Pair sorted exact and sorted spin levels; drop pairs whose exact
    // level vanishes (the fully polarized multiplet).
    std::vector<HubbardLevelRow> rows;
    std::vector<double> errs_std, errs_var;
    for (std::uint64_t i = 0; i < spin_dim; ++i) {
      const double e_ex = selected[i];
      if (std::abs(e_ex) < 1e-12 * std::max(1.0, ed.max_abs_energy)) continue;
      HubbardLevelRow row;
      row.t_over_u = tu;
      row.level_index = static_cast<int>(rows.size()) + 1;
      row.e_exact = e_ex;
      row.e_std = e_std[i];
      row.e_var = e_var[i];
      row.err_std = std::abs((e_ex - e_std[i]) / e_ex);
      row.err_var = std::abs((e_ex - e_var[i]) / e_ex);
      rows.push_back(row);
      errs_std.push_back(row.err_std);
      errs_var.push_back(row.err_var);
    }
    const std::size_t half = errs_std.size() / 2;
    const auto mean = [](std::span<const double> v) {
      if (v.empty()) return 0.0;
      double s = 0.0;
      for (const double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    HubbardAggregateRow agg;
    agg.t_over_u = tu;
    agg.avg_first_half_std = mean(std::span(errs_std).first(half));
    agg.avg_first_half_var = mean(std::span(errs_var).first(half));
    agg.avg_second_half_std = mean(std::span(errs_std).subspan(half));
    agg.avg_second_half_var = mean(std::span(errs_var).subspan(half));
    agg.min_selected_weight = min_weight;
    agg.flagged = (tu <= 0.2 && min_weight <= 0.5);
    level_rows[k] = std::move(rows);
    aggregate[k] = agg;
  });

  HubbardSweepResult result;
  result.config = cfg;
  result.aggregate = std::move(aggregate);
  result.n_nonzero_levels = static_cast<int>(spin_dim) - n_zero_spin;
  for (auto& rows : level_rows) {
    result.levels.insert(result.levels.end(), rows.begin(), rows.end());
  }
  return result;
}

}  // namespace varprop
