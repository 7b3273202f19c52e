#pragma once

#include <vector>

#include "varprop/fock.hpp"
#include "varprop/superop.hpp"
#include "varprop/types.hpp"

namespace varprop {

enum class Boundary { kPeriodic, kOpen };

struct HubbardParams {
  int n_sites = 2;
  double hopping = 1.0;      // t
  double interaction = 1.0;  // U > 0
  Boundary boundary = Boundary::kPeriodic;

  void validate() const;
};

/// Ordered nearest-neighbour pairs (to, from); each chain bond appears in
/// both directions, so the hopping sum is Hermitian without an explicit h.c.
std::vector<std::pair<int, int>> ordered_bonds(int n_sites, Boundary boundary);

/// Hopping term -t sum_{<ij> sigma} c^dag_i c_j restricted to the given
/// basis words (pass the full word list for the whole Fock space).
Matrix hubbard_hopping_matrix(const FockBasis& basis, const HubbardParams& p,
                              std::span<const std::uint64_t> words);
/// Interaction term U * (number of doublons), diagonal.
Matrix hubbard_interaction_matrix(const FockBasis& basis, const HubbardParams& p,
                                  std::span<const std::uint64_t> words);

/// Full-space split H0 = interaction, V = hopping. Dense 4^N x 4^N; guarded
/// to n_sites <= 6 (the sweep works in sectors and has no such limit below
/// the memory guard).
PerturbationSplit hubbard_split(const FockBasis& basis, const HubbardParams& p);
HermitianOperator hubbard_hamiltonian(const FockBasis& basis, const HubbardParams& p);

/// The doublon-number-changing part of the hopping, divided by the cost U:
/// O = -i (t/U) sum_{<ij> sigma} (n c^dag c h - h c^dag c n), built directly
/// in second-quantized form. Coincides with solve_generator on the split.
Generator hubbard_generator(const FockBasis& basis, const HubbardParams& p);

struct HubbardCoefficients {
  Complex c1, c2;
};

/// Closed-form endpoint coefficients c1 = -i sinc(sqrt(3/2) t sqrt(2N+1)/U),
/// c2 = -1/2 sinc^2(...same/2). Stated for n_sites >= 3.
HubbardCoefficients hubbard_coefficients_printed(const HubbardParams& p);

/// Same endpoint through the generator's superoperator moments and the
/// coefficient flow; the gap to the closed form is the object of interest.
HubbardCoefficients hubbard_coefficients_ode(const HubbardParams& p,
                                             const OdeSolverConfig& cfg = {});

/// sum over ordered pairs of (1 - sigma_i . sigma_j) on the 2^N spin space.
RealMatrix heisenberg_bond_matrix(int n_sites, Boundary boundary);

/// H_std = -t^2/(2U) * bond sum; H_var = -(t^2/U) (i c1 + c2) * bond sum.
/// Same eigenvectors, proportional spectra.
std::pair<Matrix, Matrix> heisenberg_models(const HubbardParams& p,
                                            const HubbardCoefficients& c);

enum class CoefficientSource { kPrinted, kOde };

struct HubbardSweepConfig {
  int n_sites = 5;
  double interaction = 1.0;
  double tu_min = 0.01;
  double tu_max = 0.4;
  int points = 50;
  Boundary boundary = Boundary::kPeriodic;
  CoefficientSource coefficients = CoefficientSource::kPrinted;
  int threads = 0;
  bool allow_large = false;  // opt-in for n_sites = 7
};

struct HubbardLevelRow {
  double t_over_u;
  int level_index;  // 1-based among the nonzero levels, ascending energy
  double e_exact, e_std, e_var;
  double err_std, err_var;
};

struct HubbardAggregateRow {
  double t_over_u;
  double avg_first_half_std, avg_first_half_var;
  double avg_second_half_std, avg_second_half_var;
  double min_selected_weight;
  bool flagged;  // selected-eigenvector weight fell below 0.5 at t/U <= 0.2
};

struct HubbardSweepResult {
  std::vector<HubbardLevelRow> levels;
  std::vector<HubbardAggregateRow> aggregate;
  HubbardSweepConfig config;
  int n_nonzero_levels = 0;
};

/// Per t/U point: sector-restricted exact diagonalization at half filling,
/// eigenvector-weight selection of the 2^N spin-like levels, level-by-level
/// relative errors against both downfolded spin models, and first/second
/// half averages over the nonzero levels.
HubbardSweepResult hubbard_sweep(const HubbardSweepConfig& cfg);

}  // namespace varprop
