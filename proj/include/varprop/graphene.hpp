#pragma once

#include <string>
#include <vector>

#include "varprop/superop.hpp"
#include "varprop/types.hpp"

namespace varprop {

/// Off-diagonal momentum combination used in the downfolded 2x2 blocks:
/// kAsPrinted uses p_pm = p1 +- p2, kComplex uses p_pm = p1 +- i p2. Both
/// give the same spectrum on the coordinate axes; kComplex is the reading
/// that matches the commutator construction entrywise at generic momenta.
enum class PmConvention { kAsPrinted, kComplex };

std::string pm_convention_name(PmConvention c);

struct GrapheneParams {
  double gamma = 1.0;
  double p1 = 0.0;
  double p2 = 0.0;
  PmConvention pm_convention = PmConvention::kAsPrinted;
};

/// Four-band bilayer block Hamiltonian: H0 = gamma (tau+ x sigma+ + tau- x
/// sigma-) with unit ladder operators, V = 1 x (p1 sigma1 + p2 sigma2).
PerturbationSplit graphene_hamiltonians(const GrapheneParams& p);

/// The generator that removes V at first order, in closed form:
/// -(p1 tau2 + p2 tau1)/gamma x sigma3.
HermitianOperator graphene_generator_closed_form(const GrapheneParams& p);

/// Orthonormal basis (columns) of the zero-energy subspace of H0, spanned by
/// (0,1,0,0) and (0,0,1,0).
Matrix graphene_low_energy_basis();

/// Second-order block -1/gamma (p+^2 sigma+ + p-^2 sigma-) in the low-energy
/// basis, and its prefactor-corrected counterpart
/// [sinc^2(p/gamma) - 2 sinc(2p/gamma)]/gamma (p+^2 sigma+ + p-^2 sigma-).
Matrix graphene_h2(const GrapheneParams& p);
Matrix graphene_h2_improved(const GrapheneParams& p);

/// Endpoint coefficients for the graphene generator in closed form:
/// c1 = -i sinc(2p/gamma), c2 = -1/2 sinc^2(p/gamma).
DownfoldCoefficients graphene_coefficients_closed_form(const GrapheneParams& p);

enum class SweepAxis { kP1, kP2 };

struct GrapheneSweepConfig {
  double gamma = 1.0;
  double p_min = 0.02;
  double p_max = 1.0;
  int points = 100;
  SweepAxis axis = SweepAxis::kP2;
  PmConvention convention = PmConvention::kAsPrinted;
  int threads = 0;
};

/// Relative mismatch of the two mid-spectrum levels of the exact 4x4 problem
/// against the eigenvalues of the 2x2 downfolded blocks, per momentum.
struct GrapheneSweepPoint {
  double p = 0.0;
  double delta_std = 0.0;
  double delta_var = 0.0;
  bool valid = true;  // false when the exact level vanishes (p = 0)
};

struct GrapheneSweepResult {
  std::vector<GrapheneSweepPoint> points;
  GrapheneSweepConfig config;
};

GrapheneSweepResult graphene_sweep(const GrapheneSweepConfig& cfg);

}  // namespace varprop
