#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ratecert/symmat.hpp"

namespace ratecert {

enum class BlockSense { NSD, PSD };

struct ConstraintBlock {
  SymmetricMatrix matrix;
  BlockSense sense = BlockSense::NSD;
  std::string name;
};

/// Small semidefinite feasibility question: find a variable vector making
/// every assembled block hold in its declared sense. The assembler must be
/// affine in the variables; this is probed at solve time.
struct FeasibilityProblem {
  int var_count = 0;  ///< at most 8
  std::function<std::vector<ConstraintBlock>(const std::vector<double>&)> assemble;
  double scale = 1.0;  ///< characteristic variable magnitude; tolerances are relative to it
};

enum class FeasibilityStatus { Feasible, Infeasible, Inconclusive };

std::string status_name(FeasibilityStatus status);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Inconclusive;
  std::vector<double> variables;
  /// max over blocks of the sign-adjusted violating eigenvalue
  /// (lambda_max for NSD blocks, -lambda_min for PSD blocks); <= 0 means
  /// every constraint holds exactly.
  double merit = 0.0;
  long evaluations = 0;
};

struct SolveOptions {
  int restarts = 32;
  int max_iterations = 600;     ///< simplex iterations per restart
  long max_evaluations = 0;     ///< total budget; 0 derives it from restarts
  double eps_feasible = -1.0;   ///< < 0 selects 1e-8 * scale
  double eps_infeasible = -1.0; ///< < 0 selects 1e-5 * scale
  uint64_t seed = 0;
};

/// Merit of a block list; exposed so test oracles can reuse the exact
/// definition the solver minimizes.
double merit_of(const std::vector<ConstraintBlock>& blocks);

/// Multi-start derivative-free simplex descent on the merit function. The
/// merit is a max of eigenvalue maps affine in the variables, hence convex,
/// so restarted local search is reliable at this variable count. Verdicts at
/// the semidefinite boundary are reported as Inconclusive rather than forced.
FeasibilityResult solve(const FeasibilityProblem& problem, const SolveOptions& options = {});

}  // namespace ratecert
