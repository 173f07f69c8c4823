#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phonoblock/fock.hpp"
#include "phonoblock/model.hpp"

namespace phonoblock {

// Hilbert dimension above which steady-state solves use sparse LU. Below it
// the (dim^2)-sized real system is factored densely.
inline constexpr std::size_t kSparseSolveThreshold = 16;

struct SteadyOptions {
  double residual_tol = 1e-10;
  double psd_tol = 1e-9;
  // Consulted by callers that know the model (sweeps); steady_state itself
  // only sees the generator.
  bool truncation_check = true;
  std::size_t sparse_threshold = kSparseSolveThreshold;
};

// Unique stationary state of L, normalized to unit trace. Throws
// NonUniqueSteadyStateError when the trace-constrained system is singular
// and Error(kResidualNotMet) when post-hoc checks fail.
OperatorMatrix steady_state(const Superoperator& l,
                            const SteadyOptions& opts = {});

// Infinity norm of L vec(rho), recomputed from scratch.
double steady_residual(const Superoperator& l, const OperatorMatrix& rho);

struct EvolveOptions {
  double local_tol = 1e-10;
  // Generators with at most this many rows use a dense matrix exponential.
  std::size_t dense_limit = 256;
  double initial_step = 0.01;
  double min_step = 1e-12;
  std::size_t max_steps = 5'000'000;
};

// exp(L tau) vec(rho0). rho0 need not have unit trace.
OperatorMatrix evolve(const Superoperator& l, const OperatorMatrix& rho0,
                      double tau, const EvolveOptions& opts = {});

// Vector form, used by the regression-theorem propagation.
Vector evolve_vec(const Superoperator& l, const Vector& v0, double tau,
                  const EvolveOptions& opts = {});

// Parameter set whose truncation is being checked. Three-mode when om is set.
struct ModelSpec {
  MechParams mech;
  std::optional<OmParams> om;
};

struct ConvergenceEntry {
  std::string name;
  double base = 0.0;
  double refined = 0.0;
  double rel_change = 0.0;
};

struct ConvergenceReport {
  std::vector<int> base_dims;
  std::vector<int> refined_dims;
  std::vector<ConvergenceEntry> entries;
  double max_rel_change = 0.0;
  double threshold = 1e-3;
  bool converged = true;
};

// Re-solves with every mode truncation raised by one and compares g2(0) and
// occupations. Never throws for numerical trouble; it reports it instead.
ConvergenceReport convergence_check(const ModelSpec& model,
                                    const std::vector<int>& base_dims,
                                    double threshold = 1e-3);

Superoperator assemble(const ModelSpec& model, const HilbertSpace& space);

}  // namespace phonoblock
