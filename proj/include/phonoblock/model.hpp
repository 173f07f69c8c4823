#pragma once

#include <optional>
#include <vector>

#include "phonoblock/fock.hpp"

namespace phonoblock {

// Mode slots in the composite space: (b1, b2[, a]).
inline constexpr std::size_t kModeB1 = 0;
inline constexpr std::size_t kModeB2 = 1;
inline constexpr std::size_t kModeCavity = 2;

// Mechanical parameters, all rates in units of gamma. The two drives share
// one rotating frame (equal pump frequencies).
struct MechParams {
  double delta = 0.0;   // detuning omega_m - omega_p
  double u = 0.0;       // Kerr nonlinearity
  double j = 0.0;       // Coulomb coupling
  double omega1 = 0.0;  // drive on b1
  double omega2 = 0.0;  // drive on b2
  double phi = 0.0;     // phase of the b2 drive, radians
  double gamma = 1.0;   // mechanical damping
  double nth = 0.0;     // bath occupation, equal for both resonators

  void validate() const;
  // max(omega1, omega2) > 0.2 gamma.
  bool outside_weak_drive() const;
};

// Linearized optomechanical readout.
struct OmParams {
  double g = 0.0;                     // optomechanical coupling G
  double kappa = 10.0;                // cavity linewidth
  std::optional<double> delta_a;      // cavity detuning; defaults to delta

  void validate() const;
  double cavity_detuning(const MechParams& p) const {
    return delta_a.value_or(p.delta);
  }
  // kappa >= 5 max(G, J, gamma (nth + 1)).
  bool adiabatic(const MechParams& p) const;
};

// Electrostatic geometry of the two charged resonators, SI units.
struct CoulombGeometry {
  double c1 = 0.0, c2 = 0.0;  // gate capacitances [F]
  double v1 = 0.0, v2 = 0.0;  // bias voltages [V]
  double d = 0.0;             // equilibrium separation [m]
  double m1 = 0.0, m2 = 0.0;  // effective masses [kg]
  double omega_m = 0.0;       // mechanical angular frequency [rad/s]
};

// Vectorized Lindblad generator acting on column-stacked density matrices:
// d/dt vec(rho) = L vec(rho).
class Superoperator {
 public:
  Superoperator(std::size_t hilbert_dim, SparseMatrix matrix);

  std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
  std::size_t dim() const noexcept { return hilbert_dim_ * hilbert_dim_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

  Vector apply(const Vector& v) const { return matrix_ * v; }

  // || vec(I)^dagger L ||_inf; zero for a trace-preserving generator.
  double trace_identity_error() const;

 private:
  std::size_t hilbert_dim_;
  SparseMatrix matrix_;
};

struct Collapse {
  OperatorMatrix op;
  double rate = 0.0;
};

OperatorMatrix build_mech_hamiltonian(const MechParams& p,
                                      const HilbertSpace& space);

OperatorMatrix build_total_hamiltonian(const MechParams& p, const OmParams& om,
                                       const HilbertSpace& space);

// Thermal damping of both resonators; adds kappa L[a] when om is given.
std::vector<Collapse> mech_collapse_ops(const MechParams& p,
                                        const HilbertSpace& space);
std::vector<Collapse> total_collapse_ops(const MechParams& p,
                                         const OmParams& om,
                                         const HilbertSpace& space);

// rho' = i[rho, H] + sum rate (C rho C^dagger - {C^dagger C, rho}/2).
Superoperator build_liouvillian(const OperatorMatrix& h,
                                const std::vector<Collapse>& collapse);

// Convenience assembly of the mechanical or full three-mode generator.
Superoperator mech_liouvillian(const MechParams& p, const HilbertSpace& space);
Superoperator total_liouvillian(const MechParams& p, const OmParams& om,
                                const HilbertSpace& space);

// J = k_e C1 V1 C2 V2 / d^3 * sqrt(1 / (m1 m2 omega_m^2)), in rad/s.
double coulomb_coupling(const CoulombGeometry& geom);

// Bose-Einstein occupation 1 / (exp(hbar omega / k_B T) - 1); 0 at T = 0.
double thermal_occupation(double omega_m, double temperature);

}  // namespace phonoblock
