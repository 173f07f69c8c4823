#pragma once

#include <utility>

#include <Eigen/Dense>

#include "phonoblock/fock.hpp"
#include "phonoblock/model.hpp"

namespace phonoblock {

enum class Branch { kPlus, kMinus };

inline double branch_sign(Branch b) { return b == Branch::kPlus ? 1.0 : -1.0; }
const char* branch_name(Branch b);

// Detuning and Kerr strength that cancel the two-phonon amplitude of b1 when
// only b1 is driven. Requires J > gamma / sqrt(2).
struct SingleDriveOptimum {
  double delta_opt = 0.0;
  double u_opt = 0.0;
  Branch branch = Branch::kPlus;
};

SingleDriveOptimum single_drive_optimal(double j, double gamma, Branch branch);

// Coefficients of a2 z^2 + a1 z + a0 = 0 with z = zeta exp(-i phi), the
// blockade condition on the second drive.
struct QuadraticCoeffs {
  Complex a2, a1, a0;
  Complex delta_prime;  // delta - i gamma / 2

  Complex evaluate(Complex z) const { return (a2 * z + a1) * z + a0; }
};

QuadraticCoeffs quadratic_coeffs(double u, double j, double delta, double gamma);

// Amplitude ratio and phase of the second drive at one root.
struct TwoDriveOptimum {
  double zeta = 0.0;  // omega2 / omega1
  double phi = 0.0;   // radians in (-pi, pi]
  Branch branch = Branch::kPlus;
  Complex root;       // zeta exp(-i phi)

  double phi_over_pi() const;
};

// Both roots, (plus, minus). The discriminant uses the principal square root.
std::pair<TwoDriveOptimum, TwoDriveOptimum> two_drive_optimal(double u, double j,
                                                              double delta,
                                                              double gamma);

// Which phase factor multiplies omega2^2 in the middle element of the
// blockade matrix. kAsPrinted uses exp(-i phi); kDoublePhase uses exp(-2 i phi)
// to match the neighbouring row.
enum class X22Phase { kAsPrinted, kDoublePhase };

using BlockadeMatrix = Eigen::Matrix3cd;

// 3x3 matrix acting on (C11, C00, C02) after the first-manifold amplitudes
// are eliminated.
BlockadeMatrix blockade_matrix(const MechParams& p,
                               X22Phase variant = X22Phase::kAsPrinted);

Complex determinant_residual(const MechParams& p,
                             X22Phase variant = X22Phase::kAsPrinted);

struct DeterminantCheck {
  Complex det;
  double scale = 0.0;     // max |x_mn|^3
  double relative = 0.0;  // |det| / scale
  bool passed = false;
};

DeterminantCheck determinant_check(const MechParams& p, X22Phase variant,
                                   double rel_tol = 1e-8);

// Truncated two-excitation ansatz amplitudes with C00 = 1.
struct AmplitudeState {
  Complex c00{1.0, 0.0};
  Complex c10, c01;
  Complex c20, c11, c02;
  bool outside_weak_drive = false;
};

// Stationary solution of the five amplitude equations (thermal occupation is
// ignored).
AmplitudeState amplitude_steady_state(const MechParams& p);

// First-manifold amplitudes in the closed form obtained by neglecting the
// second manifold.
std::pair<Complex, Complex> first_manifold_closed_form(const MechParams& p);

// Weak-drive estimate 2 |C20|^2 / |C10|^4.
double amplitude_g2(const AmplitudeState& state, double floor = 1e-15);

}  // namespace phonoblock
