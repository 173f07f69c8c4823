#include "phonoblock/optimal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phonoblock/errors.hpp"

namespace phonoblock {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kSqrt2 = std::numbers::sqrt2;

}  // namespace

const char* branch_name(Branch b) { return b == Branch::kPlus ? "+" : "-"; }

SingleDriveOptimum single_drive_optimal(double j, double gamma, Branch branch) {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(j > gamma / kSqrt2)) {
    throw DomainError("single-drive optimum needs J > gamma/sqrt(2), got J=" +
                      std::to_string(j));
  }
  const double j2 = j * j;
  const double g2 = gamma * gamma;
  const double inner = std::sqrt(9.0 * j2 * j2 + 8.0 * g2 * j2) - g2 - 3.0 * j2;
  const double delta = branch_sign(branch) * 0.5 * std::sqrt(inner);
  const double u = delta * (5.0 * g2 + 4.0 * delta * delta) / (2.0 * (2.0 * j2 - g2));
  return {delta, u, branch};
}

QuadraticCoeffs quadratic_coeffs(double u, double j, double delta, double gamma) {
  QuadraticCoeffs q;
  const Complex dp = delta - 0.5 * gamma * kI;
  q.delta_prime = dp;
  q.a2 = 2.0 * j * j * (dp + 0.5 * u);
  q.a1 = -4.0 * j * dp * (dp + u);
  q.a0 = 2.0 * dp * dp * dp + u * (j * j + 2.0 * dp * dp);
  return q;
}

double TwoDriveOptimum::phi_over_pi() const { return phi / std::numbers::pi; }

std::pair<TwoDriveOptimum, TwoDriveOptimum> two_drive_optimal(double u, double j,
                                                              double delta,
                                                              double gamma) {
  const Complex dp = delta - 0.5 * gamma * kI;
  const Complex denom = j * j * (u + 2.0 * dp);
  if (std::abs(denom) == 0.0) {
    throw DomainError("two-drive optimum: J^2 (U + 2 delta') vanishes");
  }
  const Complex disc = std::sqrt(
      j * j * u * (2.0 * u * dp * dp + 2.0 * dp * dp * dp - j * j * u - 2.0 * j * j * dp));
  const Complex lead = 2.0 * j * dp * (u + dp);

  auto make = [&](Branch b) {
    TwoDriveOptimum out;
    out.branch = b;
    out.root = (lead + branch_sign(b) * disc) / denom;
    out.zeta = std::abs(out.root);
    // root = zeta exp(-i phi); keep phi in (-pi, pi].
    double phi = -std::arg(out.root);
    if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
    out.phi = phi;
    return out;
  };
  return {make(Branch::kPlus), make(Branch::kMinus)};
}

BlockadeMatrix blockade_matrix(const MechParams& p, X22Phase variant) {
  const Complex dp = p.delta - 0.5 * p.gamma * kI;
  const Complex den = dp * dp - p.j * p.j;
  if (std::abs(den) == 0.0) {
    throw DomainError("blockade matrix: (delta - i gamma/2)^2 equals J^2");
  }
  const double o1 = p.omega1;
  const double o2 = p.omega2;
  const double j = p.j;
  const Complex e1 = std::polar(1.0, -p.phi);
  const Complex e2 = std::polar(1.0, -2.0 * p.phi);
  const Complex x22_phase = variant == X22Phase::kAsPrinted ? e1 : e2;

  BlockadeMatrix x;
  x(0, 0) = j;
  x(0, 1) = (j * o1 * o2 * e1 - o1 * o1 * dp) / den;
  x(0, 2) = 0.0;
  x(1, 0) = 2.0 * dp;
  x(1, 1) = (j * (o1 * o1 + o2 * o2 * x22_phase) - 2.0 * o1 * o2 * e1 * dp) / den;
  x(1, 2) = kSqrt2 * j;
  x(2, 0) = j;
  x(2, 1) = (j * o1 * o2 * e1 - o2 * o2 * e2 * dp) / den;
  x(2, 2) = kSqrt2 * (p.delta + p.u - 0.5 * p.gamma * kI);
  return x;
}

Complex determinant_residual(const MechParams& p, X22Phase variant) {
  return blockade_matrix(p, variant).determinant();
}

DeterminantCheck determinant_check(const MechParams& p, X22Phase variant,
                                   double rel_tol) {
  const BlockadeMatrix x = blockade_matrix(p, variant);
  DeterminantCheck out;
  out.det = x.determinant();
  const double m = x.cwiseAbs().maxCoeff();
  out.scale = m * m * m;
  out.relative = out.scale > 0.0 ? std::abs(out.det) / out.scale : 0.0;
  out.passed = out.relative < rel_tol;
  return out;
}

AmplitudeState amplitude_steady_state(const MechParams& p) {
  p.validate();
  const Complex dp = p.delta - 0.5 * p.gamma * kI;
  const Complex dpu = p.delta + p.u - 0.5 * p.gamma * kI;
  const Complex ep = std::polar(1.0, p.phi);
  const Complex em = std::conj(ep);
  const double o1 = p.omega1;
  const double o2 = p.omega2;
  const double j = p.j;

  // Unknowns (C10, C01, C20, C11, C02); C00 = 1 moves to the right side.
  Eigen::Matrix<Complex, 5, 5> m = Eigen::Matrix<Complex, 5, 5>::Zero();
  Eigen::Matrix<Complex, 5, 1> rhs = Eigen::Matrix<Complex, 5, 1>::Zero();

  m(0, 0) = dp;  m(0, 1) = j;  m(0, 2) = kSqrt2 * o1;  m(0, 3) = o2 * ep;
  rhs(0) = -o1;

  m(1, 0) = j;  m(1, 1) = dp;  m(1, 3) = o1;  m(1, 4) = kSqrt2 * o2 * ep;
  rhs(1) = -o2 * em;

  m(2, 0) = kSqrt2 * o1;  m(2, 2) = 2.0 * dpu;  m(2, 3) = kSqrt2 * j;

  m(3, 0) = o2 * em;  m(3, 1) = o1;  m(3, 2) = kSqrt2 * j;  m(3, 3) = 2.0 * dp;
  m(3, 4) = kSqrt2 * j;

  m(4, 1) = kSqrt2 * o2 * em;  m(4, 3) = kSqrt2 * j;  m(4, 4) = 2.0 * dpu;

  Eigen::FullPivLU<Eigen::Matrix<Complex, 5, 5>> lu(m);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularSystem, "amplitude equations are singular");
  }
  const Eigen::Matrix<Complex, 5, 1> c = lu.solve(rhs);

  AmplitudeState s;
  s.c10 = c(0);
  s.c01 = c(1);
  s.c20 = c(2);
  s.c11 = c(3);
  s.c02 = c(4);
  s.outside_weak_drive = p.outside_weak_drive();
  return s;
}

std::pair<Complex, Complex> first_manifold_closed_form(const MechParams& p) {
  const Complex dp = p.delta - 0.5 * p.gamma * kI;
  const Complex den = dp * dp - p.j * p.j;
  if (std::abs(den) == 0.0) {
    throw DomainError("closed form: (delta - i gamma/2)^2 equals J^2");
  }
  const Complex em = std::polar(1.0, -p.phi);
  const Complex c10 = (p.j * p.omega2 * em - p.omega1 * dp) / den;
  const Complex c01 = (p.j * p.omega1 - p.omega2 * em * dp) / den;
  return {c10, c01};
}

double amplitude_g2(const AmplitudeState& state, double floor) {
  const double a = std::abs(state.c10);
  if (!(a > floor)) {
    throw UndefinedCorrelationError("|C10| is below the amplitude floor");
  }
  const double a2 = a * a;
  return 2.0 * std::norm(state.c20) / (a2 * a2);
}

}  // namespace phonoblock
