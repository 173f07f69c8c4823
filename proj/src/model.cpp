#include "phonoblock/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phonoblock/errors.hpp"

namespace phonoblock {

namespace {

constexpr double kHermitianTol = 1e-10;

// CODATA 2018 exact values.
constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kBoltzmann = 1.380649e-23;    // J / K
constexpr double kCoulombConstant = 8.9875517923e9;  // N m^2 / C^2

void require_modes(const HilbertSpace& space, std::size_t n, const char* who) {
  if (space.num_modes() != n) {
    throw DimensionError(std::string(who) + " expects " + std::to_string(n) +
                         " modes, got " + std::to_string(space.num_modes()));
  }
}

// Kerr term U b^dagger b^dagger b b = U n (n - 1).
OperatorMatrix kerr(const HilbertSpace& space, std::size_t mode) {
  const auto n = number(space, mode);
  return n * (n - identity(space));
}

}  // namespace

void MechParams::validate() const {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (nth < 0.0) throw DomainError("nth must be non-negative");
  if (omega1 < 0.0 || omega2 < 0.0) {
    throw DomainError("drive amplitudes must be non-negative");
  }
}

bool MechParams::outside_weak_drive() const {
  return std::max(omega1, omega2) > 0.2 * gamma;
}

void OmParams::validate() const {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
}

bool OmParams::adiabatic(const MechParams& p) const {
  const double slow =
      std::max({std::abs(g), std::abs(p.j), p.gamma * (p.nth + 1.0)});
  return kappa >= 5.0 * slow;
}

// ---------------------------------------------------------------------------

Superoperator::Superoperator(std::size_t hilbert_dim, SparseMatrix matrix)
    : hilbert_dim_(hilbert_dim), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(hilbert_dim_ * hilbert_dim_);
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("superoperator size does not match Hilbert dimension");
  }
  matrix_.makeCompressed();
}

double Superoperator::trace_identity_error() const {
  // vec(I) has ones at positions k*(dim+1); sum those rows of each column.
  const auto stride = static_cast<Eigen::Index>(hilbert_dim_ + 1);
  double worst = 0.0;
  for (Eigen::Index col = 0; col < matrix_.outerSize(); ++col) {
    Complex acc = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) {
      if (it.row() % stride == 0) acc += it.value();
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

// ---------------------------------------------------------------------------

OperatorMatrix build_mech_hamiltonian(const MechParams& p,
                                      const HilbertSpace& space) {
  require_modes(space, 2, "build_mech_hamiltonian");
  const auto b1 = destroy(space, kModeB1);
  const auto b2 = destroy(space, kModeB2);
  const auto b1d = adjoint(b1);
  const auto b2d = adjoint(b2);
  const Complex phase = std::polar(1.0, -p.phi);

  return p.delta * (b1d * b1 + b2d * b2) +
         p.u * (kerr(space, kModeB1) + kerr(space, kModeB2)) +
         p.j * (b1d * b2 + b1 * b2d) + p.omega1 * (b1d + b1) +
         p.omega2 * (phase * b2d + std::conj(phase) * b2);
}

OperatorMatrix build_total_hamiltonian(const MechParams& p, const OmParams& om,
                                       const HilbertSpace& space) {
  require_modes(space, 3, "build_total_hamiltonian");
  const auto b1 = destroy(space, kModeB1);
  const auto b2 = destroy(space, kModeB2);
  const auto a = destroy(space, kModeCavity);
  const auto b1d = adjoint(b1);
  const auto b2d = adjoint(b2);
  const auto ad = adjoint(a);
  const Complex phase = std::polar(1.0, -p.phi);

  return p.delta * (b1d * b1 + b2d * b2) +
         om.cavity_detuning(p) * (ad * a) +
         p.u * (kerr(space, kModeB1) + kerr(space, kModeB2)) +
         p.j * (b1d * b2 + b1 * b2d) + om.g * (ad * b1 + a * b1d) +
         p.omega1 * (b1d + b1) +
         p.omega2 * (phase * b2d + std::conj(phase) * b2);
}

std::vector<Collapse> mech_collapse_ops(const MechParams& p,
                                        const HilbertSpace& space) {
  p.validate();
  const auto b1 = destroy(space, kModeB1);
  const auto b2 = destroy(space, kModeB2);
  std::vector<Collapse> out{{b1, p.gamma * (p.nth + 1.0)},
                            {b2, p.gamma * (p.nth + 1.0)}};
  if (p.nth > 0.0) {
    out.push_back({adjoint(b1), p.gamma * p.nth});
    out.push_back({adjoint(b2), p.gamma * p.nth});
  }
  return out;
}

std::vector<Collapse> total_collapse_ops(const MechParams& p,
                                         const OmParams& om,
                                         const HilbertSpace& space) {
  om.validate();
  auto out = mech_collapse_ops(p, space);
  out.push_back({destroy(space, kModeCavity), om.kappa});
  return out;
}

Superoperator build_liouvillian(const OperatorMatrix& h,
                                const std::vector<Collapse>& collapse) {
  if (!is_hermitian(h, kHermitianTol)) {
    throw Error(ErrorCode::kNonHermitian, "Hamiltonian is not Hermitian");
  }
  const std::size_t dim = h.dim();
  SparseMatrix id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();

  // Column stacking: vec(A X B) = (B^T kron A) vec(X).
  const SparseMatrix hs = h.to_sparse();
  const SparseMatrix ht = hs.transpose();
  const Complex i(0.0, 1.0);
  SparseMatrix l = i * (kron(ht, id) - kron(id, hs));

  for (const auto& c : collapse) {
    if (c.rate < 0.0) throw DomainError("collapse rate must be non-negative");
    if (c.op.dim() != dim) {
      throw DimensionError("collapse operator dimension mismatch");
    }
    if (c.rate == 0.0) continue;
    const SparseMatrix cs = c.op.to_sparse();
    const SparseMatrix cdc = SparseMatrix(cs.adjoint()) * cs;
    const SparseMatrix cdc_t = cdc.transpose();
    const SparseMatrix c_conj = cs.conjugate();
    l += c.rate * (kron(c_conj, cs) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc_t, id));
  }
  l.prune(Complex(0.0, 0.0));
  return Superoperator(dim, std::move(l));
}

Superoperator mech_liouvillian(const MechParams& p, const HilbertSpace& space) {
  return build_liouvillian(build_mech_hamiltonian(p, space),
                           mech_collapse_ops(p, space));
}

Superoperator total_liouvillian(const MechParams& p, const OmParams& om,
                                const HilbertSpace& space) {
  return build_liouvillian(build_total_hamiltonian(p, om, space),
                           total_collapse_ops(p, om, space));
}

double coulomb_coupling(const CoulombGeometry& geom) {
  if (!(geom.d > 0.0)) throw DomainError("separation d must be positive");
  if (!(geom.m1 > 0.0) || !(geom.m2 > 0.0)) {
    throw DomainError("masses must be positive");
  }
  if (!(geom.omega_m > 0.0)) throw DomainError("omega_m must be positive");
  const double charges = geom.c1 * geom.v1 * geom.c2 * geom.v2;
  return kCoulombConstant * charges / (geom.d * geom.d * geom.d) *
         std::sqrt(1.0 / (geom.m1 * geom.m2 * geom.omega_m * geom.omega_m));
}

double thermal_occupation(double omega_m, double temperature) {
  if (!(omega_m > 0.0)) throw DomainError("omega_m must be positive");
  if (temperature < 0.0) throw DomainError("temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  const double x = kHbar * omega_m / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace phonoblock
