#include "phonoblock/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/MatrixFunctions>

#include "phonoblock/correl.hpp"
#include "phonoblock/errors.hpp"

namespace phonoblock {

namespace {

using RealSparse = Eigen::SparseMatrix<double, Eigen::ColMajor>;

double inf_norm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// Reciprocal condition estimate below which the trace-constrained system is
// treated as singular.
constexpr double kSingularRcond = 1e-13;

// Real coordinates of a Hermitian matrix, stored in the column-stacked slot
// layout: slot(i,i) = rho_ii, slot(i,j) = Re rho_ij and slot(j,i) = Im rho_ij
// for i < j.
class HermitianCoords {
 public:
  explicit HermitianCoords(Eigen::Index n) : n_(n) {}

  Eigen::Index slot(Eigen::Index r, Eigen::Index c) const { return r + c * n_; }

  DenseMatrix to_matrix(const Eigen::VectorXd& x) const {
    DenseMatrix rho(n_, n_);
    for (Eigen::Index c = 0; c < n_; ++c) {
      for (Eigen::Index r = 0; r < n_; ++r) {
        if (r == c) {
          rho(r, c) = x(slot(r, r));
        } else if (r < c) {
          rho(r, c) = Complex(x(slot(r, c)), x(slot(c, r)));
        } else {
          rho(r, c) = Complex(x(slot(c, r)), -x(slot(r, c)));
        }
      }
    }
    return rho;
  }

 private:
  Eigen::Index n_;
};

// The Lindblad generator maps Hermitian matrices to Hermitian matrices, so
// it restricts to a real operator on HermitianCoords. The (0,0) equation is
// replaced by the unit-trace constraint.
RealSparse trace_constrained_system(const Superoperator& l) {
  const auto n = static_cast<Eigen::Index>(l.hilbert_dim());
  const HermitianCoords coords(n);
  const SparseMatrix& gen = l.matrix();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(2 * gen.nonZeros() + n));

  for (Eigen::Index col = 0; col < gen.outerSize(); ++col) {
    const Eigen::Index i = col % n;
    const Eigen::Index j = col / n;
    for (SparseMatrix::InnerIterator it(gen, col); it; ++it) {
      const Eigen::Index r = it.row() % n;
      const Eigen::Index c = it.row() / n;
      // The lower triangle of the output is the conjugate of the upper.
      if (r > c || (r == 0 && c == 0)) continue;
      const Complex lv = it.value();
      auto emit = [&](Complex coef, Eigen::Index input) {
        if (r == c) {
          if (coef.real() != 0.0) trips.emplace_back(coords.slot(r, r), input, coef.real());
          return;
        }
        if (coef.real() != 0.0) trips.emplace_back(coords.slot(r, c), input, coef.real());
        if (coef.imag() != 0.0) trips.emplace_back(coords.slot(c, r), input, coef.imag());
      };
      const Complex i_unit(0.0, 1.0);
      if (i == j) {
        emit(lv, coords.slot(i, i));
      } else if (i < j) {
        // rho_ij = x_ij + i x_ji
        emit(lv, coords.slot(i, j));
        emit(i_unit * lv, coords.slot(j, i));
      } else {
        // rho_ij = conj(rho_ji) = x_ji - i x_ij
        emit(lv, coords.slot(j, i));
        emit(-i_unit * lv, coords.slot(i, j));
      }
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) trips.emplace_back(0, coords.slot(k, k), 1.0);

  RealSparse a(n * n, n * n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

Eigen::VectorXd solve_dense(const RealSparse& a, const Eigen::VectorXd& rhs) {
  const Eigen::MatrixXd dense(a);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dense);
  // rcond() is unreliable for exactly zero pivots, so look at them directly.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double ratio = pivots.minCoeff() / pivots.maxCoeff();
  if (!(ratio > kSingularRcond) || !(lu.rcond() > kSingularRcond)) {
    throw NonUniqueSteadyStateError(
        "trace-constrained Liouvillian is singular (pivot ratio " +
        std::to_string(ratio) + "); steady state is not unique");
  }
  return lu.solve(rhs);
}

Eigen::VectorXd solve_sparse(const RealSparse& a, const Eigen::VectorXd& rhs) {
  Eigen::UmfPackLU<RealSparse> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw NonUniqueSteadyStateError(
        "sparse LU reports a singular trace-constrained Liouvillian; steady "
        "state is not unique");
  }
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) {
    throw NonUniqueSteadyStateError("sparse solve failed");
  }
  return x;
}

}  // namespace

double steady_residual(const Superoperator& l, const OperatorMatrix& rho) {
  if (rho.dim() != l.hilbert_dim()) {
    throw DimensionError("state and generator dimensions differ");
  }
  return inf_norm(l.apply(vectorize(rho)));
}

OperatorMatrix steady_state(const Superoperator& l, const SteadyOptions& opts) {
  if (!(opts.residual_tol > 0.0) || !(opts.psd_tol > 0.0)) {
    throw DomainError("steady-state tolerances must be positive");
  }
  const auto n = static_cast<Eigen::Index>(l.hilbert_dim());
  const RealSparse a = trace_constrained_system(l);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n * n);
  rhs(0) = 1.0;

  const Eigen::VectorXd x = l.hilbert_dim() > opts.sparse_threshold
                                ? solve_sparse(a, rhs)
                                : solve_dense(a, rhs);
  if (!x.allFinite()) {
    throw NonUniqueSteadyStateError("steady-state solve produced non-finite values");
  }

  DenseMatrix rho = HermitianCoords(n).to_matrix(x);
  rho /= rho.trace().real();
  OperatorMatrix out(std::move(rho));

  const double residual = steady_residual(l, out);
  if (!(residual < opts.residual_tol)) {
    throw Error(ErrorCode::kResidualNotMet,
                "steady-state residual " + std::to_string(residual) +
                    " exceeds tolerance");
  }
  const DensityCheck check = check_density_matrix(out);
  if (!check.ok(1e-12, opts.psd_tol)) {
    // A trace-one solution that is not positive means the kernel of L was
    // not one-dimensional.
    throw NonUniqueSteadyStateError(
        "steady-state solution is not a density matrix (min eigenvalue " +
        std::to_string(check.min_eigenvalue) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Time propagation

namespace {

Vector rk4_step(const SparseMatrix& l, const Vector& y, double h) {
  const Vector k1 = l * y;
  const Vector k2 = l * (y + 0.5 * h * k1);
  const Vector k3 = l * (y + 0.5 * h * k2);
  const Vector k4 = l * (y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Classical RK4 with step doubling. One full step is compared against two
// half steps; the Richardson-extrapolated value is kept on acceptance.
Vector integrate(const SparseMatrix& l, Vector y, double tau,
                 const EvolveOptions& opts) {
  double t = 0.0;
  double h = std::min(opts.initial_step, tau);
  std::size_t steps = 0;
  while (t < tau) {
    if (++steps > opts.max_steps) {
      throw Error(ErrorCode::kIntegratorFailure,
                  "evolve: step budget exhausted at t=" + std::to_string(t));
    }
    h = std::min(h, tau - t);
    const Vector full = rk4_step(l, y, h);
    const Vector half = rk4_step(l, rk4_step(l, y, 0.5 * h), 0.5 * h);
    const double scale = std::max(inf_norm(y), std::numeric_limits<double>::min());
    const double err = inf_norm(half - full) / 15.0 / scale;
    if (err <= opts.local_tol) {
      y = half + (half - full) / 15.0;
      t += h;
      const double grow = err == 0.0 ? 2.0 : 0.9 * std::pow(opts.local_tol / err, 0.2);
      h *= std::clamp(grow, 0.5, 2.0);
    } else {
      h *= std::clamp(0.9 * std::pow(opts.local_tol / err, 0.2), 0.1, 0.5);
      if (h < opts.min_step) {
        throw Error(ErrorCode::kIntegratorFailure,
                    "evolve: step size underflow at t=" + std::to_string(t));
      }
    }
  }
  return y;
}

}  // namespace

Vector evolve_vec(const Superoperator& l, const Vector& v0, double tau,
                  const EvolveOptions& opts) {
  if (tau < 0.0) throw DomainError("evolve: tau must be non-negative");
  if (v0.size() != static_cast<Eigen::Index>(l.dim())) {
    throw DimensionError("evolve: state size does not match generator");
  }
  if (tau == 0.0) return v0;
  if (l.dim() <= opts.dense_limit) {
    const DenseMatrix gen = DenseMatrix(l.matrix()) * Complex(tau, 0.0);
    const DenseMatrix prop = gen.exp();
    return prop * v0;
  }
  return integrate(l.matrix(), v0, tau, opts);
}

OperatorMatrix evolve(const Superoperator& l, const OperatorMatrix& rho0,
                      double tau, const EvolveOptions& opts) {
  if (rho0.dim() != l.hilbert_dim()) {
    throw DimensionError("evolve: state and generator dimensions differ");
  }
  return unvectorize(evolve_vec(l, vectorize(rho0), tau, opts));
}

// ---------------------------------------------------------------------------
// Truncation check

Superoperator assemble(const ModelSpec& model, const HilbertSpace& space) {
  if (model.om) return total_liouvillian(model.mech, *model.om, space);
  return mech_liouvillian(model.mech, space);
}

namespace {

struct Snapshot {
  double g2_b = std::numeric_limits<double>::quiet_NaN();
  double g2_a = std::numeric_limits<double>::quiet_NaN();
  double n_b1 = 0.0, n_b2 = 0.0, n_a = 0.0;
};

Snapshot observe(const ModelSpec& model, const std::vector<int>& dims) {
  const HilbertSpace space(dims);
  SteadyOptions opts;
  opts.truncation_check = false;
  const auto rho = steady_state(assemble(model, space), opts);
  Snapshot s;
  s.n_b1 = occupation(rho, space, kModeB1);
  s.n_b2 = occupation(rho, space, kModeB2);
  try {
    s.g2_b = g2_zero(rho, space, kModeB1);
  } catch (const UndefinedCorrelationError&) {
  }
  if (model.om) {
    s.n_a = occupation(rho, space, kModeCavity);
    try {
      s.g2_a = photon_g2_zero(rho, space);
    } catch (const UndefinedCorrelationError&) {
    }
  }
  return s;
}

double rel_change(double base, double refined) {
  if (std::isnan(base) && std::isnan(refined)) return 0.0;
  if (std::isnan(base) || std::isnan(refined)) {
    return std::numeric_limits<double>::infinity();
  }
  if (base == refined) return 0.0;
  // Values under the occupancy floor are roundoff around zero.
  if (std::abs(base) < kOccupancyFloor && std::abs(refined) < kOccupancyFloor) {
    return 0.0;
  }
  const double denom = std::max(std::abs(base), std::abs(refined));
  return std::abs(refined - base) / denom;
}

}  // namespace

ConvergenceReport convergence_check(const ModelSpec& model,
                                    const std::vector<int>& base_dims,
                                    double threshold) {
  ConvergenceReport report;
  report.base_dims = base_dims;
  report.threshold = threshold;
  report.refined_dims = base_dims;
  for (int& d : report.refined_dims) ++d;

  Snapshot base, refined;
  try {
    base = observe(model, report.base_dims);
    refined = observe(model, report.refined_dims);
  } catch (const Error& e) {
    report.entries.push_back({std::string("solve failed: ") + e.what(), 0.0,
                              0.0, std::numeric_limits<double>::infinity()});
    report.max_rel_change = std::numeric_limits<double>::infinity();
    report.converged = false;
    return report;
  }

  auto add = [&](const char* name, double b, double r) {
    report.entries.push_back({name, b, r, rel_change(b, r)});
  };
  add("g2_b", base.g2_b, refined.g2_b);
  add("n_b1", base.n_b1, refined.n_b1);
  add("n_b2", base.n_b2, refined.n_b2);
  if (model.om) {
    add("g2_a", base.g2_a, refined.g2_a);
    add("n_a", base.n_a, refined.n_a);
  }
  for (const auto& e : report.entries) {
    report.max_rel_change = std::max(report.max_rel_change, e.rel_change);
  }
  report.converged = report.max_rel_change <= threshold;
  return report;
}

}  // namespace phonoblock
