#include "phonoblock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phonoblock/errors.hpp"

namespace phonoblock {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNonHermitian: return "non_hermitian";
    case ErrorCode::kNonUniqueSteadyState: return "non_unique_steady_state";
    case ErrorCode::kResidualNotMet: return "residual_not_met";
    case ErrorCode::kIntegratorFailure: return "integrator_failure";
    case ErrorCode::kUndefinedCorrelation: return "undefined_correlation";
    case ErrorCode::kComplexCorrelation: return "complex_correlation";
    case ErrorCode::kSingularSystem: return "singular_system";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace::HilbertSpace(std::vector<int> mode_dims)
    : dims_(std::move(mode_dims)) {
  if (dims_.empty()) throw DomainError("HilbertSpace needs at least one mode");
  for (int n : dims_) {
    if (n < 2) {
      throw DomainError("mode truncation must be >= 2, got " +
                        std::to_string(n));
    }
    dim_ *= static_cast<std::size_t>(n);
  }
}

int HilbertSpace::mode_dim(std::size_t mode) const {
  if (mode >= dims_.size()) {
    throw DomainError("mode index " + std::to_string(mode) + " out of range");
  }
  return dims_[mode];
}

std::size_t HilbertSpace::index(std::span<const int> occupations) const {
  if (occupations.size() != dims_.size()) {
    throw DimensionError("occupation list does not match mode count");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (occupations[k] < 0 || occupations[k] >= dims_[k]) {
      throw DomainError("occupation outside truncation");
    }
    idx = idx * static_cast<std::size_t>(dims_[k]) +
          static_cast<std::size_t>(occupations[k]);
  }
  return idx;
}

// ---------------------------------------------------------------------------
// OperatorMatrix

namespace {

Storage auto_storage(std::size_t dim) {
  return dim <= kDenseOperatorLimit ? Storage::kDense : Storage::kSparse;
}

SparseMatrix sparse_identity(std::size_t dim) {
  SparseMatrix id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return id;
}

}  // namespace

OperatorMatrix::OperatorMatrix(DenseMatrix m) {
  const Storage storage = auto_storage(static_cast<std::size_t>(m.rows()));
  *this = OperatorMatrix(std::move(m), storage);
}

OperatorMatrix::OperatorMatrix(SparseMatrix m) {
  const Storage storage = auto_storage(static_cast<std::size_t>(m.rows()));
  *this = OperatorMatrix(std::move(m), storage);
}

OperatorMatrix::OperatorMatrix(DenseMatrix m, Storage storage) {
  if (m.rows() != m.cols()) throw DimensionError("operator must be square");
  dim_ = static_cast<std::size_t>(m.rows());
  if (storage == Storage::kDense) {
    data_ = std::move(m);
  } else {
    data_ = SparseMatrix(m.sparseView());
  }
}

OperatorMatrix::OperatorMatrix(SparseMatrix m, Storage storage) {
  if (m.rows() != m.cols()) throw DimensionError("operator must be square");
  dim_ = static_cast<std::size_t>(m.rows());
  if (storage == Storage::kDense) {
    data_ = DenseMatrix(m);
  } else {
    m.makeCompressed();
    data_ = std::move(m);
  }
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
  return OperatorMatrix(sparse_identity(dim));
}

OperatorMatrix OperatorMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return OperatorMatrix(SparseMatrix(n, n));
}

Storage OperatorMatrix::storage() const noexcept {
  return std::holds_alternative<DenseMatrix>(data_) ? Storage::kDense
                                                    : Storage::kSparse;
}

Complex OperatorMatrix::coeff(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw DimensionError("entry out of range");
  const auto r = static_cast<Eigen::Index>(row);
  const auto c = static_cast<Eigen::Index>(col);
  if (const auto* d = std::get_if<DenseMatrix>(&data_)) return (*d)(r, c);
  return std::get<SparseMatrix>(data_).coeff(r, c);
}

DenseMatrix OperatorMatrix::to_dense() const {
  if (const auto* d = std::get_if<DenseMatrix>(&data_)) return *d;
  return DenseMatrix(std::get<SparseMatrix>(data_));
}

SparseMatrix OperatorMatrix::to_sparse() const {
  if (const auto* s = std::get_if<SparseMatrix>(&data_)) return *s;
  SparseMatrix s = std::get<DenseMatrix>(data_).sparseView();
  s.makeCompressed();
  return s;
}

Complex OperatorMatrix::trace() const {
  if (const auto* d = std::get_if<DenseMatrix>(&data_)) return d->trace();
  const auto& s = std::get<SparseMatrix>(data_);
  Complex t = 0.0;
  for (Eigen::Index k = 0; k < s.rows(); ++k) t += s.coeff(k, k);
  return t;
}

double OperatorMatrix::max_abs() const {
  if (const auto* d = std::get_if<DenseMatrix>(&data_)) {
    return d->size() == 0 ? 0.0 : d->cwiseAbs().maxCoeff();
  }
  const auto& s = std::get<SparseMatrix>(data_);
  double m = 0.0;
  for (Eigen::Index k = 0; k < s.nonZeros(); ++k) {
    m = std::max(m, std::abs(s.valuePtr()[k]));
  }
  return m;
}

void OperatorMatrix::check_same_dim(const OperatorMatrix& other) const {
  if (dim_ != other.dim_) {
    throw DimensionError("operator dimensions differ: " + std::to_string(dim_) +
                         " vs " + std::to_string(other.dim_));
  }
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
  check_same_dim(other);
  if (!is_sparse() && !other.is_sparse()) {
    return OperatorMatrix(DenseMatrix(to_dense() + other.to_dense()));
  }
  return OperatorMatrix(SparseMatrix(to_sparse() + other.to_sparse()));
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
  check_same_dim(other);
  if (!is_sparse() && !other.is_sparse()) {
    return OperatorMatrix(DenseMatrix(to_dense() - other.to_dense()));
  }
  return OperatorMatrix(SparseMatrix(to_sparse() - other.to_sparse()));
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
  check_same_dim(other);
  if (!is_sparse() && !other.is_sparse()) {
    return OperatorMatrix(DenseMatrix(to_dense() * other.to_dense()));
  }
  return OperatorMatrix(SparseMatrix(to_sparse() * other.to_sparse()));
}

OperatorMatrix OperatorMatrix::operator*(Complex scale) const {
  if (const auto* d = std::get_if<DenseMatrix>(&data_)) {
    return OperatorMatrix(DenseMatrix(*d * scale));
  }
  return OperatorMatrix(SparseMatrix(std::get<SparseMatrix>(data_) * scale));
}

// ---------------------------------------------------------------------------
// Ladder operators

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Eigen::Index kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(ia.row() * b.rows() + ib.row(),
                             ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
        }
      }
    }
  }
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

namespace {

SparseMatrix single_mode_destroy(int n) {
  SparseMatrix a(n, n);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int k = 1; k < n; ++k) trips.emplace_back(k - 1, k, std::sqrt(double(k)));
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace

OperatorMatrix destroy(const HilbertSpace& space, std::size_t mode) {
  if (mode >= space.num_modes()) {
    throw DomainError("mode index " + std::to_string(mode) + " out of range");
  }
  SparseMatrix acc = sparse_identity(1);
  for (std::size_t k = 0; k < space.num_modes(); ++k) {
    const int n = space.mode_dim(k);
    acc = kron(acc, k == mode ? single_mode_destroy(n)
                              : sparse_identity(static_cast<std::size_t>(n)));
  }
  return OperatorMatrix(std::move(acc));
}

OperatorMatrix create(const HilbertSpace& space, std::size_t mode) {
  return adjoint(destroy(space, mode));
}

OperatorMatrix number(const HilbertSpace& space, std::size_t mode) {
  const auto b = destroy(space, mode);
  return adjoint(b) * b;
}

OperatorMatrix identity(const HilbertSpace& space) {
  return OperatorMatrix::identity(space.dim());
}

OperatorMatrix adjoint(const OperatorMatrix& a) {
  if (a.is_sparse()) return OperatorMatrix(SparseMatrix(a.to_sparse().adjoint()));
  return OperatorMatrix(DenseMatrix(a.to_dense().adjoint()));
}

Complex expectation(const OperatorMatrix& rho, const OperatorMatrix& a) {
  if (rho.dim() != a.dim()) {
    throw DimensionError("expectation: operator and state dimensions differ");
  }
  // Tr(A rho) = sum_{ij} A_ij rho_ji, without forming the product.
  const SparseMatrix as = a.to_sparse();
  Complex acc = 0.0;
  if (!rho.is_sparse()) {
    const DenseMatrix r = rho.to_dense();
    for (Eigen::Index k = 0; k < as.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(as, k); it; ++it) {
        acc += it.value() * r(it.col(), it.row());
      }
    }
    return acc;
  }
  const SparseMatrix r = rho.to_sparse();
  for (Eigen::Index k = 0; k < as.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(as, k); it; ++it) {
      acc += it.value() * r.coeff(it.col(), it.row());
    }
  }
  return acc;
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  return (a - b).max_abs();
}

bool is_hermitian(const OperatorMatrix& a, double tol) {
  return max_abs_diff(a, adjoint(a)) <= tol;
}

OperatorMatrix fock_projector(const HilbertSpace& space,
                              std::span<const int> occupations) {
  const auto idx = static_cast<Eigen::Index>(space.index(occupations));
  const auto n = static_cast<Eigen::Index>(space.dim());
  SparseMatrix p(n, n);
  p.insert(idx, idx) = 1.0;
  return OperatorMatrix(std::move(p));
}

DensityCheck check_density_matrix(const OperatorMatrix& rho) {
  DensityCheck out;
  const DenseMatrix r = rho.to_dense();
  out.hermiticity_error =
      r.size() == 0 ? 0.0 : (r - r.adjoint()).cwiseAbs().maxCoeff();
  out.trace_error = std::abs(r.trace() - Complex(1.0, 0.0));
  const DenseMatrix herm = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(herm, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  return out;
}

Vector vectorize(const OperatorMatrix& rho) {
  const DenseMatrix r = rho.to_dense();
  return Eigen::Map<const Vector>(r.data(), r.size());
}

OperatorMatrix unvectorize(const Vector& v) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (n * n != v.size()) throw DimensionError("vector length is not a square");
  return OperatorMatrix(DenseMatrix(Eigen::Map<const DenseMatrix>(v.data(), n, n)));
}

}  // namespace phonoblock
