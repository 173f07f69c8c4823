#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace phonoblock {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using Vector = Eigen::VectorXcd;

// Composite dimension at or below which operators are stored densely.
inline constexpr std::size_t kDenseOperatorLimit = 100;

// Tensor product of truncated bosonic modes. Mode 0 is the most significant
// index of the Kronecker product, so |n0 n1 ...> has flat index
// n0*(N1*N2*...) + n1*(N2*...) + ...
class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<int> mode_dims);

  std::size_t num_modes() const noexcept { return dims_.size(); }
  int mode_dim(std::size_t mode) const;
  std::span<const int> mode_dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dim_; }

  // Flat index of the product Fock state with the given occupations.
  std::size_t index(std::span<const int> occupations) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<int> dims_;
  std::size_t dim_ = 1;
};

enum class Storage { kDense, kSparse };

// Square complex matrix on a composite space. Storage is picked from the
// dimension unless forced; the value is immutable once built.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(DenseMatrix m);
  explicit OperatorMatrix(SparseMatrix m);
  OperatorMatrix(DenseMatrix m, Storage storage);
  OperatorMatrix(SparseMatrix m, Storage storage);

  static OperatorMatrix identity(std::size_t dim);
  static OperatorMatrix zero(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Storage storage() const noexcept;
  bool is_sparse() const noexcept { return storage() == Storage::kSparse; }

  Complex coeff(std::size_t row, std::size_t col) const;
  DenseMatrix to_dense() const;
  SparseMatrix to_sparse() const;

  Complex trace() const;
  double max_abs() const;

  OperatorMatrix operator+(const OperatorMatrix& other) const;
  OperatorMatrix operator-(const OperatorMatrix& other) const;
  OperatorMatrix operator*(const OperatorMatrix& other) const;
  OperatorMatrix operator*(Complex scale) const;
  friend OperatorMatrix operator*(Complex scale, const OperatorMatrix& m) {
    return m * scale;
  }

 private:
  void check_same_dim(const OperatorMatrix& other) const;

  std::variant<DenseMatrix, SparseMatrix> data_;
  std::size_t dim_ = 0;
};

// Kronecker product; a's index is the more significant one.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

OperatorMatrix destroy(const HilbertSpace& space, std::size_t mode);
OperatorMatrix create(const HilbertSpace& space, std::size_t mode);
OperatorMatrix number(const HilbertSpace& space, std::size_t mode);
OperatorMatrix identity(const HilbertSpace& space);

OperatorMatrix adjoint(const OperatorMatrix& a);

// Tr(A * rho).
Complex expectation(const OperatorMatrix& rho, const OperatorMatrix& a);

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);
bool is_hermitian(const OperatorMatrix& a, double tol);

// Projector onto a single product Fock state.
OperatorMatrix fock_projector(const HilbertSpace& space,
                              std::span<const int> occupations);

struct DensityCheck {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;

  bool ok(double tol, double psd_tol) const {
    return hermiticity_error <= tol && trace_error <= tol &&
           min_eigenvalue >= -psd_tol;
  }
};

DensityCheck check_density_matrix(const OperatorMatrix& rho);

// Column-stacking vectorization: vec(rho)[r + c*dim] = rho(r, c).
Vector vectorize(const OperatorMatrix& rho);
OperatorMatrix unvectorize(const Vector& v);

}  // namespace phonoblock
