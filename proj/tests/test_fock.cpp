#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phonoblock/errors.hpp"
#include "phonoblock/fock.hpp"

using namespace phonoblock;

TEST_CASE("hilbert space indexing puts mode 0 first") {
  const HilbertSpace space({3, 4, 2});
  CHECK(space.dim() == 24);
  CHECK(space.num_modes() == 3);
  const std::vector<int> occ{2, 1, 1};
  CHECK(space.index(occ) == 2 * 8 + 1 * 2 + 1);
  CHECK_THROWS_AS(HilbertSpace({3, 1}), DomainError);
  CHECK_THROWS_AS(HilbertSpace(std::vector<int>{}), DomainError);
  const std::vector<int> bad{3, 0, 0};
  CHECK_THROWS_AS((void)space.index(bad), DomainError);
}

TEST_CASE("storage switches at the dense limit") {
  CHECK(destroy(HilbertSpace({10, 10}), 0).storage() == Storage::kDense);
  CHECK(destroy(HilbertSpace({11, 10}), 0).storage() == Storage::kSparse);
  const auto forced = OperatorMatrix(DenseMatrix::Identity(4, 4), Storage::kSparse);
  CHECK(forced.is_sparse());
  CHECK(forced.trace() == Complex(4.0, 0.0));
}

TEST_CASE("ladder operators match the explicit Kronecker construction") {
  const HilbertSpace space({3, 4});
  const auto a0 = oracle::kron(oracle::annihilation(3), oracle::Mat::Identity(4, 4));
  const auto a1 = oracle::kron(oracle::Mat::Identity(3, 3), oracle::annihilation(4));
  CHECK((destroy(space, 0).to_dense() - a0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((destroy(space, 1).to_dense() - a1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((create(space, 1).to_dense() - a1.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((number(space, 0).to_dense() - a0.adjoint() * a0).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(destroy(space, 2), DomainError);
}

TEST_CASE("commutator is identity except at the top level") {
  for (int n : {2, 5, 8}) {
    const HilbertSpace space({n});
    const auto b = destroy(space, 0);
    const auto comm = (b * adjoint(b) - adjoint(b) * b).to_dense();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double expect = r == c ? (r == n - 1 ? 1.0 - n : 1.0) : 0.0;
        CHECK(std::abs(comm(r, c) - expect) < 1e-14);
      }
    }
  }
}

TEST_CASE("operators on different modes commute") {
  const HilbertSpace space({4, 3, 2});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto x = destroy(space, i) * destroy(space, j);
      const auto y = destroy(space, j) * destroy(space, i);
      CHECK(max_abs_diff(x, y) == 0.0);
      CHECK(max_abs_diff(destroy(space, i) * create(space, j),
                         create(space, j) * destroy(space, i)) == 0.0);
    }
  }
}

TEST_CASE("expectation values") {
  const HilbertSpace space({5});
  const auto n = number(space, 0);
  const std::vector<int> zero{0}, one{1};
  CHECK(expectation(fock_projector(space, zero), n) == Complex(0.0, 0.0));
  CHECK(expectation(fock_projector(space, one), n).real() == doctest::Approx(1.0));

  // Thermal n = 0.5 on a space large enough that the tail is negligible.
  const HilbertSpace big({60});
  const OperatorMatrix rho(oracle::thermal(60, 0.5));
  CHECK(expectation(rho, number(big, 0)).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trace of random density matrices through expectation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + trial * 13;  // crosses the dense limit
    const OperatorMatrix rho(oracle::random_density(dim, rng));
    const auto id = OperatorMatrix::identity(rho.dim());
    CHECK(std::abs(expectation(rho, id) - 1.0) < 1e-12);
    CHECK(check_density_matrix(rho).ok(1e-12, 1e-12));
  }
}

TEST_CASE("dense and sparse arithmetic agree") {
  std::mt19937 rng(3);
  const int dim = 12;
  const oracle::Mat a = oracle::random_density(dim, rng);
  const oracle::Mat b = oracle::random_density(dim, rng) * oracle::Cd(0.0, 2.0);
  const OperatorMatrix ad(a, Storage::kDense), as(a, Storage::kSparse);
  const OperatorMatrix bd(b, Storage::kDense), bs(b, Storage::kSparse);
  CHECK(max_abs_diff(ad * bd, as * bs) < 1e-14);
  CHECK(max_abs_diff(ad + bs, as + bd) < 1e-14);
  CHECK(max_abs_diff(ad - bd, as - bs) < 1e-14);
  CHECK((adjoint(as).to_dense() - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(expectation(as, bs) - (b * a).trace()) < 1e-13);
  CHECK_THROWS_AS(ad + OperatorMatrix::identity(3), DimensionError);
}

TEST_CASE("vectorization is column stacking and round-trips") {
  DenseMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const auto v = vectorize(OperatorMatrix(m));
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(v(3) == Complex(4.0));
  CHECK(max_abs_diff(unvectorize(v), OperatorMatrix(m)) == 0.0);
  CHECK_THROWS_AS(unvectorize(Vector::Zero(5)), DimensionError);
}

TEST_CASE("density check flags broken matrices") {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  const auto neg = check_density_matrix(OperatorMatrix(m));
  CHECK(neg.min_eigenvalue == doctest::Approx(-0.2));
  CHECK_FALSE(neg.ok(1e-12, 1e-9));
  m(1, 1) = 0.0;
  m(0, 1) = 0.1;
  CHECK(check_density_matrix(OperatorMatrix(m)).hermiticity_error > 0.0);
  CHECK_FALSE(is_hermitian(OperatorMatrix(m), 1e-12));
}
