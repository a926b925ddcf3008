#include "ttrpca/tensor.hpp"

#include "test_oracles.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace ttrpca;

namespace {

// 2x2x2 tensor with entry (i,j,l) = 4l + 2j + i; under first-index-fastest
// storage the flat buffer is just 0..7.
DenseTensor counting_cube() {
  Vector v(8);
  for (Index i = 0; i < 8; ++i) v[i] = static_cast<double>(i);
  return DenseTensor({2, 2, 2}, v);
}

}  // namespace

TEST_SUITE("tensor_core") {

TEST_CASE("constructor validates extents and data length") {
  CHECK_THROWS_AS(DenseTensor({5}), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor({2, 2}, Vector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor({2, 2, 2, 2, 2, 2, 2, 2, 2}), std::invalid_argument);
  CHECK(DenseTensor({3, 1, 4}).size() == 12);
}

TEST_CASE("mode_unfold of the counting cube") {
  const DenseTensor t = counting_cube();
  const Matrix m = mode_unfold(t, 0);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 4);
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(0, 2) == 4.0);
  CHECK(m(0, 3) == 6.0);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(1, 3) == 7.0);

  CHECK_THROWS_AS(mode_unfold(t, 3), std::invalid_argument);
  CHECK_THROWS_AS(mode_unfold(t, -1), std::invalid_argument);
}

TEST_CASE("mode_unfold of an order-2 tensor is the matrix itself") {
  std::mt19937 gen(7);
  const DenseTensor t = oracle::gaussian_tensor({3, 5}, gen);
  const Matrix m0 = mode_unfold(t, 0);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 5; ++j) {
      CHECK(m0(i, j) == t(i, j));
    }
  }
}

TEST_CASE("mode_unfold matches the definitional oracle") {
  std::mt19937 gen(11);
  const DenseTensor t = oracle::gaussian_tensor({3, 4, 5}, gen);
  for (Index k = 0; k < 3; ++k) {
    CHECK(oracle::rel_err(mode_unfold(t, k), oracle::naive_mode_unfold(t, k)) == 0.0);
  }
}

TEST_CASE("mode_fold inverts mode_unfold exactly") {
  std::mt19937 gen(13);
  SUBCASE("3x4x5 at every mode") {
    const DenseTensor t = oracle::gaussian_tensor({3, 4, 5}, gen);
    for (Index k = 0; k < 3; ++k) {
      const DenseTensor back = mode_fold(mode_unfold(t, k), k, t.dims());
      CHECK((back.values() - t.values()).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }
  SUBCASE("2x3x4 at every mode") {
    const DenseTensor t = oracle::gaussian_tensor({2, 3, 4}, gen);
    for (Index k = 0; k < 3; ++k) {
      const DenseTensor back = mode_fold(mode_unfold(t, k), k, t.dims());
      CHECK((back.values() - t.values()).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }
  SUBCASE("counting cube round trip") {
    const DenseTensor t = counting_cube();
    const DenseTensor back = mode_fold(mode_unfold(t, 0), 0, t.dims());
    CHECK((back.values() - t.values()).lpNorm<Eigen::Infinity>() == 0.0);
  }
  SUBCASE("1xN row fold") {
    Matrix row(1, 4);
    row << 1, 2, 3, 4;
    const DenseTensor t = mode_fold(row, 0, {1, 4});
    CHECK(t(0, 2) == 3.0);
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(mode_fold(Matrix::Zero(2, 5), 0, {2, 2, 2}),
                    std::invalid_argument);
  }
}

TEST_CASE("tt_unfold is a reshape of the column-major buffer") {
  const DenseTensor t = counting_cube();
  const Matrix m = tt_unfold(t, 1);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 4);
  CHECK(m(0, 3) == 6.0);
  CHECK(m(1, 0) == 1.0);

  std::mt19937 gen(17);
  const DenseTensor o2 = oracle::gaussian_tensor({4, 6}, gen);
  CHECK(oracle::rel_err(tt_unfold(o2, 1), mode_unfold(o2, 0)) == 0.0);

  CHECK_THROWS_AS(tt_unfold(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(tt_unfold(t, 3), std::invalid_argument);
}

TEST_CASE("tt_unfold matches the definitional oracle and folds back") {
  std::mt19937 gen(19);
  const DenseTensor t = oracle::gaussian_tensor({3, 3, 3, 3}, gen);
  for (Index k = 1; k < 4; ++k) {
    CHECK(oracle::rel_err(tt_unfold(t, k), oracle::naive_tt_unfold(t, k)) == 0.0);
    const DenseTensor back = tt_fold(tt_unfold(t, k), k, t.dims());
    CHECK((back.values() - t.values()).lpNorm<Eigen::Infinity>() == 0.0);
  }
  CHECK_THROWS_AS(tt_fold(Matrix::Zero(5, 2), 1, {3, 3}), std::invalid_argument);
}

TEST_CASE("mode_product basics") {
  std::mt19937 gen(23);
  const DenseTensor t = oracle::gaussian_tensor({3, 4, 5}, gen);

  SUBCASE("identity leaves the tensor unchanged") {
    const DenseTensor r = mode_product(t, Matrix::Identity(4, 4), 1);
    CHECK((r.values() - t.values()).lpNorm<Eigen::Infinity>() == 0.0);
  }
  SUBCASE("all-ones row sums along the mode") {
    const DenseTensor r = mode_product(t, Matrix::Ones(1, 4), 1);
    REQUIRE(r.dims() == std::vector<Index>{3, 1, 5});
    double want = 0.0;
    for (Index j = 0; j < 4; ++j) want += t(2, j, 3);
    CHECK(r(2, 0, 3) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("matches entrywise contraction oracle") {
    const Matrix m = oracle::gaussian(2, 4, gen);
    const DenseTensor r = mode_product(t, m, 1);
    REQUIRE(r.dims() == std::vector<Index>{3, 2, 5});
    for (Index i = 0; i < 3; ++i) {
      for (Index a = 0; a < 2; ++a) {
        for (Index l = 0; l < 5; ++l) {
          double want = 0.0;
          for (Index j = 0; j < 4; ++j) want += m(a, j) * t(i, j, l);
          CHECK(r(i, a, l) == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("unfolding identity holds to machine precision") {
    const Matrix m = oracle::gaussian(6, 5, gen);
    const DenseTensor r = mode_product(t, m, 2);
    CHECK(oracle::rel_err(mode_unfold(r, 2), Matrix(m * mode_unfold(t, 2))) < 1e-14);
  }
  SUBCASE("inner dimension mismatch throws") {
    CHECK_THROWS_AS(mode_product(t, Matrix::Zero(2, 3), 1), std::invalid_argument);
  }
}

TEST_CASE("kron") {
  SUBCASE("identities") {
    CHECK(oracle::rel_err(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                          Matrix(Matrix::Identity(6, 6))) == 0.0);
  }
  SUBCASE("column times row") {
    Matrix a(2, 1), b(1, 2);
    a << 1, 1;
    b << 1, -1;
    Matrix want(2, 2);
    want << 1, -1, 1, -1;
    CHECK(oracle::rel_err(kron(a, b), want) == 0.0);
  }
  SUBCASE("kron of orthonormal factors has orthonormal columns") {
    std::mt19937 gen(29);
    const Matrix u = oracle::random_orthonormal(6, 3, gen);
    const Matrix v = oracle::random_orthonormal(5, 2, gen);
    const Matrix k = kron(u, v);
    CHECK((k.transpose() * k - Matrix::Identity(6, 6)).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("split unfolding of a factored tensor separates into Kronecker blocks") {
  // tt_unfold(core x_1 U_1 ... x_K U_K, k)
  //   == (U_k (x) ... (x) U_1) tt_unfold(core, k) (U_K (x) ... (x) U_{k+1})^T
  std::mt19937 gen(31);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<Index> dims = {4, 5, 3, 4};
    const std::vector<Index> ranks = {2, 3, 2, 3};
    std::vector<Matrix> factors;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      factors.push_back(oracle::random_orthonormal(dims[k], ranks[k], gen));
    }
    const DenseTensor core = oracle::gaussian_tensor(ranks, gen);
    const DenseTensor full = mode_product_chain(core, factors, false);

    for (Index k = 1; k < 4; ++k) {
      Matrix left = factors[static_cast<std::size_t>(k - 1)];
      for (Index j = k - 2; j >= 0; --j) {
        left = kron(left, factors[static_cast<std::size_t>(j)]);
      }
      Matrix right = factors.back();
      for (Index j = 2; j >= k; --j) {
        right = kron(right, factors[static_cast<std::size_t>(j)]);
      }
      const Matrix want = left * tt_unfold(core, k) * right.transpose();
      CHECK(oracle::rel_err(tt_unfold(full, k), want) < 1e-10);
    }
  }
}

}  // TEST_SUITE
