#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wavegal/sparse.hpp"

using namespace wavegal;

namespace {

SparseMatrix from_dense(const std::vector<std::vector<double>>& d, double drop = 0.0) {
  const int n = static_cast<int>(d.size());
  SparseMatrix::Builder b(n, drop);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] != 0.0) b.add(i, j, d[i][j]);
  return b.finish();
}

}  // namespace

TEST_CASE("builder round-trips a dense matrix") {
  const std::vector<std::vector<double>> d = {{2.0, 1.0, 0.0}, {1.0, 3.0, -1.0}, {0.0, -1.0, 4.0}};
  const SparseMatrix a = from_dense(d);
  CHECK(a.dim() == 3);
  CHECK(a.nnz() == 7);
  CHECK(a.at(0, 0) == 2.0);
  CHECK(a.at(0, 2) == 0.0);
  CHECK(a.at(2, 1) == -1.0);
  CHECK(a.to_dense() == d);
  const std::vector<double> diag = a.diagonal();
  CHECK(diag == std::vector<double>{2.0, 3.0, 4.0});
}

TEST_CASE("multiply matches a hand computation") {
  const SparseMatrix a = from_dense({{2.0, 1.0}, {1.0, 2.0}});
  const std::vector<double> y = a.multiply({1.0, 1.0});
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[1] == doctest::Approx(3.0));
  CHECK_THROWS_AS(a.multiply(std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("multiply matches dense product on random matrices") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(0.3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 20;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (keep(rng)) d[i][j] = u(rng);
    const SparseMatrix a = from_dense(d);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    const std::vector<double> y = a.multiply(x);
    for (int i = 0; i < n; ++i) {
      double want = 0.0;
      for (int j = 0; j < n; ++j) want += d[i][j] * x[j];
      CHECK(y[i] == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetry error") {
  CHECK(from_dense({{2.0, 1.0}, {1.0, 2.0}}).symmetry_error() == doctest::Approx(0.0));
  CHECK(from_dense({{2.0, 1.0}, {1.5, 2.0}}).symmetry_error() == doctest::Approx(0.5));
}

TEST_CASE("spd probe by dense Cholesky") {
  CHECK(from_dense({{2.0, 1.0}, {1.0, 2.0}}).spd_by_dense_cholesky());
  CHECK_FALSE(from_dense({{1.0, 2.0}, {2.0, 1.0}}).spd_by_dense_cholesky());
  CHECK_FALSE(from_dense({{-1.0, 0.0}, {0.0, 1.0}}).spd_by_dense_cholesky());
}

TEST_CASE("add_scaled takes the pattern union") {
  const SparseMatrix a = from_dense({{1.0, 0.0}, {0.0, 1.0}});
  const SparseMatrix k = from_dense({{1.0, -1.0}, {-1.0, 1.0}});
  const SparseMatrix s = a.add_scaled(k, 0.5);
  CHECK(s.at(0, 0) == doctest::Approx(1.5));
  CHECK(s.at(0, 1) == doctest::Approx(-0.5));
  CHECK(s.at(1, 0) == doctest::Approx(-0.5));
  CHECK(s.at(1, 1) == doctest::Approx(1.5));
  CHECK(s.nnz() == 4);
}

TEST_CASE("builder rejects malformed input") {
  SparseMatrix::Builder b(3);
  b.add(0, 0, 1.0);
  CHECK_THROWS_AS(b.add(0, 0, 2.0), ValidationError);  // non-ascending column
  SparseMatrix::Builder c(3);
  c.add(1, 0, 1.0);
  CHECK_THROWS_AS(c.add(0, 0, 1.0), ValidationError);  // row going backwards
  SparseMatrix::Builder d(2);
  CHECK_THROWS_AS(d.add(0, 5, 1.0), DimensionError);
}

TEST_CASE("drop tolerance prunes small entries") {
  SparseMatrix::Builder b(2, 1e-8);
  b.add(0, 0, 1.0);
  b.add(0, 1, 1e-12);
  b.add(1, 1, 1.0);
  const SparseMatrix a = b.finish();
  CHECK(a.nnz() == 2);
  CHECK(a.at(0, 1) == 0.0);
}

TEST_CASE("matrix market output") {
  const SparseMatrix a = from_dense({{2.0, 1.0}, {1.0, 2.0}});
  std::ostringstream os;
  a.write_matrix_market(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "%%MatrixMarket matrix coordinate real general");
  std::getline(is, line);
  std::istringstream hdr(line);
  int rows, cols, nnz;
  hdr >> rows >> cols >> nnz;
  CHECK(rows == 2);
  CHECK(cols == 2);
  CHECK(nnz == 4);
  int r, c;
  double v;
  is >> r >> c >> v;  // 1-based indices
  CHECK(r == 1);
  CHECK(c == 1);
  CHECK(v == doctest::Approx(2.0));
}
