#include <doctest.h>

#include <sstream>

#include "apspkit/matrix.hpp"

using namespace apspkit;

TEST_CASE("matrix construction and accessors") {
  CHECK_THROWS_AS(matrix_new<Dist>(0, 3, 0), InvalidArgument);
  auto m = matrix_new<Dist>(2, 3, 7);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  m(1, 2) = 4;
  CHECK(m.transposed()(2, 1) == 4);
  auto s = submatrix(m, {1}, {2, 0});
  CHECK(s(0, 0) == 4);
  CHECK(s(0, 1) == 7);
}

TEST_CASE("identity has zeros on the diagonal and INF elsewhere") {
  auto id = minplus_identity(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? 0 : kInf));
}

TEST_CASE("saturating addition keeps INF absorbing") {
  CHECK(add_sat(2, 3) == 5);
  CHECK(add_sat(kInf, 3) == kInf);
  CHECK(add_sat(-4, kInf) == kInf);
}

TEST_CASE("bounds and finite statistics") {
  DistMatrix m(2, 2, kInf);
  CHECK(max_finite(m) == kInf);
  m(0, 0) = 3;
  m(1, 1) = 9;
  CHECK(finite_count(m) == 2);
  CHECK(max_finite(m) == 9);
  CHECK(min_finite(m) == 3);
  CHECK(check_bounds(m, Dist(9)));
  CHECK_FALSE(check_bounds(m, Dist(8)));
  CHECK_FALSE(check_bounds(m, std::nullopt, std::size_t(1)));
}

TEST_CASE("matrix text round trip with INF tokens") {
  DistMatrix m(2, 3, 1);
  m(0, 1) = kInf;
  m(1, 2) = -5;
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
  std::stringstream bad("matrix 2 2\n1 x\n3 4\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
}
