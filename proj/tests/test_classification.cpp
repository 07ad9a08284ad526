#include <cmath>
#include <sstream>

#include "doctest.h"

#include "boltzsym/classification.hpp"
#include "boltzsym/errors.hpp"

using namespace boltzsym;
using lie::LieElement;

namespace {
LieElement X(int i) { return LieElement::basis(i); }
}  // namespace

TEST_CASE("constants of generators") {
  const double g = 1.7;
  CHECK(constants_of(X(2) * g + X(0) * 2.0) == ClassifyConstants{2.0, 0.0, g, 0.0});
  CHECK(constants_of(X(3)) == ClassifyConstants{0.0, 0.0, 0.0, 1.0});
  CHECK(constants_of(X(1) - X(2)) == ClassifyConstants{0.0, 1.0, -1.0, 0.0});
}

TEST_CASE("classifying residual examples") {
  const SampleGridSpec grid;
  const auto pts = grid.points();
  CHECK(pts.size() == 400);
  CHECK(remain2_residual({2.0, 0.0, 3.0, 0.0}, SourceModel::row(3, 1.0, 3.0), pts) <= 1e-12 * 8.0);
  CHECK(remain2_residual({0.0, 1.0, -1.0, 0.0}, SourceModel::row(7, 1.0, 0.0, {1.0}), pts) <= 1e-12);
  const double beta = 0.9;
  CHECK(remain2_pointwise({0.0, 0.0, 0.0, 1.0}, SourceModel::row(4, beta), 1.0, 1.0) == doctest::Approx(2.0 * beta));
  const std::vector<SamplePoint> bad{{1.0, 0.0}};
  CHECK_THROWS_AS(remain2_residual({1.0, 0.0, 0.0, 0.0}, SourceModel::row(4, 1.0), bad), SingularSourceError);
}

TEST_CASE("residual is linear in the constants") {
  const auto src = SourceModel::row(5, 1.0, 1.5, {1.0, 0.3, -0.2});
  const ClassifyConstants c{0.4, -0.3, 1.1, 0.7};
  for (double s : {-2.5, 0.3, 4.0}) {
    const ClassifyConstants cs{c.c0 * s, c.c1 * s, c.c2 * s, c.c3 * s};
    CHECK(remain2_pointwise(cs, src, 0.8, 1.2) == doctest::Approx(s * remain2_pointwise(c, src, 0.8, 1.2)));
  }
}

TEST_CASE("table rows verify") {
  const auto report = verify_table2();
  CHECK(report.all_pass());
  CHECK(report.failing_rows().empty());
  int row3 = 0;
  for (const auto& c : report.checks) row3 += c.row == 3;
  CHECK(row3 == 2);
  for (double g : {0.5, 1.0, 2.5, 3.0}) CHECK(verify_table2(1.3, g).all_pass());
}

TEST_CASE("row 1 admits the whole algebra") {
  const auto pts = SampleGridSpec{}.points();
  for (int i = 0; i < 4; ++i) CHECK(remain2_residual(constants_of(X(i)), SourceModel::zero(), pts) == 0.0);
  CHECK(remain2_residual({0.3, -1.0, 2.0, 5.0}, SourceModel::zero(), pts) == 0.0);
}

TEST_CASE("positive controls") {
  auto rows = table2_rows(1.3, 2.0, {1.0, 1.0, 0.5});
  std::swap(rows[5].generators, rows[6].generators);
  const auto swapped = verify_rows(rows);
  CHECK_FALSE(swapped.all_pass());
  CHECK(swapped.failing_rows() == std::vector<int>{6, 7});

  auto corrupted = table2_rows(1.3, 2.0, {1.0, 1.0, 0.5});
  const int row = corrupt_generators(corrupted, 42);
  const auto rep = verify_rows(corrupted);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.failing_rows() == std::vector<int>{row});
}

TEST_CASE("table CSV") {
  std::ostringstream os;
  write_table2_csv(os, verify_table2());
  const auto s = os.str();
  CHECK(s.rfind("row,generator,max_residual,pass\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 18);
}
