#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "boltzsym/errors.hpp"
#include "boltzsym/grid.hpp"

using namespace boltzsym;

namespace {

double max_err(const std::vector<double>& a, const GridState& g, const std::function<double(double)>& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - f(g.x(i))));
  return e;
}

}  // namespace

TEST_CASE("grid state validation") {
  CHECK_THROWS_AS(GridState(1.0, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridState(0.0, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridState(1.0, {1.0, NAN, 3.0}), std::invalid_argument);
  const auto g = GridState::sample(2.0, 5, [](double x) { return x; });
  CHECK(g.spacing() == 0.5);
  CHECK(g.values()[4] == 2.0);
}

TEST_CASE("collision on the grid reproduces known identities") {
  for (auto method : {ConvolutionMethod::direct, ConvolutionMethod::fft}) {
    const auto e = GridState::sample(4.0, 401, [](double x) { return std::exp(-x); });
    CHECK(max_err(collision_grid(e, method), e, [](double x) { return std::exp(-x); }) < 1e-4);
    const auto lin = GridState::sample(2.0, 201, [](double x) { return x; });
    CHECK(max_err(collision_grid(lin, method), lin, [](double x) { return x * x / 6.0; }) < 1e-3);
    const auto c = GridState::sample(3.0, 64, [](double) { return 1.5; });
    CHECK(max_err(collision_grid(c, method), c, [](double) { return 2.25; }) < 1e-12);
  }
}

TEST_CASE("direct and fft kernels agree with the trapezoid oracle") {
  const auto g = GridState::sample(3.0, 257, [](double x) { return std::cos(2 * x) * std::exp(-0.3 * x); });
  const auto want = oracle::collision_trapezoid(g.values());
  const auto d = collision_grid(g, ConvolutionMethod::direct);
  const auto f = collision_grid(g, ConvolutionMethod::fft);
  double scale = 0.0;
  for (double v : want) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(std::abs(d[i] - want[i]) <= 1e-13 * scale);
    CHECK(std::abs(f[i] - want[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("second order convergence") {
  auto err = [](std::size_t n) {
    // int_0^1 cos(xs) cos(x(1-s)) ds = (cos x + sin x / x) / 2
    const auto c = GridState::sample(2.0, n, [](double x) { return std::cos(x); });
    return max_err(collision_grid(c, ConvolutionMethod::fft), c,
                   [](double x) { return x == 0.0 ? 1.0 : 0.5 * (std::cos(x) + std::sin(x) / x); });
  };
  const double ratio = err(101) / err(201);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("rhs_grid examples") {
  const auto e = GridState::sample(2.0, 401, [](double x) { return std::exp(-x); });
  for (double v : rhs_grid(e, SourceModel::zero())) CHECK(std::abs(v) < 1e-5);

  const double beta = 0.8;
  const auto c = GridState::sample(1.0, 11, [&](double) { return -beta; }, 1.0);
  for (double v : rhs_grid(c, SourceModel::row(4, beta))) CHECK(v == doctest::Approx(beta));

  const auto at_zero = GridState::sample(1.0, 11, [](double) { return 1.0; }, 0.0);
  CHECK_THROWS_AS(rhs_grid(at_zero, SourceModel::row(4, beta)), SingularSourceError);

  const double C = 2.0, b = 4.0 / 3.0;
  const auto s = GridState::sample(1.0, 801, [&](double x) { return C * x; }, 0.0);
  const auto r = rhs_grid(s, SourceModel::row(2, b));
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(r[i] - C * s.x(i) * s.x(i)) < 1e-5);
}

TEST_CASE("benchmark report") {
  const std::vector<std::size_t> sizes{64, 256};
  const auto rows = bench_convolution(sizes);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.agree);
  CHECK(rows[0].n == 64);
  CHECK(rows[2].n == 256);
  CHECK(rows[0].checksum == doctest::Approx(rows[1].checksum).epsilon(1e-10));
  std::ostringstream os;
  write_bench_csv(os, rows);
  CHECK(os.str().rfind("n,method,seconds,checksum,agree\n", 0) == 0);
}

TEST_CASE("grid CSV round trip") {
  const auto g = GridState::sample(2.0, 9, [](double x) { return std::sin(x); });
  std::stringstream ss;
  write_grid_csv(ss, g);
  const auto back = read_grid_csv(ss);
  CHECK(back.n_points() == 9);
  CHECK(back.x_max() == doctest::Approx(2.0));
  for (std::size_t i = 0; i < 9; ++i) CHECK(back.values()[i] == g.values()[i]);
  std::stringstream bad("x,value\n0,1\n0.5,1\n1.5,1\n");
  CHECK_THROWS(read_grid_csv(bad));
}
