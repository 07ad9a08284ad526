#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "boltzsym/errors.hpp"
#include "boltzsym/source.hpp"

using namespace boltzsym;

TEST_CASE("q_value examples") {
  CHECK(q_value(SourceModel::row(3, 2.0, 3.0), 2.0, 0.0) == doctest::Approx(16.0));
  CHECK(q_value(SourceModel::row(2, 1.0), 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(q_value(SourceModel::row(7, 1.0, 0.0, {1.0}), 2.0, std::numbers::e) == doctest::Approx(1.0));
  CHECK_THROWS_AS(q_value(SourceModel::row(4, 1.0), 1.0, 0.0), SingularSourceError);
}

TEST_CASE("q_partials examples") {
  const auto p4 = q_partials(SourceModel::row(4, 3.0), 0.5, 1.0);
  CHECK(p4.q_t == doctest::Approx(-6.0));
  CHECK(p4.q_x == 0.0);
  CHECK(q_partials(SourceModel::row(3, 1.0, 2.0), 3.0, 0.0).q_x == doctest::Approx(6.0));
  const auto p8 = q_partials(SourceModel::row(8, 1.0, 0.0, {0.0, 1.0}), 1.0, 0.0);
  CHECK(p8.q_x == doctest::Approx(1.0));
  CHECK(p8.q_t == doctest::Approx(-1.0));
}

TEST_CASE("analytic partials agree with finite differences") {
  const Coeffs phi{1.0, -0.5, 0.3, 0.2};
  std::vector<SourceModel> sources{SourceModel::row(2, 1.3),
                                   SourceModel::row(3, 1.3, 2.5),
                                   SourceModel::row(4, -0.7),
                                   SourceModel::row(5, 1.0, 1.5, phi),
                                   SourceModel::row(6, 1.0, 0.0, phi),
                                   SourceModel::row(7, 1.0, 0.0, phi),
                                   SourceModel::row(8, 1.0, 0.0, phi),
                                   SourceModel::row(9, 1.0, 0.0, phi),
                                   SourceModel::row(10, 1.0, 0.0, phi),
                                   SourceModel::row(11, 1.0, 0.0, phi),
                                   SourceModel::custom(std::vector<Coeffs>{{1.0, 2.0}, {0.5, 0.0, -1.0}}),
                                   SourceModel::row(5, 1.0, 1.5, phi).mapped({2.0, 0.3, 1.5, -1.0, 4.0})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.1, 2.0), ut(0.5, 2.0);
  for (const auto& src : sources) {
    for (int k = 0; k < 100; ++k) {
      const double x = ux(rng), t = ut(rng);
      const auto p = q_partials(src, x, t);
      const double dx = oracle::derivative([&](double xx) { return q_value(src, xx, t); }, x, 1e-4);
      const double dt = oracle::derivative([&](double tt) { return q_value(src, x, tt); }, t, 1e-4);
      CHECK(std::abs(p.q_x - dx) <= 1e-6 * std::max(1.0, std::abs(dx)));
      CHECK(std::abs(p.q_t - dt) <= 1e-6 * std::max(1.0, std::abs(dt)));
    }
  }
}

TEST_CASE("q_series examples") {
  const Coeffs r3 = q_series(SourceModel::row(3, 5.0, 2.0), 0.0, 4);
  CHECK(r3 == Coeffs{0.0, 0.0, 5.0, 0.0, 0.0});
  const Coeffs r2 = q_series(SourceModel::row(2, 1.0), 2.0, 4);
  REQUIRE(r2.size() == 5);
  const Coeffs want{0.0, 0.0, 1.0, 2.0, 2.0};
  for (int n = 0; n < 5; ++n) CHECK(r2[n] == doctest::Approx(want[n]));
  CHECK_THROWS_AS(q_series(SourceModel::row(3, 1.0, 0.5), 1.0, 4), NotSeriesRepresentableError);
  CHECK_THROWS_AS(q_series(SourceModel::row(6, 1.0, 0.0, {1.0}), -1.0, 4), Error);
}

TEST_CASE("q_series reconstructs q_value") {
  const Coeffs phi{1.0, -0.5, 0.3};
  std::vector<SourceModel> sources{SourceModel::row(2, 1.3), SourceModel::row(3, 1.3, 3.0),
                                   SourceModel::row(4, 2.0), SourceModel::row(5, 1.0, 2.0, phi),
                                   SourceModel::row(6, 1.0, 0.0, phi), SourceModel::row(7, 1.0, 0.0, phi),
                                   SourceModel::row(8, 1.0, 0.0, phi), SourceModel::row(9, 1.0, 0.0, phi),
                                   SourceModel::row(10, 1.0, 0.0, phi), SourceModel::row(11, 1.0, 0.0, phi)};
  for (const auto& src : sources) {
    for (double t : {0.5, 1.0, 1.7}) {
      const Coeffs c = q_series(src, t, 40);
      for (double x = -1.0; x <= 1.0; x += 0.125) {
        CHECK(std::abs(eval_series(c, x) - q_value(src, x, t)) <= 1e-10 * std::max(1.0, std::abs(q_value(src, x, t))));
      }
    }
  }
}

TEST_CASE("rows that need Phi reject an empty list") {
  CHECK_THROWS(SourceModel::row(5, 1.0, 1.0, {}));
  CHECK(SourceModel::row(1).family() == SourceFamily::zero);
  CHECK(SourceModel::row(4, 1.0).row_index() == 4);
  CHECK_FALSE(SourceModel::row(4, 1.0).is_regular(0.0));
  CHECK_THROWS_AS(SourceModel::row(4, 1.0).require_regular_interval(-1.0, 1.0), SingularSourceError);
  CHECK_NOTHROW(SourceModel::row(4, 1.0).require_regular_interval(0.1, 1.0));
}
