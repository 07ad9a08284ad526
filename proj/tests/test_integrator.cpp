#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "json.hpp"

#include "boltzsym/errors.hpp"
#include "boltzsym/integrator.hpp"

using namespace boltzsym;

TEST_CASE("config validation") {
  IntegrationConfig c;
  CHECK_NOTHROW(c.validate());
  c.t1 = c.t0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.dt = 2.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.record_every = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("rk4 step examples") {
  SeriesState eq{equilibrium_coeffs(40), 0.0};
  const auto s = rk4_step(eq, SourceModel::zero(), 1e-3);
  for (std::size_t n = 0; n <= 40; ++n) CHECK(std::abs(s.coeffs[n] - eq.coeffs[n]) <= 1e-14);
  CHECK(s.time == doctest::Approx(1e-3));

  SeriesState a{{-1.0, 0.0, 0.0}, 1.0};
  const auto b = rk4_step(a, SourceModel::row(4, 1.0), 1e-3);
  CHECK(std::abs(b.coeffs[0] + 1.0 / 1.001) < 1e-14);

  CHECK_THROWS_AS(rk4_step(eq, SourceModel::zero(), 1e-3, 0.0), BlowUpError);
}

TEST_CASE("integration examples") {
  IntegrationConfig cfg;
  cfg.record_every = 100;
  const auto traj = integrate(SeriesState{bkw_coeffs(40), 0.0}, SourceModel::zero(), cfg);
  CHECK(traj.times.back() == 1.0);
  const auto& fin = traj.states.back();
  for (double x = 0.0; x <= 1.0; x += 0.05) CHECK(std::abs(eval_series(fin, x) - oracle::bkw_field(x, 1.0)) <= 1e-6);

  const auto eq = integrate(SeriesState{equilibrium_coeffs(40), 0.0}, SourceModel::zero(), cfg);
  for (const auto& st : eq.states) {
    for (std::size_t n = 0; n <= 40; ++n) CHECK(std::abs(st.coeffs[n] - eq.states[0].coeffs[n]) <= 1e-10);
  }

  const double beta = 0.6;
  IntegrationConfig c4;
  c4.t0 = 1.0;
  c4.t1 = 2.0;
  const auto tr4 = integrate(SeriesState{{-beta, 0.0, 0.0}, 1.0}, SourceModel::row(4, beta), c4);
  CHECK(std::abs(tr4.states.back().coeffs[0] + beta / 2.0) < 1e-8);
}

TEST_CASE("times are strictly increasing and the last step lands on t1") {
  IntegrationConfig cfg;
  cfg.t1 = 0.0105;
  cfg.dt = 1e-3;
  const auto traj = integrate(SeriesState{equilibrium_coeffs(5), 0.0}, SourceModel::zero(), cfg);
  for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
  CHECK(traj.times.back() == 0.0105);
  CHECK(traj.states.back().time == 0.0105);
}

TEST_CASE("singular intervals are rejected up front") {
  IntegrationConfig cfg;
  CHECK_THROWS_AS(integrate(SeriesState{{1.0}, 0.0}, SourceModel::row(4, 1.0), cfg), SingularSourceError);
  const auto g = GridState::sample(1.0, 11, [](double) { return 1.0; });
  CHECK_THROWS_AS(integrate(g, SourceModel::row(6, 1.0, 0.0, {1.0}), cfg), SingularSourceError);
}

TEST_CASE("blow-up reports a time") {
  IntegrationConfig cfg;
  cfg.t1 = 5.0;
  cfg.dt = 1e-2;
  cfg.blowup_threshold = 1e3;
  // a0 grows linearly under a large constant source.
  try {
    integrate(SeriesState{{1.0, 0.0}, 0.0}, SourceModel::custom(Coeffs{1e4, 0.0}), cfg);
    FAIL("expected blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() < 5.0);
  }
}

TEST_CASE("fourth order convergence") {
  auto err = [](double dt) {
    IntegrationConfig cfg;
    cfg.dt = dt;
    cfg.record_every = 1000000;
    const auto tr = integrate(SeriesState{bkw_coeffs(30), 0.0}, SourceModel::zero(), cfg);
    double e = 0.0;
    for (double x = 0.0; x <= 1.0; x += 0.1) e = std::max(e, std::abs(eval_series(tr.states.back(), x) - oracle::bkw_field(x, 1.0)));
    return e;
  };
  const double ratio = err(0.1) / err(0.05);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("grid integration and determinism") {
  IntegrationConfig cfg;
  cfg.t1 = 0.2;
  cfg.record_every = 50;
  const auto g = GridState::sample(2.0, 201, [](double x) { return oracle::bkw_profile(x); });
  const auto a = integrate(g, SourceModel::zero(), cfg);
  const auto b = integrate(g, SourceModel::zero(), cfg);
  CHECK(a.states.back().values() == b.states.back().values());
  for (std::size_t i = 0; i < 101; ++i) {
    const double x = g.x(i);
    CHECK(std::abs(a.states.back().values()[i] - oracle::bkw_field(x, 0.2)) < 1e-3);
  }
}

TEST_CASE("trajectory export is JSON lines") {
  IntegrationConfig cfg;
  cfg.t1 = 0.01;
  const auto traj = integrate(SeriesState{equilibrium_coeffs(3), 0.0}, SourceModel::zero(), cfg);
  std::stringstream ss;
  write_trajectory_jsonl(ss, traj);
  std::string line;
  std::size_t count = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["kind"] == "series");
    CHECK(j["coeffs"].size() == 4);
    ++count;
  }
  CHECK(count == traj.times.size());
  CHECK(step_doubling_error(SeriesState{bkw_coeffs(20), 0.0}, SourceModel::zero(), 1e-2) < 1e-8);
}
