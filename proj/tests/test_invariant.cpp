#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "boltzsym/errors.hpp"
#include "boltzsym/integrator.hpp"
#include "boltzsym/invariant.hpp"

using namespace boltzsym;

namespace {
const std::vector<double> kZ = linspace(0.0, 1.0, 21);
}

TEST_CASE("case names") {
  CHECK(all_cases().size() == 17);
  for (auto id : all_cases()) CHECK(parse_case(to_string(id)) == id);
  CHECK_THROWS_AS(parse_case("4.11"), std::invalid_argument);
  CHECK(is_closed_form(CaseId::c4_9));
  CHECK_FALSE(is_closed_form(CaseId::c4_7));
}

TEST_CASE("normal form table") {
  CaseParams p;
  p.alpha = 0.7;
  p.gamma = 1.5;
  p.phi = {1.0};
  auto f = [&](CaseId id) { return make_reduced_problem(id, p).form; };
  auto same = [](NormalForm a, double al, double mu, double nu) { return a.alpha == al && a.mu == mu && a.nu == nu; };
  CHECK(same(f(CaseId::c4_1a), 1, -1, 0));
  CHECK(same(f(CaseId::c4_1b), 0, 0, 1));
  CHECK(same(f(CaseId::c4_2c), 2, -1, 0));
  CHECK(same(f(CaseId::c4_2d), -0.7, 0, 0));
  CHECK(same(f(CaseId::c4_3b), 0.7, -1, 0));
  CHECK(same(f(CaseId::c4_4), 1.5, -1, 0));
  CHECK(same(f(CaseId::c4_5), 0, -1, -1));
  CHECK(same(f(CaseId::c4_6), 0, -1, 1));
  CHECK(same(f(CaseId::c4_7), -1, 0, 0));
  CHECK(same(f(CaseId::c4_8), 0, 0, 1));
  CHECK(same(f(CaseId::c4_10), 0, 0, 0));
  p.gamma = 2.0;
  CHECK(same(f(CaseId::c4_2b), 0, 0, 0));
  CHECK_THROWS_AS(make_reduced_problem(CaseId::c4_9, p), DomainError);
  const auto g1a = make_reduced_problem(CaseId::c4_1a, CaseParams{2.0}).g;
  CHECK(g1a[0] == 0.0);
  CHECK(g1a[2] == 2.0);
  CHECK(g1a[3] == 2.0);
  CHECK(g1a[4] == doctest::Approx(1.0));
}

TEST_CASE("BKW profile from the recursion") {
  const auto p = make_reduced_problem(CaseId::c4_7, {});
  const auto plain = solve_reduced_series(p, 6.0);
  CHECK(plain.resonances == std::vector<std::size_t>{2, 3});
  const auto bkw = solve_reduced_series(p, 6.0, {{2, -3.0}, {3, -2.0}});
  for (int n = 0; n <= 40; ++n) CHECK(std::abs(bkw.coeffs[n] - expected::bkw_coeff(n)) <= 1e-12);
  CHECK(reduced_residual(p, bkw, kZ) < 1e-10);
  CHECK(resonance_coefficient(p.form, 6.0, 2) == 0.0);
  CHECK(resonance_coefficient(p.form, 6.0, 3) == 0.0);
  CHECK_THROWS_AS(solve_reduced_series(p, 6.0, {{4, 1.0}}), std::invalid_argument);
}

TEST_CASE("order-zero identity") {
  CaseParams p;
  p.phi = {1.0, 2.0};
  CHECK_THROWS_AS(solve_reduced_series(make_reduced_problem(CaseId::c4_10, p), 1.0), InconsistentInitialValueError);
  p.phi = {2.0};
  const auto r = solve_reduced_series(make_reduced_problem(CaseId::c4_5, p), std::nullopt);
  CHECK(r.coeffs[0] == -2.0);
  CHECK_THROWS_AS(solve_reduced_series(make_reduced_problem(CaseId::c4_5, p), 1.0), InconsistentInitialValueError);
}

TEST_CASE("inconsistent resonance") {
  CaseParams p;
  p.phi = {0.0, 0.0, 1.0};
  try {
    solve_reduced_series(make_reduced_problem(CaseId::c4_7, p), 6.0);
    FAIL("expected inconsistent resonance");
  } catch (const InconsistentResonanceError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("zero-source recursions satisfy the reduced equation") {
  for (auto id : all_cases()) {
    if (is_closed_form(id)) continue;
    CaseParams p;
    p.beta = 0.0;
    p.alpha = 0.5;
    p.gamma = id == CaseId::c4_2b ? 2.0 : 0.75;
    p.phi = {0.0};
    const auto prob = make_reduced_problem(id, p);
    const auto& f = prob.form;
    if (f.mu != 0.0) {
      const auto r = solve_reduced_series(prob, std::nullopt);
      CHECK_MESSAGE(reduced_residual(prob, r, kZ) < 1e-10, to_string(id));
      continue;
    }
    if (f.alpha == 0.0 && f.nu != 0.0) {
      // A(n) vanishes identically at r0 = 0; order 2 fixes r1 through C^2 - 6C = 0.
      const auto r = solve_reduced_series(prob, 0.0, {{1, 6.0}});
      CHECK_MESSAGE(reduced_residual(prob, r, kZ) < 1e-10, to_string(id));
      CHECK_THROWS_AS(solve_reduced_series(prob, 0.5), InconsistentResonanceError);
      continue;
    }
    for (double r0 : {-1.3, 0.4, 2.2}) {
      const auto r = solve_reduced_series(prob, r0);
      CHECK_MESSAGE(reduced_residual(prob, r, kZ) < 1e-10, to_string(id), " r0=", r0);
    }
  }
}

namespace {

struct Sample {
  CaseParams params;
  std::optional<double> r0;
  std::map<std::size_t, double> choices;
};

// Sourced parameter sets with a consistent order-zero and order-one identity.
Sample sourced_sample(CaseId id) {
  Sample s;
  s.params.beta = 0.8;
  s.params.alpha = 0.5;
  s.params.gamma = 1.0;
  s.params.phi = {0.0, 0.7, -0.5};
  switch (id) {
    case CaseId::c4_1b:
      s.r0 = 0.0;
      s.choices = {{1, closed_form_C_quadratic(0.8)[0]}};
      break;
    case CaseId::c4_2b:
      s.params.gamma = 2.0;
      s.r0 = 0.7;
      break;
    case CaseId::c4_2d:
      s.params.beta = 0.0;
      s.r0 = 0.7;
      break;
    case CaseId::c4_4:
      // gamma = 1 would put a resonance at n = 1 with a nonzero right side
      s.params.gamma = 1.5;
      s.params.phi = {0.4, 0.7, -0.5};
      break;
    // With nu != 0 the radius of convergence is about |A(n -> inf)| / |nu|;
    // these choices keep it well above 1.
    case CaseId::c4_5:
    case CaseId::c4_6:
      s.params.phi = {3.0, 0.7, -0.5};
      break;
    case CaseId::c4_8:
      s.params.phi = {0.0, 3.0, -0.5};
      s.r0 = 3.0;
      break;
    case CaseId::c4_10:
      s.params.phi = {0.0, 0.0, 1.0, -0.5};
      s.r0 = 0.7;
      break;
    case CaseId::c4_7:
      s.r0 = 0.7;
      break;
    default:
      break;
  }
  return s;
}

}  // namespace

TEST_CASE("sourced recursions satisfy the reduced equation") {
  for (auto id : all_cases()) {
    if (is_closed_form(id)) continue;
    const auto s = sourced_sample(id);
    const auto prob = make_reduced_problem(id, s.params);
    const auto r = solve_reduced_series(prob, s.r0, s.choices);
    CHECK_MESSAGE(reduced_residual(prob, r, kZ) < 1e-10, to_string(id));
  }
}

TEST_CASE("constant source in case 4.2d needs beta = 0") {
  CaseParams p;
  p.beta = 0.3;
  CHECK_THROWS_AS(solve_reduced_series(make_reduced_problem(CaseId::c4_2d, p), 1.0), InconsistentInitialValueError);
}

TEST_CASE("4.2b with an odd power has no series") {
  CaseParams p;
  p.gamma = 1.0;
  CHECK_THROWS_AS(solve_reduced_series(make_reduced_problem(CaseId::c4_2b, p), 1.0), InconsistentResonanceError);
  p.gamma = 0.5;
  CHECK_THROWS_AS(make_reduced_problem(CaseId::c4_2b, p), NotSeriesRepresentableError);
}

TEST_CASE("trivial residuals") {
  const auto p = make_reduced_problem(CaseId::c4_7, {});
  CHECK(reduced_residual(p, Coeffs(10, 0.0), kZ) == 0.0);
  CaseParams c;
  c.beta = 0.6;
  const auto d = make_reduced_problem(CaseId::c4_2d, c);
  CHECK(reduced_residual(d, Coeffs{-c.beta}, kZ) == doctest::Approx(c.beta));
}

TEST_CASE("the 4.1a recursion with r1 = C matches the quadratic") {
  for (double beta : {0.0, 4.0 / 3.0, 1.5}) {
    CaseParams p;
    p.beta = beta;
    const auto prob = make_reduced_problem(CaseId::c4_1a, p);
    const auto r = solve_reduced_series(prob, 0.0, {}, 30);
    CHECK(r.resonances == std::vector<std::size_t>{1});
    CHECK(reduced_residual(prob, r, kZ) < 1e-10);
  }
}

TEST_CASE("closed form constants") {
  CHECK(closed_form_C_quadratic(0.0) == std::vector<double>{0.0, 6.0});
  const auto c = closed_form_C_quadratic(4.0 / 3.0);
  REQUIRE(c.size() == 2);
  CHECK(std::abs(c[0] - 2.0) <= 1e-12);
  CHECK(std::abs(c[1] - 4.0) <= 1e-12);
  CHECK(closed_form_C_quadratic(1.5) == std::vector<double>{3.0});
  CHECK_THROWS_AS(closed_form_C_quadratic(2.0), NoRealSolutionError);

  CHECK(B_gamma(0.0) == 1.0);
  CHECK(std::abs(B_gamma(2.0) - 1.0 / 6.0) <= 1e-10);
  CHECK(std::abs(B_gamma(1.0) - expected::kB1) <= 1e-10);
  CHECK(std::abs(B_gamma(-1.0) - std::numbers::pi) <= 1e-10);
  CHECK_THROWS_AS(B_gamma(-2.0), DomainError);

  const auto cp = closed_form_C_power(-1.0, 2.0);
  REQUIRE(cp.size() == 2);
  CHECK(cp[1] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK_THROWS_AS(closed_form_C_power(1.0, 2.0), NoRealSolutionError);
}

TEST_CASE("lift examples") {
  InvariantSolution bkw{CaseId::c4_7, {}, bkw_coeffs(40)};
  for (double t : {0.0, 1.0, 3.0}) CHECK(lift(bkw, 0.0, t) == 6.0);
  CHECK(lift(bkw, 0.7, 0.4) == doctest::Approx(oracle::bkw_field(0.7, 0.4)).epsilon(1e-13));
  CaseParams p;
  p.beta = 2.0;
  CHECK(lift({CaseId::c4_3a, p, {}}, 0.3, 4.0) == -0.5);
  p.C = 2.0;
  CHECK(lift({CaseId::c4_1c, p, {}}, 1.0, 0.0) == 2.0);
  CHECK_THROWS_AS(lift({CaseId::c4_3a, p, {}}, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(lift({CaseId::c4_5, p, {1.0}}, 1.0, -1.0), DomainError);
}

TEST_CASE("lifted fields solve the full equation") {
  CaseParams p;
  p.beta = 4.0 / 3.0;
  p.C = closed_form_C_quadratic(p.beta)[0];
  Region unit{0.0, 1.0, 11, 0.0, 1.0, 11};
  CHECK(verify_lifted({CaseId::c4_1c, p, {}}, unit) < 1e-10);

  CaseParams q;
  q.beta = 1.2;
  Region r12{0.0, 1.0, 11, 1.0, 2.0, 11};
  CHECK(verify_lifted({CaseId::c4_3a, q, {}}, r12) < 1e-12);
  q.C = -0.7;
  CHECK(verify_lifted({CaseId::c4_3c, q, {}}, r12) < 1e-12);

  CaseParams w;
  w.beta = -1.0;
  w.gamma = 2.0;
  w.C = closed_form_C_power(w.beta, w.gamma)[1];
  CHECK(verify_lifted({CaseId::c4_2a, w, {}}, unit) < 1e-10);

  CaseParams f;
  f.phi = {1.0, -2.0, 0.5};
  f.C = 0.3;
  CHECK(verify_lifted({CaseId::c4_9, f, {}}, r12) < 1e-12);

  InvariantSolution bkw{CaseId::c4_7, {}, bkw_coeffs(40)};
  CHECK(verify_lifted(bkw, unit) < 1e-9);
}

TEST_CASE("non-integer power case is checked on the grid") {
  CaseParams w;
  w.beta = -1.0;
  w.gamma = 1.0;
  w.C = closed_form_C_power(w.beta, w.gamma)[1];
  Region r{0.0, 1.0, 11, 1.0, 1.0, 1, 4001};
  CHECK(verify_lifted({CaseId::c4_2a, w, {}}, r) < 1e-3);
  CHECK_THROWS_AS(lifted_field({CaseId::c4_2a, w, {}}), NotSeriesRepresentableError);
}

TEST_CASE("every series case lifts to a solution of its source") {
  Region r{0.0, 0.5, 6, 1.0, 1.5, 6};
  for (auto id : all_cases()) {
    if (is_closed_form(id)) continue;
    const auto s = sourced_sample(id);
    const auto prof = solve_reduced_series(make_reduced_problem(id, s.params), s.r0, s.choices);
    const double res = verify_lifted({id, s.params, prof.coeffs}, r);
    CHECK_MESSAGE(res < 1e-9, to_string(id), " residual ", res);
  }
}

TEST_CASE("integrating from lifted data reproduces the lifted field") {
  CaseParams p;
  p.phi = {0.0, 3.0};
  const auto prob = make_reduced_problem(CaseId::c4_8, p);
  const auto prof = solve_reduced_series(prob, 3.0, {{1, -0.3}});
  InvariantSolution sol{CaseId::c4_8, p, prof.coeffs};
  const auto field = lifted_field(sol);
  IntegrationConfig cfg;
  cfg.t0 = 0.0;
  cfg.t1 = 1.0;
  cfg.record_every = 1000000;
  const auto tr = integrate(SeriesState{field(0.0).phi, 0.0}, matching_source(CaseId::c4_8, p), cfg);
  for (double x = 0.0; x <= 1.0; x += 0.1) CHECK(std::abs(eval_series(tr.states.back(), x) - lift(sol, x, 1.0)) < 1e-6);
}
