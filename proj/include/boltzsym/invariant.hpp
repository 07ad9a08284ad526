#pragma once

// Invariant solutions.  Every reduction is written in one normal form
//
//   alpha z r'(z) + mu r + nu z r + r r(0) - int_0^1 r(zs) r(z(1-s)) ds = g(z)
//
// solved by a single power-series recursion.  Representations that are
// independent of x (or fully explicit) are kept as closed forms.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boltzsym/field.hpp"
#include "boltzsym/series.hpp"
#include "boltzsym/source.hpp"

namespace boltzsym {

enum class CaseId {
  c4_1a, c4_1b, c4_1c,
  c4_2a, c4_2b, c4_2c, c4_2d,
  c4_3a, c4_3b, c4_3c,
  c4_4, c4_5, c4_6, c4_7, c4_8, c4_9, c4_10,
};

std::string to_string(CaseId id);
/// Accepts "4.7", "4.1a", ...
CaseId parse_case(const std::string& s);
const std::vector<CaseId>& all_cases();
bool is_closed_form(CaseId id);

/// Scalar parameters shared by all cases; each case reads what it needs.
struct CaseParams {
  double beta = 1.0;
  double gamma = 1.0;
  double alpha = 1.0;  // exponent parameter of 4.2d and 4.3b
  double C = 0.0;      // constant of 4.1c, 4.2a, 4.3c, 4.9
  Coeffs phi;          // Phi coefficients (in z, x or t depending on the case)
};

struct NormalForm {
  double alpha = 0.0, mu = 0.0, nu = 0.0;
};

struct ReducedProblem {
  CaseId id;
  CaseParams params;
  NormalForm form;
  Coeffs g;                              // coefficients to the requested order
  std::function<double(double)> g_value;  // closed form of g
};

/// Throws DomainError for closed-form cases.
ReducedProblem make_reduced_problem(CaseId id, const CaseParams& params, std::size_t order = kDefaultTruncation);

struct ReducedProfile {
  CaseId id;
  Coeffs coeffs;
  std::map<std::size_t, double> free_params;  // resonant index -> value used
  std::vector<std::size_t> resonances;
};

inline constexpr double kResonanceTolerance = 1e-12;

/// A(n) = alpha n + mu + r0 (n-1)/(n+1), computed exactly from the double inputs.
double resonance_coefficient(const NormalForm& f, double r0, std::size_t n);

/// r0 may be omitted when mu != 0 (then r0 = g0 / mu).
ReducedProfile solve_reduced_series(const ReducedProblem& p, std::optional<double> r0,
                                    const std::map<std::size_t, double>& resonant_choices = {},
                                    std::size_t order = kDefaultTruncation);

/// max over z of |alpha z r' + mu r + nu z r + r r(0) - conv - g|, with the
/// convolution of the truncated profile taken exactly to degree 2N.
double reduced_residual(const ReducedProblem& p, std::span<const double> r, std::span<const double> z_samples);
inline double reduced_residual(const ReducedProblem& p, const ReducedProfile& r, std::span<const double> z) {
  return reduced_residual(p, r.coeffs, z);
}

/// Roots of C^2 - 6C + 6 beta = 0; throws NoRealSolutionError for beta > 3/2.
std::vector<double> closed_form_C_quadratic(double beta);
/// int_0^1 (s(1-s))^{gamma/2} ds by tanh-sinh quadrature; gamma > -2.
double B_gamma(double gamma);
/// Roots of C^2 B(gamma) + beta = 0 (beta <= 0, gamma > 0).
std::vector<double> closed_form_C_power(double beta, double gamma);

struct InvariantSolution {
  CaseId id;
  CaseParams params;
  Coeffs profile;  // r_n; empty for closed forms
};

/// Field value phi(x, t) from the representation of the case.
double lift(const InvariantSolution& sol, double x, double t);
/// x-series of the lifted field and of its time derivative.
SeriesField lifted_field(const InvariantSolution& sol, std::size_t order = kDefaultTruncation);
/// The classified source the case belongs to.
SourceModel matching_source(CaseId id, const CaseParams& params);

struct Region {
  double x_lo = 0.0, x_hi = 1.0;
  std::size_t nx = 21;
  double t_lo = 1.0, t_hi = 2.0;
  std::size_t nt = 11;
  std::size_t grid_points = 4001;  // grid check of 4.2a with non-integer gamma/2
};

/// Max residual of the full equation along the lifted field on the region.
double verify_lifted(const InvariantSolution& sol, const Region& region, std::size_t order = kDefaultTruncation);

}  // namespace boltzsym
