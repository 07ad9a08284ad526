#include "boltzsym/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "boltzsym/errors.hpp"
#include "boltzsym/grid.hpp"

namespace boltzsym {

namespace {

struct CaseInfo {
  CaseId id;
  const char* name;
  bool closed;
};

constexpr CaseInfo kCases[] = {
    {CaseId::c4_1a, "4.1a", false}, {CaseId::c4_1b, "4.1b", false}, {CaseId::c4_1c, "4.1c", true},
    {CaseId::c4_2a, "4.2a", true},  {CaseId::c4_2b, "4.2b", false}, {CaseId::c4_2c, "4.2c", false},
    {CaseId::c4_2d, "4.2d", false}, {CaseId::c4_3a, "4.3a", true},  {CaseId::c4_3b, "4.3b", false},
    {CaseId::c4_3c, "4.3c", true},  {CaseId::c4_4, "4.4", false},   {CaseId::c4_5, "4.5", false},
    {CaseId::c4_6, "4.6", false},   {CaseId::c4_7, "4.7", false},   {CaseId::c4_8, "4.8", false},
    {CaseId::c4_9, "4.9", true},    {CaseId::c4_10, "4.10", false},
};

const CaseInfo& info(CaseId id) { return kCases[static_cast<int>(id)]; }

bool is_integer(double v) { return std::nearbyint(v) == v; }

Coeffs padded(const Coeffs& c, std::size_t order) {
  Coeffs out(order + 1, 0.0);
  for (std::size_t n = 0; n < c.size() && n <= order; ++n) out[n] = c[n];
  return out;
}

Coeffs phi_or_zero(const Coeffs& phi) { return phi.empty() ? Coeffs{0.0} : phi; }

// x-series of e^{kx} r(x) and of d/dt when k depends on t is built by callers.
Coeffs shift_up(const Coeffs& a) {
  Coeffs out(a.size(), 0.0);
  for (std::size_t n = 1; n < a.size(); ++n) out[n] = a[n - 1];
  return out;
}

void require_positive_time(CaseId id, double t) {
  if (!(t > 0.0)) throw DomainError("case " + to_string(id) + " representation needs t > 0, got " + std::to_string(t));
}

void require_nonzero_time(CaseId id, double t) {
  if (t == 0.0) throw DomainError("case " + to_string(id) + " representation is singular at t = 0");
}

double integral_of_phi_t(const Coeffs& phi, double t) {
  double acc = 0.0;
  for (std::size_t k = phi.size(); k-- > 0;) acc = acc * t + phi[k] / static_cast<double>(k + 1);
  return acc * t;
}

void check_power_case(const CaseParams& p) {
  if (!(p.gamma > 0.0)) throw DomainError("case 4.2a needs gamma > 0 so that phi(0) = 0");
}

}  // namespace

std::string to_string(CaseId id) { return info(id).name; }

CaseId parse_case(const std::string& s) {
  for (const auto& c : kCases) {
    if (s == c.name) return c.id;
  }
  throw std::invalid_argument("unknown invariant case '" + s + "'");
}

const std::vector<CaseId>& all_cases() {
  static const std::vector<CaseId> ids = [] {
    std::vector<CaseId> v;
    for (const auto& c : kCases) v.push_back(c.id);
    return v;
  }();
  return ids;
}

bool is_closed_form(CaseId id) { return info(id).closed; }

ReducedProblem make_reduced_problem(CaseId id, const CaseParams& params, std::size_t order) {
  if (is_closed_form(id)) throw DomainError("case " + to_string(id) + " is a closed form, not a reduction");
  ReducedProblem p{id, params, {}, Coeffs(order + 1, 0.0), {}};
  const double beta = params.beta;
  const Coeffs phi = phi_or_zero(params.phi);
  auto use_phi = [&] {
    p.g = padded(phi, order);
    p.g_value = [phi](double z) { return eval_series(phi, z); };
  };
  auto constant_g = [&] {
    p.g[0] = beta;
    p.g_value = [beta](double) { return beta; };
  };
  switch (id) {
    case CaseId::c4_1a: {
      p.form = {1.0, -1.0, 0.0};
      double term = beta;
      for (std::size_t n = 2; n <= order; ++n) {
        p.g[n] = term;
        term /= static_cast<double>(n - 1);
      }
      p.g_value = [beta](double z) { return beta * z * z * std::exp(z); };
      break;
    }
    case CaseId::c4_1b:
      p.form = {0.0, 0.0, 1.0};
      if (order >= 2) p.g[2] = beta;
      p.g_value = [beta](double z) { return beta * z * z; };
      break;
    case CaseId::c4_2b: {
      p.form = {0.0, 0.0, 0.0};
      const double gamma = params.gamma;
      if (!is_integer(gamma) || gamma < 0.0) {
        throw NotSeriesRepresentableError("case 4.2b needs integer gamma >= 0 for a series profile");
      }
      const auto k = static_cast<std::size_t>(gamma);
      if (k <= order) p.g[k] = beta;
      p.g_value = [beta, gamma](double z) { return beta * std::pow(z, gamma); };
      break;
    }
    case CaseId::c4_2c:
      p.form = {2.0, -1.0, 0.0};
      if (order >= 1) p.g[1] = beta;
      p.g_value = [beta](double z) { return beta * z; };
      break;
    case CaseId::c4_2d:
      p.form = {-params.alpha, 0.0, 0.0};
      constant_g();
      break;
    case CaseId::c4_3b:
      p.form = {params.alpha, -1.0, 0.0};
      constant_g();
      break;
    case CaseId::c4_4:
      p.form = {params.gamma, -1.0, 0.0};
      use_phi();
      break;
    case CaseId::c4_5:
      p.form = {0.0, -1.0, -1.0};
      use_phi();
      break;
    case CaseId::c4_6:
      p.form = {0.0, -1.0, 1.0};
      use_phi();
      break;
    case CaseId::c4_7:
      p.form = {-1.0, 0.0, 0.0};
      use_phi();
      break;
    case CaseId::c4_8:
      p.form = {0.0, 0.0, 1.0};
      use_phi();
      break;
    case CaseId::c4_10:
      p.form = {0.0, 0.0, 0.0};
      use_phi();
      break;
    default:
      break;
  }
  return p;
}

double resonance_coefficient(const NormalForm& f, double r0, std::size_t n) {
  if (n == 0) return f.mu;
  const auto nn = static_cast<long long>(n);
  const Rational a = Rational(f.alpha) * nn + Rational(f.mu) + Rational(r0) * Rational(nn - 1, nn + 1);
  return to_double(a);
}

ReducedProfile solve_reduced_series(const ReducedProblem& p, std::optional<double> r0_in,
                                    const std::map<std::size_t, double>& resonant_choices, std::size_t order) {
  const auto& f = p.form;
  const Coeffs g = padded(p.g, order);
  double r0 = 0.0;
  if (f.mu != 0.0) {
    const double implied = g[0] / f.mu;
    if (r0_in && std::abs(f.mu * *r0_in - g[0]) > 1e-12 * std::max(1.0, std::abs(g[0]))) {
      throw InconsistentInitialValueError("order-zero identity mu r0 = g0 fails: r0 must be " + std::to_string(implied));
    }
    r0 = r0_in.value_or(implied);
  } else {
    if (std::abs(g[0]) > 1e-12) {
      throw InconsistentInitialValueError("order-zero identity forces g0 = 0 when mu = 0, got g0 = " +
                                          std::to_string(g[0]));
    }
    r0 = r0_in.value_or(0.0);
  }

  ReducedProfile out{p.id, Coeffs(order + 1, 0.0), {}, {}};
  auto& r = out.coeffs;
  r[0] = r0;
  const auto table = WeightTable::shared(order);
  for (std::size_t n = 1; n <= order; ++n) {
    double rhs = g[n];
    double magnitude = std::abs(g[n]);
    if (f.nu != 0.0) {
      rhs -= f.nu * r[n - 1];
      magnitude += std::abs(f.nu * r[n - 1]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double term = r[i] * r[n - i] * (*table)(i, n - i);
      rhs += term;
      magnitude += std::abs(term);
    }
    const double a = resonance_coefficient(f, r0, n);
    if (std::abs(a) <= kResonanceTolerance) {
      out.resonances.push_back(n);
      if (std::abs(rhs) > 1e-10 * (1.0 + magnitude)) throw InconsistentResonanceError(n, rhs);
      const auto it = resonant_choices.find(n);
      r[n] = it == resonant_choices.end() ? 0.0 : it->second;
      out.free_params[n] = r[n];
    } else {
      r[n] = rhs / a;
    }
  }
  for (const auto& [n, v] : resonant_choices) {
    if (n <= order && !out.free_params.contains(n)) {
      throw std::invalid_argument("resonant choice given for non-resonant index " + std::to_string(n));
    }
  }
  return out;
}

double reduced_residual(const ReducedProblem& p, std::span<const double> r, std::span<const double> z_samples) {
  if (r.empty()) return 0.0;
  const std::size_t n = r.size() - 1;
  const Coeffs conv = collision_convolve_to(r, r, 2 * n);
  const auto& f = p.form;
  double worst = 0.0;
  for (double z : z_samples) {
    const double rv = eval_series(r, z);
    const double dr = eval_series_derivative(r, z);
    const double g = p.g_value ? p.g_value(z) : eval_series(p.g, z);
    const double res = f.alpha * z * dr + f.mu * rv + f.nu * z * rv + rv * r[0] - eval_series(conv, z) - g;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

std::vector<double> closed_form_C_quadratic(double beta) {
  if (beta > 1.5) throw NoRealSolutionError("C^2 - 6C + 6 beta = 0 has no real root for beta > 3/2");
  const double disc = 9.0 - 6.0 * beta;
  if (disc == 0.0) return {3.0};
  const double s = std::sqrt(disc);
  return {3.0 - s, 3.0 + s};
}

double B_gamma(double gamma) {
  if (!(gamma > -2.0)) throw DomainError("B(gamma) diverges for gamma <= -2");
  if (gamma == 0.0) return 1.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double e = 0.5 * gamma;
  // Symmetric about 1/2; integrating over [0, 1/2] keeps 1 - s exact near the singular end.
  return 2.0 * integrator.integrate([e](double s) { return std::pow(s * (1.0 - s), e); }, 0.0, 0.5, 1e-13);
}

std::vector<double> closed_form_C_power(double beta, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("C x^{gamma/2} needs gamma > 0");
  if (beta > 0.0) throw NoRealSolutionError("C^2 B + beta = 0 has no real root for beta > 0");
  const double c = std::sqrt(-beta / B_gamma(gamma));
  if (c == 0.0) return {0.0};
  return {-c, c};
}

SourceModel matching_source(CaseId id, const CaseParams& p) {
  const Coeffs phi = phi_or_zero(p.phi);
  switch (id) {
    case CaseId::c4_1a:
    case CaseId::c4_1b:
    case CaseId::c4_1c:
      return SourceModel::row(2, p.beta);
    case CaseId::c4_2a:
    case CaseId::c4_2b:
      return SourceModel::row(3, p.beta, p.gamma);
    case CaseId::c4_2c:
      return SourceModel::row(3, p.beta, 1.0);
    case CaseId::c4_2d:
      return SourceModel::row(3, p.beta, 0.0);
    case CaseId::c4_3a:
    case CaseId::c4_3b:
    case CaseId::c4_3c:
      return SourceModel::row(4, p.beta);
    case CaseId::c4_4:
      return SourceModel::row(5, p.beta, p.gamma, phi);
    case CaseId::c4_5:
      return SourceModel::row(6, p.beta, p.gamma, phi);
    case CaseId::c4_6:
      return SourceModel::row(7, p.beta, p.gamma, phi);
    case CaseId::c4_7:
      return SourceModel::row(8, p.beta, p.gamma, phi);
    case CaseId::c4_8:
      return SourceModel::row(9, p.beta, p.gamma, phi);
    case CaseId::c4_9:
      return SourceModel::row(10, p.beta, p.gamma, phi);
    case CaseId::c4_10:
      return SourceModel::row(11, p.beta, p.gamma, phi);
  }
  return SourceModel::zero();
}

double lift(const InvariantSolution& sol, double x, double t) {
  const auto& p = sol.params;
  const auto& r = sol.profile;
  const auto R = [&](double z) { return eval_series(r, z); };
  switch (sol.id) {
    case CaseId::c4_1a:
      require_nonzero_time(sol.id, t);
      return R(x * t) / t;
    case CaseId::c4_1b:
    case CaseId::c4_8:
      return std::exp(x * t) * R(x);
    case CaseId::c4_1c:
      return p.C * x * std::exp(x * t);
    case CaseId::c4_2a:
      check_power_case(p);
      if (x < 0.0) throw DomainError("case 4.2a needs x >= 0");
      return p.C * std::pow(x, 0.5 * p.gamma);
    case CaseId::c4_2b:
    case CaseId::c4_10:
      return R(x);
    case CaseId::c4_2c:
      if (p.gamma != 1.0) throw DomainError("case 4.2c reduces with the plain convolution only for gamma = 1");
      require_nonzero_time(sol.id, t);
      return R(t * t * x) / t;
    case CaseId::c4_2d:
      return R(x * std::exp(-p.alpha * t));
    case CaseId::c4_3a:
      require_nonzero_time(sol.id, t);
      return -p.beta / t;
    case CaseId::c4_3b:
      require_positive_time(sol.id, t);
      return R(x * std::pow(t, p.alpha)) / t;
    case CaseId::c4_3c:
      require_nonzero_time(sol.id, t);
      return -p.beta / t + p.C;
    case CaseId::c4_4:
      require_positive_time(sol.id, t);
      return R(x * std::pow(t, p.gamma)) / t;
    case CaseId::c4_5:
      require_positive_time(sol.id, t);
      return std::pow(t, -(x + 1.0)) * R(x);
    case CaseId::c4_6:
      require_positive_time(sol.id, t);
      return std::pow(t, x - 1.0) * R(x);
    case CaseId::c4_7:
      return R(x * std::exp(-t));
    case CaseId::c4_9:
      return integral_of_phi_t(p.phi, t) + p.C;
  }
  return 0.0;
}

SeriesField lifted_field(const InvariantSolution& sol, std::size_t order) {
  const auto p = sol.params;
  const Coeffs r = padded(sol.profile, order);
  const auto id = sol.id;
  // phi = t^{-1} r(x t^k): a_n = r_n t^{kn-1}
  auto power_scaled = [r, order, id](double k, bool need_positive) -> SeriesField {
    return [=](double t) {
      if (need_positive) {
        require_positive_time(id, t);
      } else {
        require_nonzero_time(id, t);
      }
      FieldSnapshot s{Coeffs(order + 1), Coeffs(order + 1)};
      for (std::size_t n = 0; n <= order; ++n) {
        const double e = k * static_cast<double>(n) - 1.0;
        s.phi[n] = r[n] * std::pow(t, e);
        s.phi_t[n] = e * r[n] * std::pow(t, e - 1.0);
      }
      return s;
    };
  };
  // phi = e^{x t} r(x): phi_t = x phi
  auto exp_product = [r, order](double t) {
    FieldSnapshot s;
    s.phi = series_product(exp_series(t, order), r, order);
    s.phi_t = shift_up(s.phi);
    return s;
  };
  switch (id) {
    case CaseId::c4_1a:
      return power_scaled(1.0, false);
    case CaseId::c4_2c:
      if (p.gamma != 1.0) throw DomainError("case 4.2c reduces with the plain convolution only for gamma = 1");
      return power_scaled(2.0, false);
    case CaseId::c4_3b:
      return power_scaled(p.alpha, true);
    case CaseId::c4_4:
      return power_scaled(p.gamma, true);
    case CaseId::c4_1b:
    case CaseId::c4_8:
      return exp_product;
    case CaseId::c4_2b:
    case CaseId::c4_10:
      return [r, order](double) { return FieldSnapshot{r, Coeffs(order + 1, 0.0)}; };
    case CaseId::c4_2d:
    case CaseId::c4_7: {
      const double k = id == CaseId::c4_7 ? 1.0 : p.alpha;
      return [r, order, k](double t) {
        FieldSnapshot s{Coeffs(order + 1), Coeffs(order + 1)};
        for (std::size_t n = 0; n <= order; ++n) {
          const double kn = k * static_cast<double>(n);
          s.phi[n] = r[n] * std::exp(-kn * t);
          s.phi_t[n] = -kn * s.phi[n];
        }
        return s;
      };
    }
    case CaseId::c4_5:
    case CaseId::c4_6: {
      const double sign = id == CaseId::c4_5 ? -1.0 : 1.0;
      return [r, order, sign, id](double t) {
        require_positive_time(id, t);
        FieldSnapshot s;
        s.phi = series_product(exp_series(sign * std::log(t), order), r, order);
        for (auto& v : s.phi) v /= t;
        // 4.5: phi_t = -(x+1)/t phi;  4.6: phi_t = (x-1)/t phi
        s.phi_t.assign(order + 1, 0.0);
        for (std::size_t n = 0; n <= order; ++n) {
          const double prev = n > 0 ? s.phi[n - 1] : 0.0;
          s.phi_t[n] = (sign * prev - s.phi[n]) / t;
        }
        return s;
      };
    }
    case CaseId::c4_1c:
      return [C = p.C, order](double t) {
        FieldSnapshot s{Coeffs(order + 1, 0.0), {}};
        double term = C;  // C t^{n-1} / (n-1)!
        for (std::size_t n = 1; n <= order; ++n) {
          s.phi[n] = term;
          term *= t / static_cast<double>(n);
        }
        s.phi_t = shift_up(s.phi);
        return s;
      };
    case CaseId::c4_2a: {
      check_power_case(p);
      const double half = 0.5 * p.gamma;
      if (!is_integer(half)) {
        throw NotSeriesRepresentableError("case 4.2a with non-integer gamma/2 has no x-series; use the grid check");
      }
      return [C = p.C, order, k = static_cast<std::size_t>(half)](double) {
        FieldSnapshot s{Coeffs(order + 1, 0.0), Coeffs(order + 1, 0.0)};
        if (k <= order) s.phi[k] = C;
        return s;
      };
    }
    case CaseId::c4_3a:
    case CaseId::c4_3c: {
      const double c = id == CaseId::c4_3c ? p.C : 0.0;
      return [beta = p.beta, c, order, id](double t) {
        require_nonzero_time(id, t);
        FieldSnapshot s{Coeffs(order + 1, 0.0), Coeffs(order + 1, 0.0)};
        s.phi[0] = -beta / t + c;
        s.phi_t[0] = beta / (t * t);
        return s;
      };
    }
    case CaseId::c4_9:
      return [phi = p.phi, C = p.C, order](double t) {
        FieldSnapshot s{Coeffs(order + 1, 0.0), Coeffs(order + 1, 0.0)};
        s.phi[0] = integral_of_phi_t(phi, t) + C;
        s.phi_t[0] = eval_series(phi, t);
        return s;
      };
  }
  throw DomainError("no lifted field for case " + to_string(id));
}

double verify_lifted(const InvariantSolution& sol, const Region& region, std::size_t order) {
  const auto src = matching_source(sol.id, sol.params);
  src.require_regular_interval(region.t_lo, region.t_hi);
  const auto ts = linspace(region.t_lo, region.t_hi, region.nt);
  if (sol.id == CaseId::c4_2a && !is_integer(0.5 * sol.params.gamma)) {
    // Time independent: phi phi(0) - conv - q on a grid over [0, x_hi].
    check_power_case(sol.params);
    const auto grid = GridState::sample(region.x_hi, region.grid_points, [&](double x) { return lift(sol, x, 0.0); });
    const auto coll = collision_grid(grid, ConvolutionMethod::fft);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
      const double x = grid.x(i);
      if (x < region.x_lo) continue;
      const double res = grid.values()[i] * grid.values()[0] - coll[i] - q_value(src, x, region.t_lo);
      worst = std::max(worst, std::abs(res));
    }
    return worst;
  }
  const auto xs = linspace(region.x_lo, region.x_hi, region.nx);
  return equation_residual(lifted_field(sol, order), src, ts, xs);
}

}  // namespace boltzsym
