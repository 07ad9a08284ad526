#include "boltzsym/equivalence.hpp"

#include <cmath>
#include <stdexcept>

namespace boltzsym {

namespace {

void check_index(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("equivalence index must be 0..3");
}

Coeffs scale_powers(Coeffs c, double factor) {
  double f = 1.0;
  for (auto& v : c) {
    v *= f;
    f *= factor;
  }
  return c;
}

Coeffs times_exp(const Coeffs& c, double k) {
  if (c.empty()) return c;
  return series_product(exp_series(k, c.size() - 1), c, c.size() - 1);
}

Coeffs scaled(Coeffs c, double s) {
  for (auto& v : c) v *= s;
  return c;
}

}  // namespace

SourceMap equivalence_source_map(int index, double a) {
  check_index(index);
  SourceMap m;
  switch (index) {
    case 0: m.lambda = std::exp(-a); break;
    case 1: m.kappa = a; break;
    case 2:
      m.amplitude = std::exp(2.0 * a);
      m.sigma = std::exp(a);
      break;
    case 3: m.tau = -a; break;
  }
  return m;
}

SourceMap involution_source_map() {
  SourceMap m;
  m.sigma = -1.0;
  return m;
}

std::pair<SeriesState, SourceModel> apply_equivalence_to_solution(int index, double a, const SeriesState& phi,
                                                                  const SourceModel& src) {
  check_index(index);
  SeriesState out = phi;
  switch (index) {
    case 0: out.coeffs = scale_powers(phi.coeffs, std::exp(-a)); break;
    case 1: out.coeffs = times_exp(phi.coeffs, a); break;
    case 2:
      out.coeffs = scaled(phi.coeffs, std::exp(a));
      out.time = phi.time * std::exp(-a);
      break;
    case 3: out.time = phi.time + a; break;
  }
  return {std::move(out), src.mapped(equivalence_source_map(index, a))};
}

std::pair<GridState, SourceModel> apply_equivalence_to_solution(int index, double a, const GridState& phi,
                                                                const SourceModel& src) {
  check_index(index);
  auto mapped = src.mapped(equivalence_source_map(index, a));
  switch (index) {
    case 0:
      // phi_bar(x e^a) = phi(x): same samples on a stretched grid.
      return {GridState(phi.x_max() * std::exp(a), phi.values(), phi.time()), std::move(mapped)};
    case 1: {
      auto v = phi.values();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(a * phi.x(i));
      return {GridState(phi.x_max(), std::move(v), phi.time()), std::move(mapped)};
    }
    case 2:
      return {GridState(phi.x_max(), scaled(phi.values(), std::exp(a)), phi.time() * std::exp(-a)),
              std::move(mapped)};
    default:
      return {GridState(phi.x_max(), phi.values(), phi.time() + a), std::move(mapped)};
  }
}

std::pair<SeriesState, SourceModel> apply_involution(const SeriesState& phi, const SourceModel& src) {
  return {SeriesState{scaled(phi.coeffs, -1.0), -phi.time}, src.mapped(involution_source_map())};
}

std::pair<GridState, SourceModel> apply_involution(const GridState& phi, const SourceModel& src) {
  return {GridState(phi.x_max(), scaled(phi.values(), -1.0), -phi.time()), src.mapped(involution_source_map())};
}

SeriesField transform_field(int index, double a, SeriesField field) {
  check_index(index);
  switch (index) {
    case 0:
      return [f = std::move(field), a](double t) {
        auto s = f(t);
        return FieldSnapshot{scale_powers(s.phi, std::exp(-a)), scale_powers(s.phi_t, std::exp(-a))};
      };
    case 1:
      return [f = std::move(field), a](double t) {
        auto s = f(t);
        return FieldSnapshot{times_exp(s.phi, a), times_exp(s.phi_t, a)};
      };
    case 2:
      return [f = std::move(field), a](double t) {
        auto s = f(t * std::exp(a));
        return FieldSnapshot{scaled(s.phi, std::exp(a)), scaled(s.phi_t, std::exp(2.0 * a))};
      };
    default:
      return [f = std::move(field), a](double t) { return f(t - a); };
  }
}

SeriesField involution_field(SeriesField field) {
  return [f = std::move(field)](double t) {
    auto s = f(-t);
    return FieldSnapshot{scaled(s.phi, -1.0), std::move(s.phi_t)};
  };
}

}  // namespace boltzsym
