#include "boltzsym/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace boltzsym {

Coeffs equation_residual_coeffs(const FieldSnapshot& snap, std::span<const double> q) {
  const auto& a = snap.phi;
  if (snap.phi_t.size() != a.size() || q.size() != a.size()) {
    throw std::invalid_argument("equation_residual_coeffs: truncation mismatch");
  }
  Coeffs r = collision_convolve(a, a);
  for (std::size_t n = 0; n < a.size(); ++n) r[n] = snap.phi_t[n] + a[0] * a[n] - r[n] - q[n];
  return r;
}

double equation_residual(const SeriesField& field, const SourceModel& source, std::span<const double> ts,
                         std::span<const double> xs) {
  double worst = 0.0;
  for (double t : ts) {
    const auto snap = field(t);
    const auto q = q_series(source, t, snap.phi.size() - 1);
    const auto r = equation_residual_coeffs(snap, q);
    for (double x : xs) worst = std::max(worst, std::abs(eval_series(r, x)));
  }
  return worst;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace boltzsym
