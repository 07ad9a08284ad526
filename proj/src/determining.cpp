#include "boltzsym/determining.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "boltzsym/integrator.hpp"

namespace boltzsym {

Coeffs psi_series(const GeneratorCoeffs& g, const SeriesState& phi, const SourceModel& src) {
  const std::size_t n_max = phi.trunc();
  const Coeffs rhs = rhs_series(phi, q_series(src, phi.time, n_max));
  const double eta = -g.c2 * phi.time + g.c3;
  const auto& a = phi.coeffs;
  Coeffs psi(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double prev = n > 0 ? a[n - 1] : 0.0;
    psi[n] = g.c2 * a[n] + g.c1 * prev - g.c0 * static_cast<double>(n) * a[n] - eta * rhs[n];
  }
  return psi;
}

double deteq_residual(const GeneratorCoeffs& g, const SeriesState& phi, const SourceModel& src, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("probe step must be positive");
  src.require_regular_interval(phi.time - h, phi.time + h);
  const auto psi_at = [&](double dt) { return psi_series(g, rk4_step(phi, src, dt), src); };
  const Coeffs p_h = psi_at(h), m_h = psi_at(-h);
  const Coeffs p_h2 = psi_at(0.5 * h), m_h2 = psi_at(-0.5 * h);
  const Coeffs psi = psi_series(g, phi, src);
  const Coeffs conv = collision_convolve(psi, phi.coeffs);
  const auto& a = phi.coeffs;
  double worst = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const double d_h = (p_h[n] - m_h[n]) / (2.0 * h);
    const double d_h2 = (p_h2[n] - m_h2[n]) / h;
    const double dpsi = (4.0 * d_h2 - d_h) / 3.0;
    const double res = dpsi + psi[0] * a[n] + a[0] * psi[n] - 2.0 * conv[n];
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

SeriesState generic_solution(const SourceModel& src, std::uint64_t seed, std::size_t order, double t0, double t1,
                             double dt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  SeriesState s{Coeffs(order + 1, 0.0), t0};
  for (std::size_t n = 0; n <= std::min<std::size_t>(5, order); ++n) s.coeffs[n] = coeff(rng);
  IntegrationConfig cfg;
  cfg.t0 = t0;
  cfg.t1 = t1;
  cfg.dt = dt;
  cfg.record_every = 1u << 30;
  return integrate(std::move(s), src, cfg).states.back();
}

bool DeterminingReport::dichotomy_holds(int row) const {
  bool listed_ok = true, has_unlisted = false, denied_seen = false;
  for (const auto& c : checks) {
    if (c.row != row) continue;
    if (c.listed) {
      listed_ok = listed_ok && c.admitted;
    } else {
      has_unlisted = true;
      denied_seen = denied_seen || c.residual > kDeniedThreshold;
    }
  }
  return listed_ok && (!has_unlisted || denied_seen);
}

bool DeterminingReport::all_pass() const {
  std::set<int> rows;
  for (const auto& c : checks) rows.insert(c.row);
  return std::all_of(rows.begin(), rows.end(), [this](int r) { return dichotomy_holds(r); });
}

DeterminingReport verify_determining(std::span<const int> rows, std::uint64_t seed, double beta, double gamma,
                                     const Coeffs& phi) {
  const auto table = table2_rows(beta, gamma, phi);
  const auto samples = SampleGridSpec{}.points();
  DeterminingReport report;
  for (int k : rows) {
    const auto it = std::find_if(table.begin(), table.end(), [k](const Table2Row& r) { return r.row_index == k; });
    if (it == table.end()) throw std::invalid_argument("no classification row " + std::to_string(k));
    const SeriesState sol = generic_solution(it->source, seed + static_cast<std::uint64_t>(k));
    for (std::size_t i = 0; i < it->generators.size(); ++i) {
      const double r = deteq_residual(constants_of(it->generators[i]), sol, it->source);
      report.checks.push_back({k, it->generator_labels[i], true, r, r <= kAdmittedTolerance});
    }
    for (int b = 0; b < 4; ++b) {
      const auto c = constants_of(lie::LieElement::basis(b));
      if (remain2_residual(c, it->source, samples) <= kTable2Tolerance) continue;
      const double r = deteq_residual(c, sol, it->source);
      report.checks.push_back({k, "X" + std::to_string(b), false, r, r <= kAdmittedTolerance});
    }
  }
  return report;
}

void write_determining_csv(std::ostream& os, const DeterminingReport& report) {
  os << "row,generator,residual,admitted\n";
  for (const auto& c : report.checks) {
    os << c.row << ',' << c.generator << ',' << std::setprecision(17) << c.residual << ','
       << (c.admitted ? "true" : "false") << '\n';
  }
}

}  // namespace boltzsym
