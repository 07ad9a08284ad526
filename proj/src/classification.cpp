#include "boltzsym/classification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace boltzsym {

ClassifyConstants constants_of(const lie::LieElement& e) {
  return {e.coords[0], e.coords[1], e.coords[2], e.coords[3]};
}

std::vector<SamplePoint> SampleGridSpec::points() const {
  std::vector<SamplePoint> out;
  out.reserve(nx * nt);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(nx - 1);
    for (std::size_t j = 0; j < nt; ++j) {
      const double t = nt == 1 ? t_lo : t_lo + (t_hi - t_lo) * static_cast<double>(j) / static_cast<double>(nt - 1);
      out.push_back({x, t});
    }
  }
  return out;
}

double remain2_pointwise(const ClassifyConstants& c, const SourceModel& src, double x, double t) {
  const double q = q_value(src, x, t);
  const Partials p = q_partials(src, x, t);
  return (c.c2 * t - c.c3) * p.q_t - c.c0 * x * p.q_x + (c.c1 * x + 2.0 * c.c2) * q;
}

double remain2_residual(const ClassifyConstants& c, const SourceModel& src, std::span<const SamplePoint> samples) {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(remain2_pointwise(c, src, s.x, s.t)));
  return worst;
}

std::vector<Table2Row> table2_rows(double beta, double gamma, const Coeffs& phi) {
  using lie::LieElement;
  const auto X = [](int i) { return LieElement::basis(i); };
  std::vector<Table2Row> rows;
  rows.push_back({1, SourceModel::zero(), {X(0), X(1), X(2), X(3)}, {"X0", "X1", "X2", "X3"}});
  rows.push_back({2, SourceModel::row(2, beta), {X(2) + X(0), X(1) + X(3)}, {"X2+X0", "X1+X3"}});
  rows.push_back({3, SourceModel::row(3, beta, gamma), {X(2) * gamma + X(0) * 2.0, X(3)}, {"gamma*X2+2X0", "X3"}});
  rows.push_back({4, SourceModel::row(4, beta), {X(0), X(2)}, {"X0", "X2"}});
  rows.push_back({5, SourceModel::row(5, beta, gamma, phi), {X(0) * gamma + X(2)}, {"gamma*X0+X2"}});
  rows.push_back({6, SourceModel::row(6, beta, gamma, phi), {X(1) + X(2)}, {"X1+X2"}});
  rows.push_back({7, SourceModel::row(7, beta, gamma, phi), {X(1) - X(2)}, {"X1-X2"}});
  rows.push_back({8, SourceModel::row(8, beta, gamma, phi), {X(0) + X(3)}, {"X0+X3"}});
  rows.push_back({9, SourceModel::row(9, beta, gamma, phi), {X(1) + X(3)}, {"X1+X3"}});
  rows.push_back({10, SourceModel::row(10, beta, gamma, phi), {X(0)}, {"X0"}});
  rows.push_back({11, SourceModel::row(11, beta, gamma, phi), {X(3)}, {"X3"}});
  return rows;
}

bool Table2Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Table2Check& c) { return c.pass; });
}

std::vector<int> Table2Report::failing_rows() const {
  std::vector<int> out;
  for (const auto& c : checks) {
    if (!c.pass && (out.empty() || out.back() != c.row)) out.push_back(c.row);
  }
  return out;
}

Table2Report verify_rows(std::span<const Table2Row> rows, const SampleGridSpec& grid, double tolerance) {
  const auto samples = grid.points();
  Table2Report report;
  for (const auto& row : rows) {
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, std::abs(q_value(row.source, s.x, s.t)));
    for (std::size_t k = 0; k < row.generators.size(); ++k) {
      const double res = remain2_residual(constants_of(row.generators[k]), row.source, samples);
      const double scaled = scale > 0.0 ? res / scale : res;
      const std::string label = k < row.generator_labels.size() ? row.generator_labels[k] : row.generators[k].to_string();
      report.checks.push_back({row.row_index, label, res, scaled, scaled <= tolerance});
    }
  }
  return report;
}

Table2Report verify_table2(double beta, double gamma, const Coeffs& phi, const SampleGridSpec& grid) {
  const auto rows = table2_rows(beta, gamma, phi);
  return verify_rows(rows, grid);
}

int corrupt_generators(std::vector<Table2Row>& rows, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].row_index >= 2 && !rows[i].generators.empty()) candidates.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto& row = rows[candidates[pick(rng)]];
  lie::LieElement e;
  for (auto& v : e.coords) v = coord(rng);
  row.generators.front() = e;
  row.generator_labels.front() = e.to_string();
  return row.row_index;
}

void write_table2_csv(std::ostream& os, const Table2Report& report) {
  const auto old = os.precision(17);
  os << "row,generator,max_residual,pass\n";
  for (const auto& c : report.checks) {
    os << c.row << ',' << c.generator << ',' << c.scaled_residual << ',' << (c.pass ? "true" : "false") << '\n';
  }
  os.precision(old);
}

}  // namespace boltzsym
