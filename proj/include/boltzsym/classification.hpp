#pragma once

// Group classification of the source: the classifying equation
//   (c2 t - c3) q_t - c0 x q_x + (c1 x + 2 c2) q = 0
// checked row by row against the embedded classification table.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boltzsym/lie.hpp"
#include "boltzsym/source.hpp"

namespace boltzsym {

struct ClassifyConstants {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  bool operator==(const ClassifyConstants&) const = default;
};

ClassifyConstants constants_of(const lie::LieElement& e);

struct SamplePoint {
  double x, t;
};

struct SampleGridSpec {
  double x_lo = 0.1, x_hi = 2.0;
  std::size_t nx = 20;
  double t_lo = 0.5, t_hi = 2.0;
  std::size_t nt = 20;

  std::vector<SamplePoint> points() const;
};

/// Pointwise residual of the classifying equation.
double remain2_pointwise(const ClassifyConstants& c, const SourceModel& src, double x, double t);
/// max |residual| over the samples; throws SingularSourceError on an irregular sample.
double remain2_residual(const ClassifyConstants& c, const SourceModel& src, std::span<const SamplePoint> samples);

struct Table2Row {
  int row_index;
  SourceModel source;
  std::vector<lie::LieElement> generators;
  std::vector<std::string> generator_labels;
};

/// The eleven rows instantiated for the given parameters. Row 3 carries both
/// gamma X2 + 2 X0 and X3.
std::vector<Table2Row> table2_rows(double beta, double gamma, const Coeffs& phi);

struct Table2Check {
  int row;
  std::string generator;
  double max_residual;     // unscaled
  double scaled_residual;  // max_residual / max |q| over the sample (0 when q == 0)
  bool pass;
};

struct Table2Report {
  std::vector<Table2Check> checks;
  bool all_pass() const;
  std::vector<int> failing_rows() const;
};

inline constexpr double kTable2Tolerance = 1e-9;

Table2Report verify_rows(std::span<const Table2Row> rows, const SampleGridSpec& grid = {},
                         double tolerance = kTable2Tolerance);
Table2Report verify_table2(double beta = 1.3, double gamma = 2.0, const Coeffs& phi = {1.0, 1.0, 0.5},
                           const SampleGridSpec& grid = {});

/// Positive control: replaces the first generator of one seeded row (2..11)
/// with a seeded pseudo-random element. Returns the corrupted row index.
int corrupt_generators(std::vector<Table2Row>& rows, std::uint64_t seed);

void write_table2_csv(std::ostream& os, const Table2Report& report);

}  // namespace boltzsym
