#pragma once

// Point transformations that preserve the form of the equation while
// changing the source:
//   0: x -> x e^a                       q unchanged
//   1: phi -> phi e^{a x}               q -> q e^{a x}
//   2: t -> t e^{-a}, phi -> phi e^a    q -> q e^{2a}
//   3: t -> t + a
// and the involution t -> -t, phi -> -phi.

#include <utility>

#include "boltzsym/field.hpp"
#include "boltzsym/grid.hpp"
#include "boltzsym/series.hpp"
#include "boltzsym/source.hpp"

namespace boltzsym {

/// Map taking the source q(x,t) to the transformed source q_bar(x_bar, t_bar).
SourceMap equivalence_source_map(int index, double a);
SourceMap involution_source_map();

std::pair<SeriesState, SourceModel> apply_equivalence_to_solution(int index, double a, const SeriesState& phi,
                                                                  const SourceModel& src);
std::pair<GridState, SourceModel> apply_equivalence_to_solution(int index, double a, const GridState& phi,
                                                                const SourceModel& src);
std::pair<SeriesState, SourceModel> apply_involution(const SeriesState& phi, const SourceModel& src);
std::pair<GridState, SourceModel> apply_involution(const GridState& phi, const SourceModel& src);

/// The transformed solution as a field of t_bar.
SeriesField transform_field(int index, double a, SeriesField field);
SeriesField involution_field(SeriesField field);

}  // namespace boltzsym
