#pragma once

// Fixed-step classical RK4 for either backend.  The blow-up guard inspects
// every stage, not only completed steps.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "boltzsym/grid.hpp"
#include "boltzsym/series.hpp"
#include "boltzsym/source.hpp"

namespace boltzsym {

inline constexpr double kDefaultBlowupThreshold = 1e8;
inline constexpr double kDefaultStep = 1e-3;

struct IntegrationConfig {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = kDefaultStep;
  double blowup_threshold = kDefaultBlowupThreshold;
  std::size_t record_every = 1;
  ConvolutionMethod grid_method = ConvolutionMethod::fft;

  /// Throws std::invalid_argument when t1 <= t0, dt <= 0, dt > t1 - t0 or record_every == 0.
  void validate() const;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
};

/// One RK4 step; dt may be negative (used for backward probes).
SeriesState rk4_step(const SeriesState& state, const SourceModel& source, double dt,
                     double blowup_threshold = kDefaultBlowupThreshold);
GridState rk4_step(const GridState& state, const SourceModel& source, double dt,
                   double blowup_threshold = kDefaultBlowupThreshold,
                   ConvolutionMethod method = ConvolutionMethod::fft);

/// Starts from `state` (its time is overwritten by config.t0). The last step is
/// shortened so the final time is exactly t1; the initial and final states are
/// always recorded.
Trajectory<SeriesState> integrate(SeriesState state, const SourceModel& source, const IntegrationConfig& config);
Trajectory<GridState> integrate(GridState state, const SourceModel& source, const IntegrationConfig& config);

/// Max-abs difference between one step of dt and two steps of dt/2 (diagnostic only).
double step_doubling_error(const SeriesState& state, const SourceModel& source, double dt);

/// JSON-lines, one record per saved time.
void write_trajectory_jsonl(std::ostream& os, const Trajectory<SeriesState>& traj);
void write_trajectory_jsonl(std::ostream& os, const Trajectory<GridState>& traj);

}  // namespace boltzsym
