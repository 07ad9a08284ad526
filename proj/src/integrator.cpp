#include "boltzsym/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "boltzsym/errors.hpp"

namespace boltzsym {

namespace {

void guard(std::span<const double> v, double t, double threshold) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw BlowUpError(t, x);
    m = std::max(m, std::abs(x));
  }
  if (!(m < threshold)) throw BlowUpError(t, m);
}

// Generic RK4 on a flat vector; rhs(values, t) -> derivative.
template <class Rhs>
std::vector<double> rk4(const std::vector<double>& y, double t, double dt, double threshold, Rhs&& rhs) {
  const std::size_t n = y.size();
  std::vector<double> tmp(n);
  auto axpy = [&](const std::vector<double>& k, double c) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + c * k[i];
    guard(tmp, t + c, threshold);
    return tmp;
  };
  const auto k1 = rhs(y, t);
  const auto k2 = rhs(axpy(k1, 0.5 * dt), t + 0.5 * dt);
  const auto k3 = rhs(axpy(k2, 0.5 * dt), t + 0.5 * dt);
  const auto k4 = rhs(axpy(k3, dt), t + dt);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  guard(out, t + dt, threshold);
  return out;
}

template <class State, class Step>
Trajectory<State> run(State state, const SourceModel& source, const IntegrationConfig& config, Step&& step) {
  config.validate();
  source.require_regular_interval(config.t0, config.t1);
  Trajectory<State> traj;
  const auto set_time = [](State& s, double t) {
    if constexpr (std::is_same_v<State, SeriesState>) {
      s.time = t;
    } else {
      s.set_time(t);
    }
  };
  set_time(state, config.t0);
  traj.times.push_back(config.t0);
  traj.states.push_back(state);

  const double span = config.t1 - config.t0;
  const auto n_full = static_cast<std::size_t>(std::floor(span / config.dt * (1.0 + 1e-12)));
  const double rest = span - static_cast<double>(n_full) * config.dt;
  const bool partial = rest > 1e-12 * config.dt;
  const std::size_t n_steps = n_full + (partial ? 1 : 0);

  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t = config.t0 + static_cast<double>(k - 1) * config.dt;
    const bool last = k == n_steps;
    const double h = last ? config.t1 - t : config.dt;
    state = step(state, h);
    set_time(state, last ? config.t1 : config.t0 + static_cast<double>(k) * config.dt);
    if (last || k % config.record_every == 0) {
      traj.times.push_back(last ? config.t1 : config.t0 + static_cast<double>(k) * config.dt);
      traj.states.push_back(state);
    }
  }
  return traj;
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(t1 > t0)) throw std::invalid_argument("integration: t1 must exceed t0");
  if (!(dt > 0.0)) throw std::invalid_argument("integration: dt must be positive");
  if (dt > t1 - t0) throw std::invalid_argument("integration: dt exceeds the horizon");
  if (record_every == 0) throw std::invalid_argument("integration: record_every must be >= 1");
}

SeriesState rk4_step(const SeriesState& state, const SourceModel& source, double dt, double blowup_threshold) {
  const std::size_t order = state.trunc();
  const auto table = WeightTable::shared(order);
  auto rhs = [&](const std::vector<double>& a, double t) {
    const auto q = q_series(source, t, order);
    auto out = collision_convolve(a, a, *table);
    for (std::size_t n = 0; n < a.size(); ++n) out[n] += -a[0] * a[n] + q[n];
    return out;
  };
  guard(state.coeffs, state.time, blowup_threshold);
  return SeriesState{rk4(state.coeffs, state.time, dt, blowup_threshold, rhs), state.time + dt};
}

GridState rk4_step(const GridState& state, const SourceModel& source, double dt, double blowup_threshold,
                   ConvolutionMethod method) {
  const double h = state.spacing();
  auto rhs = [&](const std::vector<double>& v, double t) {
    if (!source.is_regular(t)) throw SingularSourceError(source.describe(), t);
    auto out = collision_grid(v, method);
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] += -v[i] * v[0] + q_value(source, static_cast<double>(i) * h, t);
    }
    return out;
  };
  guard(state.values(), state.time(), blowup_threshold);
  return GridState(state.x_max(), rk4(state.values(), state.time(), dt, blowup_threshold, rhs),
                   state.time() + dt);
}

Trajectory<SeriesState> integrate(SeriesState state, const SourceModel& source, const IntegrationConfig& config) {
  q_series(source, config.t0, state.trunc());  // fail fast on unrepresentable sources
  return run(std::move(state), source, config, [&](const SeriesState& s, double h) {
    return rk4_step(s, source, h, config.blowup_threshold);
  });
}

Trajectory<GridState> integrate(GridState state, const SourceModel& source, const IntegrationConfig& config) {
  return run(std::move(state), source, config, [&](const GridState& s, double h) {
    return rk4_step(s, source, h, config.blowup_threshold, config.grid_method);
  });
}

double step_doubling_error(const SeriesState& state, const SourceModel& source, double dt) {
  const auto one = rk4_step(state, source, dt);
  const auto two = rk4_step(rk4_step(state, source, 0.5 * dt), source, 0.5 * dt);
  double err = 0.0;
  for (std::size_t i = 0; i < one.coeffs.size(); ++i) err = std::max(err, std::abs(one.coeffs[i] - two.coeffs[i]));
  return err;
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory<SeriesState>& traj) {
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    nlohmann::json rec{{"time", traj.times[k]}, {"kind", "series"}, {"coeffs", traj.states[k].coeffs}};
    os << rec.dump() << '\n';
  }
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory<GridState>& traj) {
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& s = traj.states[k];
    nlohmann::json rec{{"time", traj.times[k]}, {"kind", "grid"}, {"x_max", s.x_max()}, {"values", s.values()}};
    os << rec.dump() << '\n';
  }
}

}  // namespace boltzsym
