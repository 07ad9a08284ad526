#pragma once

// A solution given as a function of time returning its x-series and the
// analytic time derivative of that series; used to evaluate the full
// equation's residual without numerical differentiation.

#include <functional>
#include <span>

#include "boltzsym/series.hpp"
#include "boltzsym/source.hpp"

namespace boltzsym {

struct FieldSnapshot {
  Coeffs phi;    // coefficients of phi(., t)
  Coeffs phi_t;  // coefficients of d/dt phi(., t)
};

using SeriesField = std::function<FieldSnapshot(double t)>;

/// phi_t + phi(0) phi - conv(phi, phi) - q, coefficientwise up to the snapshot's order.
Coeffs equation_residual_coeffs(const FieldSnapshot& snap, std::span<const double> q);

/// max over (t, x) samples of |phi_t + phi phi(0) - int phi(xs) phi(x(1-s)) ds - q|.
double equation_residual(const SeriesField& field, const SourceModel& source,
                         std::span<const double> ts, std::span<const double> xs);

/// n evenly spaced points on [lo, hi] (n >= 2), or {lo} when n == 1.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace boltzsym
