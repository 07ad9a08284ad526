#pragma once

// Catalogue of source functions q(x,t) admitted by the group classification,
// plus the zero source, user series, and sources carried through an
// equivalence transformation.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boltzsym/series.hpp"

namespace boltzsym {

enum class SourceFamily {
  zero,
  row2,    // beta x^2 e^{tx}
  row3,    // beta x^gamma
  row4,    // beta t^-2
  row5,    // t^-2 Phi(x t^gamma)
  row6,    // t^{-(x+2)} Phi(x)
  row7,    // t^{x-2} Phi(x)
  row8,    // Phi(x e^{-t})
  row9,    // e^{xt} Phi(x)
  row10,   // Phi(t)
  row11,   // Phi(x)
  custom,  // sum_k sum_n c[k][n] t^k x^n
  mapped,  // A e^{kappa x} q(lambda x, sigma t + tau)
};

std::string to_string(SourceFamily f);

/// q_bar(x, t) = amplitude * e^{kappa x} * q(lambda x, sigma t + tau).
/// Closed under composition; covers every equivalence transformation and the involution.
struct SourceMap {
  double amplitude = 1.0;
  double kappa = 0.0;
  double lambda = 1.0;
  double sigma = 1.0;
  double tau = 0.0;
};

struct Partials {
  double q_x = 0.0;
  double q_t = 0.0;
};

class SourceModel {
 public:
  SourceModel() = default;

  static SourceModel zero();
  /// Table row k in 2..11 (row 1 is zero()). Phi is a finite power series;
  /// for row 10 it is a series in t.
  static SourceModel row(int k, double beta = 1.0, double gamma = 0.0, Coeffs phi = {});
  /// Time-constant user series.
  static SourceModel custom(Coeffs q);
  /// coeffs[k][n] multiplies t^k x^n.
  static SourceModel custom(std::vector<Coeffs> coeffs);

  SourceModel mapped(const SourceMap& m) const;

  SourceFamily family() const noexcept { return family_; }
  int row_index() const noexcept;  // 1..11, 0 for custom/mapped
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  const Coeffs& phi() const noexcept { return phi_; }
  const std::vector<Coeffs>& custom_coeffs() const noexcept { return custom_; }
  bool gamma_is_integer() const noexcept;
  std::string describe() const;

  /// Whether t lies outside the family's singular set.
  bool is_regular(double t) const;
  /// Throws SingularSourceError if any t in [t0, t1] is singular.
  void require_regular_interval(double t0, double t1) const;
  bool is_series_representable(double t) const;

 private:
  friend double q_value(const SourceModel&, double, double);
  friend Partials q_partials(const SourceModel&, double, double);
  friend Coeffs q_series(const SourceModel&, double, std::size_t);

  SourceFamily family_ = SourceFamily::zero;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  Coeffs phi_;
  std::vector<Coeffs> custom_;
  std::shared_ptr<const SourceModel> base_;
  SourceMap map_;
};

double q_value(const SourceModel& src, double x, double t);
/// Analytic partial derivatives.
Partials q_partials(const SourceModel& src, double x, double t);
/// Coefficients of q(., t) in x up to order n_max; throws NotSeriesRepresentableError.
Coeffs q_series(const SourceModel& src, double t, std::size_t n_max);

}  // namespace boltzsym
