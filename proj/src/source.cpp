#include "boltzsym/source.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boltzsym/errors.hpp"

namespace boltzsym {

namespace {

enum class Singularity { none, at_zero, non_positive };

Singularity singularity_of(const SourceModel& src) {
  switch (src.family()) {
    case SourceFamily::row4:
      return Singularity::at_zero;
    case SourceFamily::row5:
      return src.gamma_is_integer() ? Singularity::at_zero : Singularity::non_positive;
    case SourceFamily::row6:
    case SourceFamily::row7:
      return Singularity::non_positive;
    default:
      return Singularity::none;
  }
}

double poly(const Coeffs& c, double x) { return eval_series(c, x); }
double dpoly(const Coeffs& c, double x) { return eval_series_derivative(c, x); }

Coeffs resized(Coeffs c, std::size_t n_max) {
  c.resize(n_max + 1, 0.0);
  return c;
}

}  // namespace

std::string to_string(SourceFamily f) {
  switch (f) {
    case SourceFamily::zero: return "zero";
    case SourceFamily::row2: return "row2";
    case SourceFamily::row3: return "row3";
    case SourceFamily::row4: return "row4";
    case SourceFamily::row5: return "row5";
    case SourceFamily::row6: return "row6";
    case SourceFamily::row7: return "row7";
    case SourceFamily::row8: return "row8";
    case SourceFamily::row9: return "row9";
    case SourceFamily::row10: return "row10";
    case SourceFamily::row11: return "row11";
    case SourceFamily::custom: return "custom";
    case SourceFamily::mapped: return "mapped";
  }
  return "unknown";
}

SourceModel SourceModel::zero() { return SourceModel{}; }

SourceModel SourceModel::row(int k, double beta, double gamma, Coeffs phi) {
  if (k == 1) return zero();
  if (k < 2 || k > 11) throw std::invalid_argument("source row must be in 1..11, got " + std::to_string(k));
  SourceModel s;
  s.family_ = static_cast<SourceFamily>(k - 1);
  s.beta_ = beta;
  s.gamma_ = gamma;
  s.phi_ = std::move(phi);
  if (k >= 5 && s.phi_.empty()) throw std::invalid_argument("row " + std::to_string(k) + " needs Phi coefficients");
  return s;
}

SourceModel SourceModel::custom(Coeffs q) { return custom(std::vector<Coeffs>{std::move(q)}); }

SourceModel SourceModel::custom(std::vector<Coeffs> coeffs) {
  SourceModel s;
  s.family_ = SourceFamily::custom;
  s.custom_ = std::move(coeffs);
  return s;
}

SourceModel SourceModel::mapped(const SourceMap& m) const {
  SourceModel s;
  s.family_ = SourceFamily::mapped;
  s.base_ = std::make_shared<const SourceModel>(*this);
  s.map_ = m;
  return s;
}

int SourceModel::row_index() const noexcept {
  if (family_ == SourceFamily::zero) return 1;
  if (family_ == SourceFamily::custom || family_ == SourceFamily::mapped) return 0;
  return static_cast<int>(family_) + 1;
}

bool SourceModel::gamma_is_integer() const noexcept { return std::nearbyint(gamma_) == gamma_; }

std::string SourceModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(family_);
  if (family_ == SourceFamily::mapped) {
    os << "[A=" << map_.amplitude << ",kappa=" << map_.kappa << ",lambda=" << map_.lambda
       << ",sigma=" << map_.sigma << ",tau=" << map_.tau << "](" << base_->describe() << ")";
  } else if (family_ != SourceFamily::zero && family_ != SourceFamily::custom) {
    os << "(beta=" << beta_ << ",gamma=" << gamma_ << ")";
  }
  return os.str();
}

bool SourceModel::is_regular(double t) const {
  if (!std::isfinite(t)) return false;
  if (family_ == SourceFamily::mapped) return base_->is_regular(map_.sigma * t + map_.tau);
  switch (singularity_of(*this)) {
    case Singularity::none: return true;
    case Singularity::at_zero: return t != 0.0;
    case Singularity::non_positive: return t > 0.0;
  }
  return true;
}

void SourceModel::require_regular_interval(double t0, double t1) const {
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  if (family_ == SourceFamily::mapped) {
    try {
      base_->require_regular_interval(map_.sigma * lo + map_.tau, map_.sigma * hi + map_.tau);
    } catch (const SingularSourceError& e) {
      throw SingularSourceError(describe(), (e.time() - map_.tau) / map_.sigma);
    }
    return;
  }
  switch (singularity_of(*this)) {
    case Singularity::none:
      return;
    case Singularity::at_zero:
      if (lo <= 0.0 && hi >= 0.0) throw SingularSourceError(describe(), 0.0);
      return;
    case Singularity::non_positive:
      if (lo <= 0.0) throw SingularSourceError(describe(), lo);
      return;
  }
}

bool SourceModel::is_series_representable(double t) const {
  if (!is_regular(t)) return false;
  if (family_ == SourceFamily::mapped) return base_->is_series_representable(map_.sigma * t + map_.tau);
  if (family_ == SourceFamily::row3) return gamma_is_integer() && gamma_ >= 0.0;
  return true;
}

double q_value(const SourceModel& src, double x, double t) {
  if (!src.is_regular(t)) throw SingularSourceError(src.describe(), t);
  const double b = src.beta_;
  const double g = src.gamma_;
  const Coeffs& phi = src.phi_;
  switch (src.family_) {
    case SourceFamily::zero:
      return 0.0;
    case SourceFamily::row2:
      return b * x * x * std::exp(t * x);
    case SourceFamily::row3:
      if (!src.gamma_is_integer() && (x < 0.0 || (x == 0.0 && g < 0.0))) {
        throw DomainError("row3: x^gamma undefined at x=" + std::to_string(x));
      }
      return b * std::pow(x, g);
    case SourceFamily::row4:
      return b / (t * t);
    case SourceFamily::row5:
      return poly(phi, x * std::pow(t, g)) / (t * t);
    case SourceFamily::row6:
      return std::pow(t, -(x + 2.0)) * poly(phi, x);
    case SourceFamily::row7:
      return std::pow(t, x - 2.0) * poly(phi, x);
    case SourceFamily::row8:
      return poly(phi, x * std::exp(-t));
    case SourceFamily::row9:
      return std::exp(x * t) * poly(phi, x);
    case SourceFamily::row10:
      return poly(phi, t);
    case SourceFamily::row11:
      return poly(phi, x);
    case SourceFamily::custom: {
      double acc = 0.0;
      for (auto k = src.custom_.size(); k-- > 0;) acc = acc * t + poly(src.custom_[k], x);
      return acc;
    }
    case SourceFamily::mapped: {
      const auto& m = src.map_;
      return m.amplitude * std::exp(m.kappa * x) * q_value(*src.base_, m.lambda * x, m.sigma * t + m.tau);
    }
  }
  return 0.0;
}

Partials q_partials(const SourceModel& src, double x, double t) {
  if (!src.is_regular(t)) throw SingularSourceError(src.describe(), t);
  const double b = src.beta_;
  const double g = src.gamma_;
  const Coeffs& phi = src.phi_;
  switch (src.family_) {
    case SourceFamily::zero:
      return {};
    case SourceFamily::row2: {
      const double e = std::exp(t * x);
      return {b * (2.0 * x + t * x * x) * e, b * x * x * x * e};
    }
    case SourceFamily::row3:
      if (g == 0.0) return {};
      if (!src.gamma_is_integer() && (x < 0.0 || (x == 0.0 && g < 1.0))) {
        throw DomainError("row3: d/dx x^gamma undefined at x=" + std::to_string(x));
      }
      return {b * g * std::pow(x, g - 1.0), 0.0};
    case SourceFamily::row4:
      return {0.0, -2.0 * b / (t * t * t)};
    case SourceFamily::row5: {
      const double tg = std::pow(t, g);
      const double u = x * tg;
      const double p = poly(phi, u);
      const double dp = dpoly(phi, u);
      return {dp * tg / (t * t), -2.0 * p / (t * t * t) + dp * g * u / (t * t * t)};
    }
    case SourceFamily::row6: {
      const double w = std::pow(t, -(x + 2.0));
      const double q = w * poly(phi, x);
      return {-std::log(t) * q + w * dpoly(phi, x), -(x + 2.0) / t * q};
    }
    case SourceFamily::row7: {
      const double w = std::pow(t, x - 2.0);
      const double q = w * poly(phi, x);
      return {std::log(t) * q + w * dpoly(phi, x), (x - 2.0) / t * q};
    }
    case SourceFamily::row8: {
      const double e = std::exp(-t);
      const double dp = dpoly(phi, x * e);
      return {e * dp, -x * e * dp};
    }
    case SourceFamily::row9: {
      const double e = std::exp(x * t);
      const double p = poly(phi, x);
      return {e * (t * p + dpoly(phi, x)), x * e * p};
    }
    case SourceFamily::row10:
      return {0.0, dpoly(phi, t)};
    case SourceFamily::row11:
      return {dpoly(phi, x), 0.0};
    case SourceFamily::custom: {
      Partials p;
      double tk = 1.0;
      for (std::size_t k = 0; k < src.custom_.size(); ++k) {
        p.q_x += tk * dpoly(src.custom_[k], x);
        if (k + 1 < src.custom_.size()) {
          p.q_t += static_cast<double>(k + 1) * tk * poly(src.custom_[k + 1], x);
        }
        tk *= t;
      }
      return p;
    }
    case SourceFamily::mapped: {
      const auto& m = src.map_;
      const double xb = m.lambda * x;
      const double tb = m.sigma * t + m.tau;
      const double e = m.amplitude * std::exp(m.kappa * x);
      const double q = q_value(*src.base_, xb, tb);
      const Partials p = q_partials(*src.base_, xb, tb);
      return {e * (m.kappa * q + m.lambda * p.q_x), e * m.sigma * p.q_t};
    }
  }
  return {};
}

Coeffs q_series(const SourceModel& src, double t, std::size_t n_max) {
  if (!src.is_regular(t)) throw SingularSourceError(src.describe(), t);
  if (!src.is_series_representable(t)) {
    throw NotSeriesRepresentableError(src.describe() + " has no power series in x at t=" + std::to_string(t) +
                                      "; use the grid backend");
  }
  const double b = src.beta_;
  const double g = src.gamma_;
  const Coeffs& phi = src.phi_;
  Coeffs out(n_max + 1, 0.0);
  switch (src.family_) {
    case SourceFamily::zero:
      break;
    case SourceFamily::row2: {
      double term = b;  // beta t^{n-2} / (n-2)!
      for (std::size_t n = 2; n <= n_max; ++n) {
        out[n] = term;
        term *= t / static_cast<double>(n - 1);
      }
      break;
    }
    case SourceFamily::row3: {
      const auto k = static_cast<std::size_t>(g);
      if (k <= n_max) out[k] = b;
      break;
    }
    case SourceFamily::row4:
      out[0] = b / (t * t);
      break;
    case SourceFamily::row5:
      for (std::size_t n = 0; n < phi.size() && n <= n_max; ++n) {
        out[n] = phi[n] * std::pow(t, g * static_cast<double>(n) - 2.0);
      }
      break;
    case SourceFamily::row6:
    case SourceFamily::row7: {
      const double lt = src.family_ == SourceFamily::row6 ? -std::log(t) : std::log(t);
      out = series_product(exp_series(lt, n_max), phi, n_max);
      for (auto& v : out) v /= t * t;
      break;
    }
    case SourceFamily::row8: {
      const double e = std::exp(-t);
      double en = 1.0;
      for (std::size_t n = 0; n < phi.size() && n <= n_max; ++n) {
        out[n] = phi[n] * en;
        en *= e;
      }
      break;
    }
    case SourceFamily::row9:
      out = series_product(exp_series(t, n_max), phi, n_max);
      break;
    case SourceFamily::row10:
      out[0] = poly(phi, t);
      break;
    case SourceFamily::row11:
      out = resized(phi, n_max);
      break;
    case SourceFamily::custom: {
      double tk = 1.0;
      for (const auto& c : src.custom_) {
        for (std::size_t n = 0; n < c.size() && n <= n_max; ++n) out[n] += tk * c[n];
        tk *= t;
      }
      break;
    }
    case SourceFamily::mapped: {
      const auto& m = src.map_;
      Coeffs base = q_series(*src.base_, m.sigma * t + m.tau, n_max);
      double ln = 1.0;
      for (auto& v : base) {
        v *= ln;
        ln *= m.lambda;
      }
      out = m.kappa == 0.0 ? std::move(base) : series_product(exp_series(m.kappa, n_max), base, n_max);
      for (auto& v : out) v *= m.amplitude;
      break;
    }
  }
  return out;
}

}  // namespace boltzsym
