#pragma once

// The four-dimensional algebra L4 spanned by
//   X0 = x d/dx,  X1 = x phi d/dphi,  X2 = phi d/dphi - t d/dt,  X3 = d/dt
// realised as exact polynomial vector fields.  Structure constants are
// computed from the fields, never transcribed.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boltzsym/series.hpp"

namespace boltzsym::lie {

/// Exponents of (x, t, phi).
using Monomial = std::array<int, 3>;

enum class Var { x = 0, t = 1, phi = 2 };

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  static Polynomial var(Var v) {
    Monomial m{0, 0, 0};
    m[static_cast<int>(v)] = 1;
    return monomial(m);
  }

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;

  Polynomial derivative(Var v) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// xi d/dx + eta d/dt + zeta d/dphi
struct PolyVectorField {
  Polynomial xi, eta, zeta;

  /// X(f) = xi f_x + eta f_t + zeta f_phi
  Polynomial apply(const Polynomial& f) const;
  PolyVectorField operator+(const PolyVectorField& o) const;
  PolyVectorField operator*(const Rational& c) const;
  bool operator==(const PolyVectorField& o) const = default;
  bool is_zero() const { return xi.is_zero() && eta.is_zero() && zeta.is_zero(); }
  std::string to_string() const;
};

/// X0..X3.
const std::array<PolyVectorField, 4>& basis_fields();

/// [A, B] = A(B coeffs) - B(A coeffs).
PolyVectorField field_bracket(const PolyVectorField& a, const PolyVectorField& b);

/// Exact coordinates of a field in the basis; throws AlgebraClosureError outside the span.
std::array<Rational, 4> decompose(const PolyVectorField& f);

using StructureConstants = std::array<std::array<std::array<Rational, 4>, 4>, 4>;

/// c[i][j][k]: [Xi, Xj] = sum_k c[i][j][k] Xk, from field_bracket.
const StructureConstants& structure_constants();
/// The commutator table as printed in the source literature ([X2,X3] = -X3).
StructureConstants printed_structure_constants();

struct ConstantDiscrepancy {
  int i, j;
  std::array<Rational, 4> computed, printed;
};
std::vector<ConstantDiscrepancy> structure_constant_discrepancies();

/// The cyclic sum [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] vanishes exactly for all triples.
bool jacobi_holds(const StructureConstants& c);

struct LieElement {
  std::array<double, 4> coords{};

  static LieElement basis(int i) {
    LieElement e;
    e.coords.at(static_cast<std::size_t>(i)) = 1.0;
    return e;
  }
  LieElement operator+(const LieElement& o) const;
  LieElement operator-(const LieElement& o) const;
  LieElement operator*(double s) const;
  bool operator==(const LieElement&) const = default;
  std::string to_string() const;
};

LieElement bracket(const LieElement& a, const LieElement& b);
LieElement bracket(const LieElement& a, const LieElement& b, const StructureConstants& c);

using Matrix4 = std::array<std::array<double, 4>, 4>;

Matrix4 identity4();
Matrix4 operator*(const Matrix4& a, const Matrix4& b);
LieElement operator*(const Matrix4& m, const LieElement& e);

/// exp(a ad_{X_index}) acting on coordinates, summed from the structure constants.
Matrix4 adjoint_exp(int index, double a);

/// Sign linking the literature's automorphism list A_i to adjoint_exp: A_i(a) = adjoint_exp(i, sigma_i a).
inline constexpr std::array<int, 4> kAutomorphismSign{+1, -1, +1, -1};
/// Sign linking the equivalence actions to the automorphisms: E_i(a) = A_i(sigma_i a).
inline constexpr std::array<int, 4> kEquivalenceSign{-1, +1, -1, +1};

/// A0: x1 -> x1 e^a; A1: x1 -> x1 + a x0; A2: x3 -> x3 e^a; A3: x3 -> x3 + a x2.
Matrix4 inner_automorphism(int index, double a);
/// X0e: x1 -> x1 e^{-a}; X1e: x1 -> x1 + a x0; X2e: x3 -> x3 e^{-a}; X3e: x3 -> x3 + a x2.
Matrix4 equivalence_action(int index, double a);

struct Subalgebra {
  std::vector<LieElement> basis;
  std::optional<int> table1_index;
  std::optional<double> gamma;
};

struct ClosureResult {
  bool closed = true;
  std::optional<LieElement> witness;  // first bracket outside the span
};

ClosureResult is_subalgebra(const Subalgebra& s);
ClosureResult is_subalgebra(const Subalgebra& s, const StructureConstants& c);

/// Basis element written as constant + gamma * slope.
struct SymbolicElement {
  LieElement constant;
  LieElement slope;
  LieElement at(double gamma) const { return constant + slope * gamma; }
  std::string to_string() const;
};

struct OptimalSystemEntry {
  int index;
  std::vector<SymbolicElement> basis;
  bool has_gamma() const;
  std::string basis_string() const;
  Subalgebra instantiate(double gamma) const;
};

/// The 24 representatives of the optimal system of subalgebras.
const std::vector<OptimalSystemEntry>& optimal_system_table();
/// Instantiated at one gamma.
std::vector<Subalgebra> optimal_system(double gamma);

inline constexpr std::array<double, 5> kGammaSamples{-1.0, 0.0, 0.5, 1.0, 2.0};

}  // namespace boltzsym::lie
