#include "boltzsym/lie.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "boltzsym/errors.hpp"

namespace boltzsym::lie {

// ---- Polynomial ----------------------------------------------------------

Polynomial Polynomial::constant(const Rational& c) { return monomial({0, 0, 0}, c); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const noexcept {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
  return d;
}

Polynomial Polynomial::derivative(Var v) const {
  const int k = static_cast<int>(v);
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial d = m;
    d[k] -= 1;
    out.add_term(d, c * m[k]);
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out;
  for (const auto& [m, v] : terms_) out.add_term(m, v * c);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"x", "t", "phi"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool unit_coeff = (c == 1 || c == -1) && (m[0] + m[1] + m[2] > 0);
    if (c < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    if (!unit_coeff) os << (c < 0 ? Rational(-c) : c).str();
    bool need_star = !unit_coeff;
    for (int k = 0; k < 3; ++k) {
      if (m[k] == 0) continue;
      if (need_star) os << '*';
      os << names[k];
      if (m[k] > 1) os << '^' << m[k];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

// ---- vector fields -------------------------------------------------------

Polynomial PolyVectorField::apply(const Polynomial& f) const {
  return xi * f.derivative(Var::x) + eta * f.derivative(Var::t) + zeta * f.derivative(Var::phi);
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
  return {xi + o.xi, eta + o.eta, zeta + o.zeta};
}

PolyVectorField PolyVectorField::operator*(const Rational& c) const { return {xi * c, eta * c, zeta * c}; }

std::string PolyVectorField::to_string() const {
  return "(" + xi.to_string() + ") d/dx + (" + eta.to_string() + ") d/dt + (" + zeta.to_string() + ") d/dphi";
}

const std::array<PolyVectorField, 4>& basis_fields() {
  static const std::array<PolyVectorField, 4> fields = [] {
    const auto x = Polynomial::var(Var::x);
    const auto t = Polynomial::var(Var::t);
    const auto phi = Polynomial::var(Var::phi);
    const Polynomial zero;
    return std::array<PolyVectorField, 4>{
        PolyVectorField{x, zero, zero},
        PolyVectorField{zero, zero, x * phi},
        PolyVectorField{zero, t * Rational(-1), phi},
        PolyVectorField{zero, Polynomial::constant(1), zero},
    };
  }();
  return fields;
}

PolyVectorField field_bracket(const PolyVectorField& a, const PolyVectorField& b) {
  return {a.apply(b.xi) - b.apply(a.xi), a.apply(b.eta) - b.apply(a.eta), a.apply(b.zeta) - b.apply(a.zeta)};
}

std::array<Rational, 4> decompose(const PolyVectorField& f) {
  using Key = std::pair<int, Monomial>;
  std::map<Key, std::size_t> index;
  auto collect = [&](const PolyVectorField& v) {
    const Polynomial* comps[3] = {&v.xi, &v.eta, &v.zeta};
    for (int c = 0; c < 3; ++c) {
      for (const auto& [m, coeff] : comps[c]->terms()) index.try_emplace(Key{c, m}, index.size());
    }
  };
  const auto& basis = basis_fields();
  for (const auto& b : basis) collect(b);
  collect(f);

  // Augmented system rows = (component, monomial), cols = 4 unknowns + rhs.
  std::vector<std::array<Rational, 5>> rows(index.size());
  auto fill = [&](const PolyVectorField& v, std::size_t col) {
    const Polynomial* comps[3] = {&v.xi, &v.eta, &v.zeta};
    for (int c = 0; c < 3; ++c) {
      for (const auto& [m, coeff] : comps[c]->terms()) rows[index.at(Key{c, m})][col] = coeff;
    }
  };
  for (std::size_t k = 0; k < 4; ++k) fill(basis[k], k);
  fill(f, 4);

  std::size_t pivot_row = 0;
  std::array<int, 4> pivot_of_col{-1, -1, -1, -1};
  for (std::size_t col = 0; col < 4 && pivot_row < rows.size(); ++col) {
    std::size_t p = pivot_row;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[pivot_row]);
    const Rational piv = rows[pivot_row][col];
    for (auto& v : rows[pivot_row]) v /= piv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      const Rational factor = rows[r][col];
      for (std::size_t k = 0; k < 5; ++k) rows[r][k] -= factor * rows[pivot_row][k];
    }
    pivot_of_col[col] = static_cast<int>(pivot_row);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows.size(); ++r) {
    if (rows[r][4] != 0) throw AlgebraClosureError("field " + f.to_string() + " is outside span{X0..X3}");
  }
  std::array<Rational, 4> out;
  for (std::size_t col = 0; col < 4; ++col) {
    if (pivot_of_col[col] < 0) throw AlgebraClosureError("basis fields are linearly dependent");
    out[col] = rows[static_cast<std::size_t>(pivot_of_col[col])][4];
  }
  return out;
}

const StructureConstants& structure_constants() {
  static const StructureConstants c = [] {
    StructureConstants out;
    const auto& b = basis_fields();
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) out[i][j] = decompose(field_bracket(b[i], b[j]));
    }
    return out;
  }();
  return c;
}

StructureConstants printed_structure_constants() {
  StructureConstants c;  // value-initialised to zero
  c[0][1][1] = 1;
  c[1][0][1] = -1;
  c[2][3][3] = -1;
  c[3][2][3] = 1;
  return c;
}

std::vector<ConstantDiscrepancy> structure_constant_discrepancies() {
  const auto& computed = structure_constants();
  const auto printed = printed_structure_constants();
  std::vector<ConstantDiscrepancy> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (computed[i][j] != printed[i][j]) out.push_back({i, j, computed[i][j], printed[i][j]});
    }
  }
  return out;
}

bool jacobi_holds(const StructureConstants& c) {
  // [[Xi,Xj],Xk] = sum_m c[i][j][m] c[m][k][l] X_l
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          Rational sum = 0;
          for (int m = 0; m < 4; ++m) {
            sum += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
          }
          if (sum != 0) return false;
        }
      }
    }
  }
  return true;
}

// ---- algebra elements ----------------------------------------------------

LieElement LieElement::operator+(const LieElement& o) const {
  LieElement r;
  for (std::size_t k = 0; k < 4; ++k) r.coords[k] = coords[k] + o.coords[k];
  return r;
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + o * -1.0; }

LieElement LieElement::operator*(double s) const {
  LieElement r;
  for (std::size_t k = 0; k < 4; ++k) r.coords[k] = coords[k] * s;
  return r;
}

namespace {

std::string format_combination(const std::array<double, 4>& c, const char* prefix = "") {
  std::string out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double v = c[k];
    if (v == 0.0) continue;
    if (v < 0.0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    const double a = std::abs(v);
    if (a != 1.0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", a);
      out += buf;
    }
    out += prefix;
    out += "X" + std::to_string(k);
  }
  return out;
}

}  // namespace

std::string LieElement::to_string() const {
  const auto s = format_combination(coords);
  return s.empty() ? "0" : s;
}

LieElement bracket(const LieElement& a, const LieElement& b, const StructureConstants& c) {
  LieElement r;
  for (std::size_t i = 0; i < 4; ++i) {
    if (a.coords[i] == 0.0) continue;
    for (std::size_t j = 0; j < 4; ++j) {
      if (b.coords[j] == 0.0) continue;
      for (std::size_t k = 0; k < 4; ++k) {
        if (c[i][j][k] != 0) r.coords[k] += a.coords[i] * b.coords[j] * to_double(c[i][j][k]);
      }
    }
  }
  return r;
}

LieElement bracket(const LieElement& a, const LieElement& b) { return bracket(a, b, structure_constants()); }

Matrix4 identity4() {
  Matrix4 m{};
  for (std::size_t k = 0; k < 4; ++k) m[k][k] = 1.0;
  return m;
}

Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
  Matrix4 r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

LieElement operator*(const Matrix4& m, const LieElement& e) {
  LieElement r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r.coords[i] += m[i][j] * e.coords[j];
  return r;
}

Matrix4 adjoint_exp(int index, double a) {
  if (index < 0 || index > 3) throw std::out_of_range("adjoint_exp: index must be 0..3");
  const auto& c = structure_constants();
  const auto i = static_cast<std::size_t>(index);
  // (ad X_i)[k][j] = c[i][j][k]
  Matrix4 ad{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) ad[k][j] = a * to_double(c[i][j][k]);
  Matrix4 result = identity4();
  Matrix4 term = identity4();
  for (int m = 1; m < 200; ++m) {
    term = term * ad;
    double norm = 0.0;
    for (auto& row : term)
      for (auto& v : row) {
        v /= m;
        norm = std::max(norm, std::abs(v));
      }
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t s = 0; s < 4; ++s) result[r][s] += term[r][s];
    if (norm == 0.0 || (norm < 1e-18 && m > std::abs(a))) break;
  }
  return result;
}

Matrix4 inner_automorphism(int index, double a) {
  if (index < 0 || index > 3) throw std::out_of_range("inner_automorphism: index must be 0..3");
  return adjoint_exp(index, kAutomorphismSign[static_cast<std::size_t>(index)] * a);
}

Matrix4 equivalence_action(int index, double a) {
  if (index < 0 || index > 3) throw std::out_of_range("equivalence_action: index must be 0..3");
  return inner_automorphism(index, kEquivalenceSign[static_cast<std::size_t>(index)] * a);
}

// ---- subalgebras ---------------------------------------------------------

namespace {

// Orthonormal basis of span(vectors) by modified Gram-Schmidt; throws if dependent.
std::vector<std::array<double, 4>> orthonormalise(const std::vector<LieElement>& vs) {
  std::vector<std::array<double, 4>> q;
  for (const auto& v : vs) {
    auto w = v.coords;
    double scale = 0.0;
    for (double x : w) scale = std::max(scale, std::abs(x));
    for (const auto& e : q) {
      double d = 0.0;
      for (std::size_t k = 0; k < 4; ++k) d += e[k] * w[k];
      for (std::size_t k = 0; k < 4; ++k) w[k] -= d * e[k];
    }
    double n = 0.0;
    for (double x : w) n += x * x;
    n = std::sqrt(n);
    if (n <= 1e-12 * std::max(1.0, scale)) throw std::invalid_argument("subalgebra basis is linearly dependent");
    for (auto& x : w) x /= n;
    q.push_back(w);
  }
  return q;
}

bool in_span(const std::vector<std::array<double, 4>>& q, const LieElement& v) {
  auto w = v.coords;
  double scale = 0.0;
  for (double x : w) scale = std::max(scale, std::abs(x));
  for (const auto& e : q) {
    double d = 0.0;
    for (std::size_t k = 0; k < 4; ++k) d += e[k] * w[k];
    for (std::size_t k = 0; k < 4; ++k) w[k] -= d * e[k];
  }
  double r = 0.0;
  for (double x : w) r = std::max(r, std::abs(x));
  return r <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

ClosureResult is_subalgebra(const Subalgebra& s, const StructureConstants& c) {
  const auto q = orthonormalise(s.basis);
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    for (std::size_t j = i + 1; j < s.basis.size(); ++j) {
      const auto b = bracket(s.basis[i], s.basis[j], c);
      if (!in_span(q, b)) return {false, b};
    }
  }
  return {true, std::nullopt};
}

ClosureResult is_subalgebra(const Subalgebra& s) { return is_subalgebra(s, structure_constants()); }

std::string SymbolicElement::to_string() const {
  std::string s = format_combination(slope.coords, "gamma*");
  const auto c = format_combination(constant.coords);
  if (!c.empty()) {
    if (!s.empty() && c.front() != '-') s += "+";
    s += c;
  }
  return s.empty() ? "0" : s;
}

bool OptimalSystemEntry::has_gamma() const {
  for (const auto& e : basis)
    for (double v : e.slope.coords)
      if (v != 0.0) return true;
  return false;
}

std::string OptimalSystemEntry::basis_string() const {
  std::string out;
  for (const auto& e : basis) {
    if (!out.empty()) out += ";";
    out += e.to_string();
  }
  return out;
}

Subalgebra OptimalSystemEntry::instantiate(double gamma) const {
  Subalgebra s;
  s.table1_index = index;
  if (has_gamma()) s.gamma = gamma;
  for (const auto& e : basis) s.basis.push_back(e.at(gamma));
  return s;
}

const std::vector<OptimalSystemEntry>& optimal_system_table() {
  static const std::vector<OptimalSystemEntry> table = [] {
    const auto X = [](int i) { return LieElement::basis(i); };
    const LieElement zero;
    const auto plain = [&](const LieElement& e) { return SymbolicElement{e, zero}; };
    const SymbolicElement g0_x2{X(2), X(0)};  // gamma X0 + X2
    std::vector<OptimalSystemEntry> t = {
        {1, {plain(X(0)), plain(X(1)), plain(X(2)), plain(X(3))}},
        {2, {g0_x2, plain(X(1)), plain(X(3))}},
        {3, {plain(X(0)), plain(X(1)), plain(X(3))}},
        {4, {plain(X(0)), plain(X(1)), plain(X(2))}},
        {5, {plain(X(0)), plain(X(2)), plain(X(3))}},
        {6, {plain(X(2)), plain(X(3))}},
        {7, {plain(X(2) + X(0)), plain(X(1) + X(3))}},
        {8, {g0_x2, plain(X(3))}},
        {9, {plain(X(1) + X(2)), plain(X(3))}},
        {10, {plain(X(1) - X(2)), plain(X(3))}},
        {11, {plain(X(0)), plain(X(2))}},
        {12, {g0_x2, plain(X(1))}},
        {13, {plain(X(0) + X(3)), plain(X(1))}},
        {14, {plain(X(1)), plain(X(3))}},
        {15, {plain(X(0)), plain(X(3))}},
        {16, {plain(X(0)), plain(X(1))}},
        {17, {g0_x2}},
        {18, {plain(X(1) + X(2))}},
        {19, {plain(X(1) - X(2))}},
        {20, {plain(X(0) + X(3))}},
        {21, {plain(X(1) + X(3))}},
        {22, {plain(X(0))}},
        {23, {plain(X(1))}},
        {24, {plain(X(3))}},
    };
    return t;
  }();
  return table;
}

std::vector<Subalgebra> optimal_system(double gamma) {
  std::vector<Subalgebra> out;
  for (const auto& e : optimal_system_table()) out.push_back(e.instantiate(gamma));
  return out;
}

}  // namespace boltzsym::lie
