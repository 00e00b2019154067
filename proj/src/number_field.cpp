#include "fullmod/number_field.hpp"

#include "fullmod/exact_linalg.hpp"
#include "fullmod/number_theory.hpp"

#include <sstream>

namespace fullmod {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

FieldPtr NumberField::create(const IntPoly& min_poly) {
  if (min_poly.degree() < 2) throw PreconditionError("number field polynomial must have degree >= 2");
  if (min_poly.leading() != 1) throw PreconditionError("number field polynomial must be monic");
  if (!is_irreducible(min_poly))
    throw PreconditionError("polynomial " + to_string(min_poly) + " is reducible over Q");
  return FieldPtr(new NumberField(min_poly));
}

NumberField::NumberField(IntPoly f)
    : min_poly_(std::move(f)), degree_(min_poly_.degree()), disc_(discriminant(min_poly_)) {}

RatVector NumberField::reduce(const RatPoly& p) const {
  std::vector<Rational> c = p.coeffs();
  for (int k = static_cast<int>(c.size()) - 1; k >= degree_; --k) {
    if (c[k] == 0) continue;
    const Rational lead = c[k];
    for (int j = 0; j <= degree_; ++j) c[k - degree_ + j] -= lead * Rational(min_poly_[j]);
  }
  RatVector v = RatVector::Zero(degree_);
  for (int i = 0; i < degree_ && i < static_cast<int>(c.size()); ++i) v(i) = c[i];
  return v;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field(), b.field())) throw FieldMismatch();
}

FieldElement::FieldElement(FieldPtr field, RatVector coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw PreconditionError("field element without a field");
  if (coords_.size() != field_->degree())
    throw DimensionMismatch("element has " + std::to_string(coords_.size()) +
                            " coordinates, field degree is " + std::to_string(field_->degree()));
}

FieldElement FieldElement::zero(const FieldPtr& field) {
  return FieldElement(field, RatVector::Zero(field->degree()));
}

FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, Rational(1)); }

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rational& q) {
  RatVector v = RatVector::Zero(field->degree());
  v(0) = q;
  return FieldElement(field, v);
}

FieldElement FieldElement::generator(const FieldPtr& field) {
  RatVector v = RatVector::Zero(field->degree());
  v(1) = 1;
  return FieldElement(field, v);
}

FieldElement FieldElement::from_integers(const FieldPtr& field, const IntVector& coords) {
  return FieldElement(field, to_rational(coords));
}

bool FieldElement::is_zero() const {
  for (Index i = 0; i < coords_.size(); ++i)
    if (coords_(i) != 0) return false;
  return true;
}

bool FieldElement::is_one() const { return *this == one(field_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(*this, o);
  return FieldElement(field_, coords_ + o.coords_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(*this, o);
  return FieldElement(field_, coords_ - o.coords_);
}

FieldElement FieldElement::operator-() const { return FieldElement(field_, -coords_); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(*this, o);
  return FieldElement(field_, field_->reduce(as_polynomial() * o.as_polynomial()));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  return FieldElement(field_, coords_ * q);
}

bool FieldElement::operator==(const FieldElement& o) const {
  return same_field(field_, o.field_) && coords_ == o.coords_;
}

RatPoly FieldElement::as_polynomial() const {
  return RatPoly(std::vector<Rational>(coords_.data(), coords_.data() + coords_.size()));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  auto [g, s, t] = xgcd(as_polynomial(), to_rational(field_->min_poly()));
  if (g.degree() != 0) throw Error("inverse: element not coprime to the modulus");
  return FieldElement(field_, field_->reduce(s));
}

FieldElement FieldElement::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(Integer(-e));
  FieldElement result = one(field_);
  FieldElement base = *this;
  const unsigned bits = e == 0 ? 0 : static_cast<unsigned>(mp::msb(e)) + 1;
  for (unsigned i = 0; i < bits; ++i) {
    if (mp::bit_test(e, i)) result = result * base;
    if (i + 1 < bits) base = base * base;
  }
  return result;
}

RatMatrix FieldElement::regular_rep() const {
  const int r = field_->degree();
  RatMatrix m(r, r);
  FieldElement cur = *this;
  const FieldElement theta = generator(field_);
  for (int j = 0; j < r; ++j) {
    m.col(j) = cur.coords_;
    if (j + 1 < r) cur = cur * theta;
  }
  return m;
}

Rational FieldElement::norm() const { return determinant(regular_rep()); }

Rational FieldElement::trace() const { return regular_rep().trace(); }

RatPoly FieldElement::min_poly() const {
  return squarefree_part(characteristic_polynomial(regular_rep()));
}

bool FieldElement::is_algebraic_integer() const {
  if (integer_coords()) return true;  // theta is integral
  return has_integer_coefficients(min_poly());
}

bool FieldElement::is_norm1_unit() const {
  return norm() == 1 && is_algebraic_integer();
}

bool FieldElement::is_root_of_unity() const {
  if (is_zero() || !is_algebraic_integer()) return false;
  const RatPoly mp = min_poly();
  const int d = mp.degree();
  // All conjugates of a root of unity lie on the unit circle, which bounds
  // the coefficients of its minimal polynomial by binomial coefficients.
  Integer binom = 1;
  for (int k = 0; k <= d; ++k) {
    if (abs_int(numerator_of(mp[d - k])) > binom) return false;
    binom = binom * (d - k) / (k + 1);
  }
  const int r = field_->degree();
  const unsigned long max_order = 2UL * static_cast<unsigned long>(r) * r + 2;
  for (unsigned long w = 1; w <= max_order; ++w) {
    if (euler_phi(w) > static_cast<unsigned long>(r)) continue;
    if (pow(Integer(w)).is_one()) return true;
  }
  return false;
}

std::optional<IntVector> FieldElement::integer_coords() const {
  IntVector v(coords_.size());
  for (Index i = 0; i < coords_.size(); ++i) {
    if (!is_integral(coords_(i))) return std::nullopt;
    v(i) = numerator_of(coords_(i));
  }
  return v;
}

std::optional<FieldElement> find_small_unit(const FieldPtr& field, int height_bound) {
  if (height_bound < 0) throw PreconditionError("find_small_unit: negative bound");
  const int r = field->degree();
  std::vector<long> c(static_cast<size_t>(r), -height_bound);
  while (true) {
    IntVector v(r);
    bool nonzero = false;
    for (int i = 0; i < r; ++i) {
      v(i) = c[static_cast<size_t>(i)];
      nonzero = nonzero || c[static_cast<size_t>(i)] != 0;
    }
    if (nonzero) {
      FieldElement a = FieldElement::from_integers(field, v);
      if (a.norm() == 1 && !a.is_root_of_unity()) return a;
    }
    int pos = r - 1;
    while (pos >= 0 && c[static_cast<size_t>(pos)] == height_bound) c[static_cast<size_t>(pos--)] = -height_bound;
    if (pos < 0) break;
    ++c[static_cast<size_t>(pos)];
  }
  return std::nullopt;
}

IntPoly parse_polynomial(const std::string& text) {
  std::vector<Integer> coeffs;
  for (const auto& part : split(text, ',')) coeffs.push_back(parse_integer(part));
  if (coeffs.empty()) throw ParseError("empty polynomial");
  return IntPoly(std::move(coeffs));
}

std::string format_polynomial(const IntPoly& p) {
  std::string out;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) out += ",";
    out += p[i].str();
  }
  return out;
}

FieldElement parse_element(const FieldPtr& field, const std::string& text) {
  auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != field->degree())
    throw ParseError("element '" + text + "' needs " + std::to_string(field->degree()) +
                     " coordinates");
  RatVector v(field->degree());
  for (int i = 0; i < field->degree(); ++i) v(i) = parse_rational(parts[static_cast<size_t>(i)]);
  return FieldElement(field, v);
}

std::string format_element(const FieldElement& a) {
  std::string out;
  for (Index i = 0; i < a.coords().size(); ++i) {
    if (i) out += ",";
    out += to_string(a.coords()(i));
  }
  return out;
}

}  // namespace fullmod
