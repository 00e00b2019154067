#pragma once

#include "fullmod/polynomial.hpp"
#include "fullmod/scalar.hpp"

#include <memory>
#include <optional>
#include <string>

namespace fullmod {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// K = Q[x]/(f) for a monic irreducible integer polynomial f of degree >= 2.
/// Elements are coordinate vectors in the power basis 1, theta, ..., theta^(r-1).
class NumberField {
 public:
  /// Validates monicity, degree and irreducibility.
  static FieldPtr create(const IntPoly& min_poly);

  const IntPoly& min_poly() const { return min_poly_; }
  int degree() const { return degree_; }
  /// Discriminant of f, i.e. of the power-basis order Z[theta].
  const Integer& power_basis_disc() const { return disc_; }

  /// Reduces a coordinate polynomial modulo f in place (length 2r-1 at most).
  RatVector reduce(const RatPoly& p) const;

  bool operator==(const NumberField& o) const { return min_poly_ == o.min_poly_; }

 private:
  explicit NumberField(IntPoly f);
  IntPoly min_poly_;
  int degree_;
  Integer disc_;
};

class FieldElement {
 public:
  FieldElement(FieldPtr field, RatVector coords);

  static FieldElement zero(const FieldPtr& field);
  static FieldElement one(const FieldPtr& field);
  static FieldElement from_rational(const FieldPtr& field, const Rational& q);
  /// The class of x, i.e. theta.
  static FieldElement generator(const FieldPtr& field);
  static FieldElement from_integers(const FieldPtr& field, const IntVector& coords);

  const FieldPtr& field() const { return field_; }
  const RatVector& coords() const { return coords_; }
  int degree() const { return static_cast<int>(coords_.size()); }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator*(const Rational& q) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inverse() const;
  FieldElement pow(const Integer& e) const;
  FieldElement pow(long e) const { return pow(Integer(e)); }

  /// Column j holds the coordinates of a * theta^j.
  RatMatrix regular_rep() const;
  Rational norm() const;
  Rational trace() const;
  /// Monic minimal polynomial over Q.
  RatPoly min_poly() const;
  RatPoly as_polynomial() const;

  bool is_algebraic_integer() const;
  bool is_norm1_unit() const;
  bool is_root_of_unity() const;

  /// Coordinates when all of them are integers.
  std::optional<IntVector> integer_coords() const;

 private:
  FieldPtr field_;
  RatVector coords_;
};

inline FieldElement operator*(const Rational& q, const FieldElement& a) { return a * q; }

void require_same_field(const FieldElement& a, const FieldElement& b);
bool same_field(const FieldPtr& a, const FieldPtr& b);

/// First (lexicographic, coordinate 0 most significant) integer coordinate
/// vector with entries in [-bound, bound] that is a norm-1 unit and not a
/// root of unity.
std::optional<FieldElement> find_small_unit(const FieldPtr& field, int height_bound);

/// "-2,0,0,1" -> x^3 - 2.
IntPoly parse_polynomial(const std::string& text);
std::string format_polynomial(const IntPoly& p);
/// "n1/d1,n2/d2,..." with "/1" omissible.
FieldElement parse_element(const FieldPtr& field, const std::string& text);
std::string format_element(const FieldElement& a);

}  // namespace fullmod
