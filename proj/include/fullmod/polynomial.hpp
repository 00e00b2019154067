#pragma once

#include "fullmod/scalar.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace fullmod {

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients and degree -1.
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  Polynomial(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static Polynomial constant(const Scalar& c) {
    return Polynomial(std::vector<Scalar>{c});
  }
  static Polynomial monomial(const Scalar& c, int degree) {
    std::vector<Scalar> v(static_cast<size_t>(degree) + 1, Scalar(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i]
                                                            : Scalar(0);
  }
  Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

  template <typename Point>
  Point operator()(const Point& x) const {
    Point acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + Point(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Scalar> d;
    for (size_t i = 1; i < coeffs_.size(); ++i)
      d.push_back(coeffs_[i] * Scalar(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& p) {
    std::vector<Scalar> c = p.coeffs_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division. Over the integers the divisor must be monic.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw Error("polynomial division by zero");
    const Scalar lead = divisor.leading();
    std::vector<Scalar> rem = coeffs_;
    int dd = divisor.degree();
    std::vector<Scalar> quot(
        rem.size() >= divisor.coeffs_.size() ? rem.size() - divisor.coeffs_.size() + 1 : 0,
        Scalar(0));
    for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
      if (rem[k] == 0) continue;
      Scalar q = rem[k] / lead;
      if (q * lead != rem[k]) throw Error("inexact polynomial division");
      quot[k - dd] = q;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) {
    return a.divmod(b).second;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

inline RatPoly make_monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  return (Rational(1) / p.leading()) * p;
}

/// Monic gcd over Q.
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

/// Returns (g, s, t) with s*a + t*b = g monic (over Q).
std::tuple<RatPoly, RatPoly, RatPoly> xgcd(const RatPoly& a, const RatPoly& b);

/// Squarefree part over Q, monic.
RatPoly squarefree_part(const RatPoly& p);

/// Converts a polynomial with integral rational coefficients; throws otherwise.
IntPoly to_integer(const RatPoly& p);

/// True iff every coefficient is an integer.
bool has_integer_coefficients(const RatPoly& p);

/// Irreducibility over Q of a monic integer polynomial of degree >= 1, by
/// trial factorization: every monic factor of degree d <= deg/2 is
/// determined by its values at d points, so candidates are interpolated
/// from divisor choices, filtered by the Mignotte coefficient bound and
/// trial-divided.
bool is_irreducible(const IntPoly& f);

/// Resultant via the Sylvester determinant.
Integer resultant(const IntPoly& f, const IntPoly& g);

/// (-1)^(r(r-1)/2) * Res(f, f') / lc(f).
Integer discriminant(const IntPoly& f);

/// Sign variations based real-root count of `p` in (a, +inf), Sturm chain.
int count_real_roots_above(const RatPoly& p, const Rational& a);

std::string to_string(const IntPoly& p, const std::string& var = "x");

}  // namespace fullmod
