#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <tuple>

namespace fullmod {

namespace mp = boost::multiprecision;

// Expression templates are disabled so that `auto` and Eigen's scalar
// traits always see concrete values.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different number fields") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotFullModule : public PreconditionError {
 public:
  NotFullModule() : PreconditionError("operation requires a full module") {}
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

inline Integer numerator_of(const Rational& q) { return mp::numerator(q); }
inline Integer denominator_of(const Rational& q) { return mp::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(const Integer& a, const Integer& b) {
  return mp::gcd(a, b);
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return abs_int(a / gcd_int(a, b) * b);
}

/// Quotient rounded toward negative infinity; `b` must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Representative of `a` modulo |m| in [0, |m|).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs_int(m);
  return r;
}

inline Integer floor_of(const Rational& q) {
  return floor_div(numerator_of(q), denominator_of(q));
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a,
                                                  const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline Integer pow_int(Integer base, unsigned long exponent) {
  Integer result = 1;
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

inline Rational pow_rat(const Rational& base, long exponent) {
  Rational result = 1;
  Rational b = exponent < 0 ? Rational(1) / base : base;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  while (e > 0) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// "n/d", or "n" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

/// Least common multiple of the denominators of `v`.
template <typename Derived>
Integer common_denominator(const Eigen::MatrixBase<Derived>& v) {
  Integer d = 1;
  for (Index i = 0; i < v.rows(); ++i)
    for (Index j = 0; j < v.cols(); ++j)
      d = lcm_int(d, denominator_of(v(i, j)));
  return d;
}

/// `d * m` as an integer matrix; every product must be integral.
template <typename Derived>
IntMatrix scale_to_integer(const Eigen::MatrixBase<Derived>& m,
                           const Integer& d) {
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      Rational x = m(i, j) * Rational(d);
      if (!is_integral(x)) throw Error("scale_to_integer: non-integral entry");
      out(i, j) = numerator_of(x);
    }
  return out;
}

template <typename Derived>
RatMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

}  // namespace fullmod
