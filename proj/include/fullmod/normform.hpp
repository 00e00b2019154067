#pragma once

#include "fullmod/zmodule.hpp"

#include <map>
#include <string>
#include <vector>

namespace fullmod {

/// Exponent vector -> coefficient.
using MultiPoly = std::map<std::vector<int>, Integer>;

std::string format_multipoly(const MultiPoly& p, const std::vector<std::string>& vars);
Integer evaluate(const MultiPoly& p, const std::vector<Integer>& x);

/// F(X) = a * N(alpha_1 X_1 + ... + alpha_n X_n).
class NormForm {
 public:
  /// Requires a != 0, n >= 2, Q-independent alphas and an integral expansion.
  NormForm(Rational scale, std::vector<FieldElement> coeffs);

  const FieldPtr& field() const { return coeffs_.front().field(); }
  const Rational& scale() const { return scale_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  int num_vars() const { return static_cast<int>(coeffs_.size()); }
  const MultiPoly& expanded() const { return expanded_; }

  FieldElement linear_form(const std::vector<Integer>& x) const;
  /// Through the expanded polynomial.
  Rational evaluate(const std::vector<Integer>& x) const;
  /// Through field arithmetic: a * norm(L(x)).
  Rational evaluate_by_norm(const std::vector<Integer>& x) const;
  /// Z-module spanned by the alphas.
  ZModule module() const { return module_from_generators(field(), coeffs_); }

 private:
  Rational scale_;
  std::vector<FieldElement> coeffs_;
  MultiPoly expanded_;
};

/// a * det(sum_j X_j R(alpha_j)); throws PreconditionError if not integral.
MultiPoly expand(const Rational& scale, const std::vector<FieldElement>& coeffs);

using Solution = std::vector<Integer>;

/// All nonzero x with |x_i| <= bound and F(x) = m, lexicographically sorted.
/// Each fiber in the last variable is solved exactly on intervals where the
/// univariate polynomial is monotone. `threads` shards the first coordinate.
std::vector<Solution> solve_box(const NormForm& f, const Rational& m, long bound, unsigned threads = 1);

using Family = std::vector<Solution>;

/// Classes of x ~ y iff L(x), L(y) are associates in the coefficient ring of
/// `module` (which must be full). Each class is sorted with its lexicographic
/// minimum first; classes are ordered by representative.
std::vector<Family> group_families(const std::vector<Solution>& solutions, const NormForm& f,
                                   const ZModule& module);

/// aX^2 + bXY + cY^2 = m has at most one family in the box, and the reduced
/// (A, B) enumeration with A = 1, -A <= B < A, B^2 = D mod 4A gives one pair.
bool quad_one_family_predicate(const Integer& a, const Integer& b, const Integer& c, int m, long box);

/// The form aX^2 + bXY + cY^2 as a NormForm over Q[T]/(T^2 + bT + ac).
NormForm quadratic_norm_form(const Integer& a, const Integer& b, const Integer& c);

/// [Q(a2/a1, a3/a1) : Q].
int ratio_field_degree(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3);

struct PartitionFamily {
  Integer p;
  int n = 0;
  std::vector<IntMatrix> a;  ///< A_0 .. A_p, 2x2
  std::vector<IntMatrix> b;  ///< B_j = diag(A_j, I_{n-2})
};

PartitionFamily partition_matrices(const Integer& p, int n);
/// Every point of [-box, box]^n lies in some B_j Z^n.
bool verify_partition(const PartitionFamily& fam, long box);

/// "a | alpha_1 | alpha_2 | ...".
NormForm parse_form(const FieldPtr& field, const std::string& text);
std::string format_form(const NormForm& f);

}  // namespace fullmod
