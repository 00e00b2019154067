#pragma once

#include "fullmod/scalar.hpp"

#include <optional>
#include <string>

namespace fullmod {

/// Column Hermite normal form of the Z-span of the columns of `generators`.
///
/// Pivot rows increase strictly from column to column, every pivot is
/// positive, entries above a pivot in its column are zero, and entries to
/// the left of a pivot (same row, earlier columns) lie in [0, pivot).
/// Zero columns are dropped, so the result has full column rank.
IntMatrix hermite_normal_form(const IntMatrix& generators);

/// Like hermite_normal_form, also returning the unimodular transform U
/// (generators * U = [H | 0]).
std::pair<IntMatrix, IntMatrix> hermite_normal_form_with_transform(const IntMatrix& generators);

/// A lattice (1/d) * span_Z(columns of basis) in Q^r, stored canonically:
/// basis in column HNF and gcd(d, entries) = 1, so structural equality is
/// lattice equality.
class ZLattice {
 public:
  /// The zero lattice in Q^ambient_dim.
  explicit ZLattice(Index ambient_dim = 0);

  static ZLattice from_integer_generators(const IntMatrix& generators, const Integer& denominator = 1);
  static ZLattice from_rational_generators(const RatMatrix& generators);

  Index ambient_dim() const { return ambient_dim_; }
  Index rank() const { return basis_.cols(); }
  bool is_full() const { return rank() == ambient_dim_; }
  const Integer& denominator() const { return denominator_; }
  const IntMatrix& basis() const { return basis_; }
  /// basis / denominator.
  RatMatrix rational_basis() const;
  /// Row index of the pivot of each basis column.
  const std::vector<Index>& pivot_rows() const { return pivots_; }

  /// |det| of the integer basis (full lattices only); d*L contains det*Z^r.
  Integer integer_det() const;

  /// Integer coefficients x with rational_basis() * x = v, if v lies in L.
  std::optional<IntVector> solve(const RatVector& v) const;
  bool contains(const RatVector& v) const { return solve(v).has_value(); }
  /// Every generator of `o` lies in this lattice.
  bool contains(const ZLattice& o) const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.denominator_ == b.denominator_ &&
           a.basis_.cols() == b.basis_.cols() && a.basis_ == b.basis_;
  }
  friend bool operator!=(const ZLattice& a, const ZLattice& b) { return !(a == b); }

 private:
  ZLattice(Index ambient_dim, IntMatrix hnf_basis, Integer denominator);
  void normalize();

  Index ambient_dim_;
  Integer denominator_;
  IntMatrix basis_;
  std::vector<Index> pivots_;
};

/// Integer null space {x in Z^m : a x = 0} of an integer matrix, canonical.
ZLattice integer_kernel(const IntMatrix& a);

/// Set intersection of two lattices in the same ambient space.
ZLattice intersect(const ZLattice& a, const ZLattice& b);

/// Lattice generated by both inputs.
ZLattice lattice_sum(const ZLattice& a, const ZLattice& b);

/// Image of a lattice under a rational linear map.
ZLattice apply_map(const RatMatrix& map, const ZLattice& l);

/// "den=d" line followed by the basis rows ("a,b,c;d,e,f").
std::string format_lattice(const ZLattice& l);
ZLattice parse_lattice(const std::string& text, Index ambient_dim);

std::string format_matrix(const IntMatrix& m);
IntMatrix parse_matrix(const std::string& text);

}  // namespace fullmod
