#pragma once

#include "fullmod/lattice.hpp"
#include "fullmod/number_field.hpp"

#include <vector>

namespace fullmod {

/// A finitely generated Z-submodule of a number field, stored as a lattice
/// of power-basis coordinates.
class ZModule {
 public:
  ZModule(FieldPtr field, ZLattice lattice);

  const FieldPtr& field() const { return field_; }
  const ZLattice& lattice() const { return lattice_; }
  Index rank() const { return lattice_.rank(); }
  bool is_full() const { return lattice_.is_full(); }

  /// Z-basis as field elements (HNF columns over the denominator).
  std::vector<FieldElement> basis() const;
  bool contains(const FieldElement& a) const;
  bool contains(const ZModule& o) const;

  friend bool operator==(const ZModule& a, const ZModule& b) {
    return same_field(a.field_, b.field_) && a.lattice_ == b.lattice_;
  }
  friend bool operator!=(const ZModule& a, const ZModule& b) { return !(a == b); }

 private:
  FieldPtr field_;
  ZLattice lattice_;
};

/// A full module that is a ring with 1.
class Order {
 public:
  /// Verifies rank, 1 in the module and closure on basis products.
  explicit Order(ZModule module);

  const ZModule& module() const { return module_; }
  const FieldPtr& field() const { return module_.field(); }
  const ZLattice& lattice() const { return module_.lattice(); }
  const Integer& disc() const { return disc_; }
  std::vector<FieldElement> basis() const { return module_.basis(); }
  bool contains(const FieldElement& a) const { return module_.contains(a); }

  friend bool operator==(const Order& a, const Order& b) { return a.module_ == b.module_; }
  friend bool operator!=(const Order& a, const Order& b) { return !(a == b); }

 private:
  ZModule module_;
  Integer disc_;
};

ZModule module_from_generators(const FieldPtr& field, const std::vector<FieldElement>& generators);
ZModule module_from_generators(const std::vector<FieldElement>& generators);

/// Z[theta].
Order power_basis_order(const FieldPtr& field);

ZModule intersect_modules(const ZModule& a, const ZModule& b);
ZModule scale_module(const ZModule& m, const FieldElement& factor);

/// {alpha : alpha * M subset of M}, for a full module M.
Order multiplier_ring(const ZModule& m);

/// Smallest order containing the given elements (all must be integral) and 1.
/// The result need not be full; `Order` construction is left to the caller.
ZModule ring_closure(const FieldPtr& field, const std::vector<FieldElement>& generators);

/// Basis of the Q-algebra generated by `generators` (always includes 1).
std::vector<FieldElement> q_algebra_basis(const FieldPtr& field,
                                          const std::vector<FieldElement>& generators);

/// M^L = {beta in M : alpha * beta in Q M for every alpha in L}, where L
/// is the subfield generated by `subfield_generators`.
ZModule restrict_module(const ZModule& m, const std::vector<FieldElement>& subfield_generators);

/// Q-basis of {alpha in K : alpha * QM subset of QM}; always a subfield.
std::vector<FieldElement> span_stabilizer_field(const ZModule& m);

/// a lies in O and has norm 1. Integrality of the inverse is automatic.
bool is_norm1_unit_of_order(const FieldElement& a, const Order& o);

/// a = eta * b for a norm-1 unit eta of the coefficient ring.
bool associates(const FieldElement& a, const FieldElement& b, const Order& coeff_ring);
bool associates(const FieldElement& a, const FieldElement& b, const ZModule& m);

/// Discriminant det(Tr(w_i w_j)) of a Z-basis.
Rational basis_discriminant(const std::vector<FieldElement>& basis);

/// Module file: polynomial line, then one generator element per line.
std::string format_module(const ZModule& m);
ZModule parse_module(const std::string& text);

}  // namespace fullmod
