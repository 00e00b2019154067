#include "fullmod/zmodule.hpp"

#include "fullmod/exact_linalg.hpp"

#include <sstream>

namespace fullmod {

namespace {

RatMatrix coordinate_matrix(const std::vector<FieldElement>& elements, Index r) {
  RatMatrix m(r, static_cast<Index>(elements.size()));
  for (size_t j = 0; j < elements.size(); ++j) m.col(static_cast<Index>(j)) = elements[j].coords();
  return m;
}

}  // namespace

ZModule::ZModule(FieldPtr field, ZLattice lattice) : field_(std::move(field)), lattice_(std::move(lattice)) {
  if (lattice_.ambient_dim() != field_->degree())
    throw DimensionMismatch("module lattice dimension differs from the field degree");
}

std::vector<FieldElement> ZModule::basis() const {
  RatMatrix b = lattice_.rational_basis();
  std::vector<FieldElement> out;
  for (Index j = 0; j < b.cols(); ++j) out.emplace_back(field_, RatVector(b.col(j)));
  return out;
}

bool ZModule::contains(const FieldElement& a) const {
  if (!same_field(field_, a.field())) throw FieldMismatch();
  return lattice_.contains(a.coords());
}

bool ZModule::contains(const ZModule& o) const {
  if (!same_field(field_, o.field_)) throw FieldMismatch();
  return lattice_.contains(o.lattice_);
}

Rational basis_discriminant(const std::vector<FieldElement>& basis) {
  const Index n = static_cast<Index>(basis.size());
  RatMatrix t(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) t(i, j) = t(j, i) = (basis[i] * basis[j]).trace();
  return determinant(t);
}

Order::Order(ZModule module) : module_(std::move(module)) {
  if (!module_.is_full()) throw NotFullModule();
  if (!module_.contains(FieldElement::one(module_.field())))
    throw PreconditionError("order must contain 1");
  auto b = module_.basis();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i; j < b.size(); ++j)
      if (!module_.contains(b[i] * b[j])) throw PreconditionError("module is not closed under multiplication");
  Rational d = basis_discriminant(b);
  if (!is_integral(d)) throw PreconditionError("order discriminant is not an integer");
  disc_ = numerator_of(d);
}

ZModule module_from_generators(const FieldPtr& field, const std::vector<FieldElement>& generators) {
  if (generators.empty()) throw PreconditionError("module needs at least one generator");
  for (const auto& g : generators)
    if (!same_field(field, g.field())) throw FieldMismatch();
  return ZModule(field, ZLattice::from_rational_generators(coordinate_matrix(generators, field->degree())));
}

ZModule module_from_generators(const std::vector<FieldElement>& generators) {
  if (generators.empty()) throw PreconditionError("module needs at least one generator");
  return module_from_generators(generators.front().field(), generators);
}

Order power_basis_order(const FieldPtr& field) {
  return Order(ZModule(field, ZLattice::from_integer_generators(IntMatrix::Identity(field->degree(), field->degree()))));
}

ZModule intersect_modules(const ZModule& a, const ZModule& b) {
  if (!same_field(a.field(), b.field())) throw FieldMismatch();
  return ZModule(a.field(), intersect(a.lattice(), b.lattice()));
}

ZModule scale_module(const ZModule& m, const FieldElement& factor) {
  if (!same_field(m.field(), factor.field())) throw FieldMismatch();
  return ZModule(m.field(), apply_map(factor.regular_rep(), m.lattice()));
}

Order multiplier_ring(const ZModule& m) {
  if (!m.is_full()) throw NotFullModule();
  // alpha * b in M for a basis element b  <=>  alpha in b^{-1} M.
  std::optional<ZLattice> acc;
  for (const auto& b : m.basis()) {
    ZLattice cond = apply_map(b.inverse().regular_rep(), m.lattice());
    acc = acc ? intersect(*acc, cond) : cond;
  }
  return Order(ZModule(m.field(), *acc));
}

ZModule ring_closure(const FieldPtr& field, const std::vector<FieldElement>& generators) {
  std::vector<FieldElement> gens{FieldElement::one(field)};
  for (const auto& g : generators) {
    if (!g.is_algebraic_integer()) throw PreconditionError("ring_closure: generator is not integral");
    gens.push_back(g);
  }
  ZModule cur = module_from_generators(field, gens);
  while (true) {
    auto b = cur.basis();
    std::vector<FieldElement> next = b;
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i; j < b.size(); ++j) next.push_back(b[i] * b[j]);
    ZModule grown = module_from_generators(field, next);
    if (grown == cur) return cur;
    cur = std::move(grown);
  }
}

std::vector<FieldElement> q_algebra_basis(const FieldPtr& field, const std::vector<FieldElement>& generators) {
  const Index r = field->degree();
  std::vector<FieldElement> basis{FieldElement::one(field)};
  auto in_span = [&](const FieldElement& x) {
    std::vector<FieldElement> trial = basis;
    trial.push_back(x);
    return rank(coordinate_matrix(trial, r)) == static_cast<Index>(basis.size());
  };
  for (const auto& g : generators)
    if (!in_span(g)) basis.push_back(g);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      FieldElement p = basis[i] * basis[j];
      if (!in_span(p)) basis.push_back(p);
    }
  }
  return basis;
}

ZModule restrict_module(const ZModule& m, const std::vector<FieldElement>& subfield_generators) {
  const Index r = m.field()->degree();
  const Index k = m.rank();
  if (k == 0) return m;
  auto l_basis = q_algebra_basis(m.field(), subfield_generators);
  const RatMatrix h = m.lattice().rational_basis();
  const RatMatrix ann = left_annihilator(h);  // v in QM  <=>  ann * v = 0
  if (ann.rows() == 0) return m;
  RatMatrix conditions(ann.rows() * static_cast<Index>(l_basis.size()), k);
  for (size_t i = 0; i < l_basis.size(); ++i)
    conditions.middleRows(ann.rows() * static_cast<Index>(i), ann.rows()) = ann * l_basis[i].regular_rep() * h;
  const Integer d = common_denominator(conditions);
  ZLattice kernel = integer_kernel(scale_to_integer(conditions, d));
  if (kernel.rank() == 0) return ZModule(m.field(), ZLattice(r));
  return ZModule(m.field(), ZLattice::from_rational_generators(h * kernel.rational_basis()));
}

std::vector<FieldElement> span_stabilizer_field(const ZModule& m) {
  const FieldPtr& field = m.field();
  const Index r = field->degree();
  std::vector<FieldElement> out;
  if (m.rank() == 0 || m.is_full()) {
    for (Index i = 0; i < r; ++i) {
      RatVector e = RatVector::Zero(r);
      e(i) = 1;
      out.emplace_back(field, e);
    }
    return out;
  }
  const RatMatrix ann = left_annihilator(m.lattice().rational_basis());
  auto b = m.basis();
  // alpha * b_j = R(b_j) alpha must stay in QM.
  RatMatrix conditions(ann.rows() * static_cast<Index>(b.size()), r);
  for (size_t j = 0; j < b.size(); ++j)
    conditions.middleRows(ann.rows() * static_cast<Index>(j), ann.rows()) = ann * b[j].regular_rep();
  RatMatrix kernel = rational_kernel(conditions);
  const Integer d = common_denominator(kernel);
  ZLattice canonical = ZLattice::from_integer_generators(scale_to_integer(kernel, d));
  for (Index j = 0; j < canonical.rank(); ++j)
    out.emplace_back(field, to_rational(IntVector(canonical.basis().col(j))));
  return out;
}

bool is_norm1_unit_of_order(const FieldElement& a, const Order& o) {
  return o.contains(a) && a.norm() == 1;
}

bool associates(const FieldElement& a, const FieldElement& b, const Order& coeff_ring) {
  if (a.is_zero() || b.is_zero()) throw PreconditionError("associates: zero element");
  return is_norm1_unit_of_order(a / b, coeff_ring);
}

bool associates(const FieldElement& a, const FieldElement& b, const ZModule& m) {
  return associates(a, b, multiplier_ring(m));
}

std::string format_module(const ZModule& m) {
  std::string out = format_polynomial(m.field()->min_poly()) + "\n";
  for (const auto& b : m.basis()) out += format_element(b) + "\n";
  return out;
}

ZModule parse_module(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) lines.push_back(line);
  }
  if (lines.size() < 2) throw ParseError("module file needs a polynomial line and at least one generator");
  FieldPtr field = NumberField::create(parse_polynomial(lines[0]));
  std::vector<FieldElement> gens;
  for (size_t i = 1; i < lines.size(); ++i) gens.push_back(parse_element(field, lines[i]));
  return module_from_generators(field, gens);
}

}  // namespace fullmod
