#include "fullmod/construction.hpp"

#include "fullmod/exact_linalg.hpp"

#include <algorithm>

namespace fullmod {

IntPoly g_poly(int r) {
  if (r < 1) throw PreconditionError("g_poly: r must be positive");
  IntPoly g = IntPoly::constant(Integer(1));
  for (int i = 1; i <= r; ++i) g = g * (IntPoly::monomial(Integer(1), i) - IntPoly::constant(Integer(1)));
  return g;
}

SeqParams seq_params(int r) {
  if (r < 2) throw PreconditionError("seq_params: r must be at least 2");
  SeqParams p;
  p.r = r;
  p.s = next_prime(Integer(r + 1));
  p.n = g_poly(r)(p.s);
  p.m = p.n * factorial(static_cast<unsigned>(r + 1));
  if (p.n == 0 || gcd_int(p.m, p.s) != 1) throw Error("seq_params: invariant violated");
  return p;
}

std::string to_string(Mode mode) { return mode == Mode::Direct ? "direct" : "faithful"; }

Mode parse_mode(const std::string& text) {
  if (text == "direct") return Mode::Direct;
  if (text == "faithful") return Mode::Faithful;
  throw ParseError("mode must be 'direct' or 'faithful', got '" + text + "'");
}

PrimeSequence start_sequence(int r) {
  PrimeSequence seq;
  seq.params = seq_params(r);
  seq.mode = Mode::Faithful;
  return seq;
}

Integer real_root_threshold(const SeqParams& params) {
  IntPoly h = g_poly(params.r) - IntPoly::constant(params.n);
  RatPoly hq = to_rational(h);
  Integer cauchy = 0;
  for (int i = 0; i < h.degree(); ++i) cauchy = std::max(cauchy, abs_int(h[i]));
  cauchy += 1;
  auto clear_above = [&](const Integer& x) {
    return h(x) != 0 && count_real_roots_above(hq, Rational(x)) == 0;
  };
  Integer lo = -cauchy - 1, hi = cauchy + 1;
  if (clear_above(lo)) return lo;
  while (hi - lo > 1) {
    Integer mid = floor_div(lo + hi, Integer(2));
    if (clear_above(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Integer next_faithful_prime(PrimeSequence& seq, const Integer& avoid_disc, unsigned long max_candidates) {
  const SeqParams& sp = seq.params;
  Integer lower = seq.found.empty() ? real_root_threshold(sp) : Integer(seq.found.back() + 1);
  Integer k = lower > sp.s ? Integer((lower - sp.s + sp.m - 1) / sp.m) : Integer(0);
  const IntPoly g = g_poly(sp.r);
  for (unsigned long step = 0; step < max_candidates; ++step, ++k) {
    Integer p = sp.s + k * sp.m;
    if (p < lower || !is_prime(p)) continue;
    if (avoid_disc != 0 && avoid_disc % p == 0) continue;
    Integer gv = g(p);
    if (gv % sp.n != 0) throw Error("next_faithful_prime: g_r(p) not divisible by n_r");
    Integer v = gv / sp.n;
    if (v <= 1) continue;
    bool coprime = std::all_of(seq.product_values.begin(), seq.product_values.end(),
                               [&](const Integer& w) { return gcd_int(v, w) == 1; });
    if (!coprime) continue;
    seq.found.push_back(p);
    seq.product_values.push_back(v);
    return p;
  }
  throw SearchExhausted("next_faithful_prime: no admissible prime within " + std::to_string(max_candidates) +
                        " candidates");
}

Factorization factor_g_quotient(const SeqParams& params, const Integer& p) {
  // X^i - 1 = prod_{d | i} Phi_d(X); build Phi_d for d <= r.
  std::vector<IntPoly> phi(static_cast<size_t>(params.r) + 1);
  for (int d = 1; d <= params.r; ++d) {
    IntPoly num = IntPoly::monomial(Integer(1), d) - IntPoly::constant(Integer(1));
    for (int e = 1; e < d; ++e)
      if (d % e == 0) num = num.divmod(phi[static_cast<size_t>(e)]).first;
    phi[static_cast<size_t>(d)] = num;
  }
  Factorization total;
  for (int i = 1; i <= params.r; ++i)
    for (int d = 1; d <= i; ++d)
      if (i % d == 0) total = merge_factorizations(total, factor_integer(phi[static_cast<size_t>(d)](p)));
  Factorization result;
  Factorization nf = factor_integer(params.n);
  for (const auto& [q, e] : total) {
    unsigned sub = 0;
    for (const auto& [q2, e2] : nf)
      if (q2 == q) sub = e2;
    if (sub > e) throw Error("factor_g_quotient: n_r does not divide g_r(p)");
    if (e > sub) result.emplace_back(q, e - sub);
  }
  for (const auto& [q2, e2] : nf) {
    bool present = std::any_of(total.begin(), total.end(), [&](const auto& t) { return t.first == q2; });
    if (!present) throw Error("factor_g_quotient: n_r does not divide g_r(p)");
  }
  return result;
}

// ---------------------------------------------------------------------------

MnGenerators make_mn_generators(const FieldElement& alpha1, const FieldElement& alpha2) {
  require_same_field(alpha1, alpha2);
  const FieldPtr& field = alpha1.field();
  const int r = field->degree();
  if (!alpha1.is_algebraic_integer()) throw PreconditionError("M_n: alpha1 must be an algebraic integer");
  MnGenerators g{alpha1, alpha2, alpha1.min_poly().degree(), 0, {}};
  if (r % g.r1 != 0) throw PreconditionError("M_n: degree of alpha1 does not divide the field degree");
  g.r2 = r / g.r1;
  FieldElement a1_power = FieldElement::one(field);
  std::vector<FieldElement> a2_powers{FieldElement::one(field)};
  for (int j = 1; j <= g.r2; ++j) a2_powers.push_back(a2_powers.back() * alpha2);
  for (int i = 0; i < g.r1; ++i) {
    for (int j = 0; j < g.r2; ++j) g.monomials.push_back(a1_power * a2_powers[static_cast<size_t>(j)]);
    a1_power = a1_power * alpha1;
  }
  RatMatrix m(r, r);
  for (int k = 0; k < r; ++k) m.col(k) = g.monomials[static_cast<size_t>(k)].coords();
  if (rank(m) != r)
    throw PreconditionError("M_n: alpha2 does not have degree " + std::to_string(g.r2) +
                            " over Q(alpha1); supply a primitive second generator");
  RatMatrix top = solve_square(m, RatMatrix(a2_powers.back().coords()));
  for (int k = 0; k < r; ++k)
    if (!is_integral(top(k, 0)))
      throw PreconditionError("M_n: minimal polynomial of alpha2 over Z[alpha1] is not monic");
  return g;
}

ZModule build_mn(const MnGenerators& g, const Integer& n) {
  if (n < 1) throw PreconditionError("M_n: n must be positive");
  std::vector<FieldElement> gens = g.monomials;
  gens.back() = gens.back() * Rational(n);
  return module_from_generators(g.alpha1.field(), gens);
}

ZModule build_mn(const FieldElement& alpha1, const FieldElement& alpha2, const Integer& n) {
  return build_mn(make_mn_generators(alpha1, alpha2), n);
}

Order coeffring_closed_form(const MnGenerators& g, const Integer& n) {
  if (n < 1) throw PreconditionError("O_n: n must be positive");
  std::vector<FieldElement> gens{FieldElement::one(g.alpha1.field())};
  for (size_t k = 1; k < g.monomials.size(); ++k) gens.push_back(g.monomials[k] * Rational(n));
  return Order(module_from_generators(g.alpha1.field(), gens));
}

Order coeffring_closed_form(const FieldElement& alpha1, const FieldElement& alpha2, const Integer& n) {
  return coeffring_closed_form(make_mn_generators(alpha1, alpha2), n);
}

// ---------------------------------------------------------------------------

UnitPowerOracle::UnitPowerOracle(const FieldElement& eps, const Order& ambient)
    : field_(eps.field()), ring_(ambient.module()) {
  if (!same_field(eps.field(), ambient.field())) throw FieldMismatch();
  if (!eps.is_algebraic_integer() || eps.norm() * eps.norm() != 1)
    throw PreconditionError("UnitPowerOracle: eps must be a unit");
  std::vector<FieldElement> gens = ambient.basis();
  gens.push_back(eps);
  ring_ = ring_closure(field_, gens);
  const RatMatrix b = ring_.lattice().rational_basis();
  const Index r = b.rows();
  to_ring_ = solve_square(b, RatMatrix::Identity(r, r));
  auto integral = [](const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        if (!is_integral(m(i, j))) throw Error("UnitPowerOracle: non-integral ring coordinates");
        out(i, j) = numerator_of(m(i, j));
      }
    return out;
  };
  mult_ = integral(to_ring_ * eps.regular_rep() * b);
  mult_inv_ = integral(to_ring_ * eps.inverse().regular_rep() * b);
  one_ = integral(to_ring_ * RatMatrix(FieldElement::one(field_).coords())).col(0);
}

UnitPowerOracle::Reduced UnitPowerOracle::reduce_target(const ZLattice& target) const {
  if (!target.is_full()) throw NotFullModule();
  RatMatrix t = to_ring_ * target.rational_basis();
  Reduced red;
  red.c = common_denominator(t);
  red.target = hermite_normal_form(scale_to_integer(t, red.c));
  red.modulus = 1;
  for (Index j = 0; j < red.target.cols(); ++j) red.modulus *= red.target(j, j);
  return red;
}

IntVector UnitPowerOracle::power_vector(const Integer& exponent, const Integer& modulus) const {
  IntMatrix base = exponent < 0 ? mult_inv_ : mult_;
  Integer e = abs_int(exponent);
  IntVector v = one_;
  auto reduce = [&](auto& x) {
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) x(i, j) = mod_floor(x(i, j), modulus);
  };
  reduce(v);
  reduce(base);
  while (e > 0) {
    if (mp::bit_test(e, 0)) {
      v = base * v;
      reduce(v);
    }
    e >>= 1;
    if (e > 0) {
      base = base * base;
      reduce(base);
    }
  }
  return v;
}

bool UnitPowerOracle::member(const IntVector& v, const Reduced& red, const ZLattice&) {
  IntVector w = v * red.c;
  for (Index i = 0; i < w.size(); ++i) w(i) = mod_floor(w(i), red.modulus);
  // HNF of a full lattice is lower triangular with pivots on the diagonal.
  for (Index j = 0; j < red.target.cols(); ++j) {
    if (w(j) % red.target(j, j) != 0) return false;
    Integer q = w(j) / red.target(j, j);
    if (q != 0) w -= q * red.target.col(j);
  }
  return true;
}

bool UnitPowerOracle::power_in(const Integer& exponent, const ZLattice& target) const {
  Reduced red = reduce_target(target);
  return member(power_vector(exponent, red.modulus), red, target);
}

std::optional<Integer> UnitPowerOracle::least_power_in(const ZLattice& target, unsigned long search_bound) const {
  Reduced red = reduce_target(target);
  IntVector v = one_;
  for (unsigned long t = 1; t <= search_bound; ++t) {
    v = mult_ * v;
    for (Index i = 0; i < v.size(); ++i) v(i) = mod_floor(v(i), red.modulus);
    if (member(v, red, target)) return Integer(t);
  }
  return std::nullopt;
}

Integer UnitPowerOracle::least_power_dividing(const ZLattice& target, const Factorization& hint) const {
  Integer t = 1;
  for (const auto& [q, e] : hint) t *= pow_int(q, e);
  Reduced red = reduce_target(target);
  if (!member(power_vector(t, red.modulus), red, target))
    throw PreconditionError("coset_order: eps^hint does not lie in the order");
  for (const auto& [q, e] : hint) {
    for (unsigned i = 0; i < e; ++i) {
      Integer smaller = t / q;
      if (!member(power_vector(smaller, red.modulus), red, target)) break;
      t = smaller;
    }
  }
  return t;
}

namespace {

void require_coset_preconditions(const FieldElement& eps) {
  if (!eps.is_norm1_unit()) throw PreconditionError("coset_order: eps must be a unit of norm 1");
  if (eps.is_root_of_unity()) throw PreconditionError("coset_order: eps must not be a root of unity");
}

}  // namespace

Integer coset_order(const FieldElement& eps, const Order& o, unsigned long search_bound,
                    const std::optional<Integer>& divisor_hint) {
  if (divisor_hint) {
    if (*divisor_hint < 1) throw PreconditionError("coset_order: hint must be positive");
    return coset_order(eps, o, factor_integer(*divisor_hint));
  }
  require_coset_preconditions(eps);
  UnitPowerOracle oracle(eps, o);
  auto t = oracle.least_power_in(o.lattice(), search_bound);
  if (!t) throw SearchExhausted("coset_order: no power within " + std::to_string(search_bound) + " steps");
  return *t;
}

Integer coset_order(const FieldElement& eps, const Order& o, const Factorization& divisor_hint) {
  require_coset_preconditions(eps);
  UnitPowerOracle oracle(eps, o);
  return oracle.least_power_dividing(o.lattice(), divisor_hint);
}

// ---------------------------------------------------------------------------

std::string format_subset(Subset s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!(s >> i & 1UL)) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

Subset parse_subset(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("subset must look like {1,2}, got '" + text + "'");
  std::string body = text.substr(1, text.size() - 2);
  Subset s = 0;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    Integer i = parse_integer(item);
    if (i < 1 || i > 63) throw ParseError("subset index out of range: " + item);
    s |= 1UL << (static_cast<unsigned>(i) - 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return s;
}

std::map<Subset, Integer> crt_exponents(const std::vector<Integer>& coset_orders) {
  const size_t n = coset_orders.size();
  if (n == 0 || n > 20) throw PreconditionError("crt_exponents: need between 1 and 20 coset orders");
  Integer l = 1;
  for (size_t i = 0; i < n; ++i) {
    if (coset_orders[i] <= 1) throw PreconditionError("crt_exponents: coset orders must exceed 1");
    for (size_t j = 0; j < i; ++j)
      if (gcd_int(coset_orders[i], coset_orders[j]) != 1)
        throw PreconditionError("crt_exponents: coset orders are not pairwise coprime");
    l *= coset_orders[i];
  }
  std::map<Subset, Integer> out;
  for (Subset s = 0; s < (1UL << n); ++s) {
    std::vector<Integer> residues;
    for (size_t i = 0; i < n; ++i) residues.emplace_back((s >> i & 1UL) ? 0 : 1);
    Integer a = crt(residues, coset_orders);
    out[s] = a == 0 ? l : a;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct BasisData {
  Order order;
  RatMatrix basis;  // columns = power-basis coordinates of the given Z-basis
};

BasisData checked_basis(const Order& o, const std::vector<FieldElement>& basis) {
  const Index r = o.field()->degree();
  if (static_cast<Index>(basis.size()) != r) throw PreconditionError("order basis must have r elements");
  RatMatrix b(r, r);
  for (Index j = 0; j < r; ++j) b.col(j) = basis[static_cast<size_t>(j)].coords();
  if (module_from_generators(o.field(), basis) != o.module())
    throw PreconditionError("given elements are not a Z-basis of the order");
  return {o, b};
}

Integer apply_phi(const RatMatrix& basis, const IntVector& phi, const FieldElement& x) {
  RatMatrix c = solve_square(basis, RatMatrix(x.coords()));
  Rational v = 0;
  for (Index i = 0; i < phi.size(); ++i) v += Rational(phi(i)) * c(i, 0);
  if (!is_integral(v)) throw PreconditionError("phi evaluated outside the order");
  return numerator_of(v);
}

}  // namespace

ZModule build_kernel_module(const Order& o, const IntVector& phi, const Integer& n,
                            const std::optional<FieldElement>& eps) {
  return build_kernel_module(o, o.basis(), phi, n, eps);
}

ZModule build_kernel_module(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi,
                            const Integer& n, const std::optional<FieldElement>& eps) {
  BasisData bd = checked_basis(o, basis);
  const Index r = bd.basis.cols();
  if (phi.size() != r) throw DimensionMismatch("phi must have one value per basis element");
  if (n < 1) throw PreconditionError("kernel module: n must be positive");
  if (phi.isZero()) throw PreconditionError("kernel module: phi must be non-trivial");
  if (apply_phi(bd.basis, phi, FieldElement::one(o.field())) != 0)
    throw PreconditionError("kernel module: phi(1) must vanish");
  if (eps && apply_phi(bd.basis, phi, *eps) != 0) throw PreconditionError("kernel module: phi(eps) must vanish");
  IntMatrix row(1, r + 1);
  row << phi.transpose(), IntMatrix::Constant(1, 1, Integer(-n));
  ZLattice ker = integer_kernel(row);
  RatMatrix y = to_rational(IntMatrix(ker.basis().topRows(r)));
  return ZModule(o.field(), ZLattice::from_rational_generators(bd.basis * y));
}

Integer kernel_pairing_det(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi) {
  BasisData bd = checked_basis(o, basis);
  const Index r = bd.basis.cols();
  if (phi.size() != r) throw DimensionMismatch("phi must have one value per basis element");
  IntMatrix pairing(r, r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      pairing(i, j) = apply_phi(bd.basis, phi, basis[static_cast<size_t>(i)] * basis[static_cast<size_t>(j)]);
  return determinant(pairing);
}

Integer kernel_pairing_det(const Order& o, const IntVector& phi) { return kernel_pairing_det(o, o.basis(), phi); }

bool kernel_coeffring_condition(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi,
                                const Integer& n) {
  return gcd_int(n, kernel_pairing_det(o, basis, phi)) == 1;
}

bool kernel_coeffring_condition(const Order& o, const IntVector& phi, const Integer& n) {
  return kernel_coeffring_condition(o, o.basis(), phi, n);
}

Order scaled_order(const Order& o, const Integer& n) {
  if (n < 1) throw PreconditionError("scaled_order: n must be positive");
  std::vector<FieldElement> gens{FieldElement::one(o.field())};
  for (const auto& b : o.basis()) gens.push_back(b * Rational(n));
  return Order(module_from_generators(o.field(), gens));
}

}  // namespace fullmod
