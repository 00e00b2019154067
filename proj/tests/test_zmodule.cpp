#include <doctest.h>

#include "fullmod/zmodule.hpp"

#include <random>

using namespace fullmod;

namespace {

struct Cubic {
  FieldPtr k = NumberField::create(parse_polynomial("-2,0,0,1"));
  FieldElement one = FieldElement::one(k);
  FieldElement eps = parse_element(k, "-1,1,0");
  FieldElement eps2 = eps * eps;

  ZModule mn(long n) const { return module_from_generators(k, {one, eps, eps2 * Rational(n)}); }
  ZModule on(long n) const { return module_from_generators(k, {one, eps * Rational(n), eps2 * Rational(n)}); }
};

}  // namespace

TEST_CASE("intersections of M_n") {
  Cubic c;
  CHECK(intersect_modules(c.mn(2), c.mn(3)) == c.mn(6));
  CHECK(intersect_modules(c.mn(6), c.mn(6)) == c.mn(6));
  auto m = intersect_modules(c.mn(2), c.mn(3));
  CHECK(m.rank() == 3);
  CHECK(m.lattice().basis() == c.mn(6).lattice().basis());
}

TEST_CASE("multiplier rings") {
  Cubic c;
  CHECK(multiplier_ring(c.mn(6)).module() == c.on(6));
  auto zt = power_basis_order(c.k);
  CHECK(multiplier_ring(zt.module()) == zt);
  CHECK(multiplier_ring(module_from_generators(c.k, {c.one, c.eps * Rational(3), c.eps2})).module() == c.on(3));
  CHECK_THROWS_AS(multiplier_ring(module_from_generators(c.k, {c.one, c.eps})), NotFullModule);
}

TEST_CASE("multiplier ring agrees with a brute-force oracle") {
  Cubic c;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<FieldElement> gens;
    for (int g = 0; g < 3; ++g) {
      IntVector v(3);
      for (int i = 0; i < 3; ++i) v(i) = d(rng);
      gens.push_back(FieldElement::from_integers(c.k, v));
    }
    ZModule m = module_from_generators(c.k, gens);
    if (!m.is_full()) continue;
    Order o = multiplier_ring(m);
    auto basis = m.basis();
    for (int x = -3; x <= 3; ++x)
      for (int y = -3; y <= 3; ++y)
        for (int z = -3; z <= 3; ++z) {
          IntVector v(3);
          v << x, y, z;
          FieldElement a = FieldElement::from_integers(c.k, v);
          bool stable = true;
          for (const auto& b : basis) stable = stable && m.contains(a * b);
          CHECK(o.contains(a) == stable);
        }
  }
}

TEST_CASE("orders") {
  Cubic c;
  Order o6(c.on(6));
  CHECK(o6.contains(c.one));
  CHECK(power_basis_order(c.k).disc() == -108);
  CHECK(o6.disc() == -108 * 6 * 6 * 6 * 6);
  CHECK_THROWS_AS(Order(c.mn(6)), PreconditionError);
  CHECK(ring_closure(c.k, {c.eps}) == power_basis_order(c.k).module());
}

TEST_CASE("norm-1 units of orders") {
  Cubic c;
  CHECK(is_norm1_unit_of_order(c.eps, power_basis_order(c.k)));
  CHECK_FALSE(is_norm1_unit_of_order(c.eps, Order(c.on(6))));
  CHECK(is_norm1_unit_of_order(c.one, Order(c.on(6))));
}

TEST_CASE("associates in M_6") {
  Cubic c;
  ZModule m6 = c.mn(6);
  CHECK(associates(c.eps, c.eps, m6));
  CHECK_FALSE(associates(c.eps.pow(4), c.eps, m6));
  CHECK(associates(c.eps.pow(13), c.eps, m6));
  CHECK_THROWS_AS(associates(FieldElement::zero(c.k), c.eps, m6), PreconditionError);
}

TEST_CASE("restriction to subfields") {
  Cubic c;
  CHECK(restrict_module(c.mn(6), {c.one}) == c.mn(6));
  CHECK(restrict_module(c.mn(6), {c.eps}) == c.mn(6));
  auto k4 = NumberField::create(parse_polynomial("-2,0,0,0,1"));
  auto t = FieldElement::generator(k4);
  auto one = FieldElement::one(k4);
  ZModule m = module_from_generators(k4, {one, t, t * t});
  ZModule expect = module_from_generators(k4, {one, t * t});
  CHECK(restrict_module(m, {t * t}) == expect);
  CHECK(restrict_module(m, {one}) == m);
}

TEST_CASE("span stabilizer") {
  auto k4 = NumberField::create(parse_polynomial("-2,0,0,0,1"));
  auto t = FieldElement::generator(k4);
  auto one = FieldElement::one(k4);
  auto s = span_stabilizer_field(module_from_generators(k4, {one, t * t}));
  CHECK(s.size() == 2);
  CHECK(span_stabilizer_field(module_from_generators(k4, {one, t})).size() == 1);
  CHECK(span_stabilizer_field(module_from_generators(k4, {one, t, t * t, t * t * t})).size() == 4);
}

TEST_CASE("q-algebra closure") {
  auto k4 = NumberField::create(parse_polynomial("-2,0,0,0,1"));
  auto t = FieldElement::generator(k4);
  CHECK(q_algebra_basis(k4, {t}).size() == 4);
  CHECK(q_algebra_basis(k4, {t * t}).size() == 2);
}

TEST_CASE("discriminant of a basis") {
  Cubic c;
  CHECK(basis_discriminant({c.one, c.eps, c.eps2}) == -108);
  CHECK(basis_discriminant(c.mn(6).basis()) == -108 * 36);
}

TEST_CASE("module text round trip") {
  Cubic c;
  std::string text = format_module(c.mn(6));
  CHECK(text == "-2,0,0,1\n1,0,0\n0,1,0\n0,0,6\n");
  CHECK(parse_module("# M_6\n-2,0,0,1\n1,0,0\n-1,1,0\n6,-12,6\n") == c.mn(6));
  CHECK_THROWS_AS(parse_module("-2,0,0,1\n"), ParseError);
}
