#include <doctest.h>

#include "fullmod/construction.hpp"

using namespace fullmod;

namespace {

struct Cubic {
  FieldPtr k = NumberField::create(parse_polynomial("-2,0,0,1"));
  FieldElement one = FieldElement::one(k);
  FieldElement eps = parse_element(k, "-1,1,0");
  FieldElement eps2 = eps * eps;
};

}  // namespace

TEST_CASE("g_r values") {
  CHECK(g_poly(1) == IntPoly{-1, 1});
  CHECK(g_poly(3)(Integer(2)) == 1 * 3 * 7);
  CHECK(g_poly(3)(Integer(5)) == 4 * 24 * 124);
}

TEST_CASE("sequence parameters") {
  auto p3 = seq_params(3);
  CHECK(p3.s == 5);
  CHECK(p3.n == 11904);
  CHECK(p3.m == 285696);
  auto p2 = seq_params(2);
  CHECK(p2.s == 5);
  CHECK(p2.n == 96);
  CHECK(p2.m == 576);
  for (int r : {2, 3, 4}) {
    auto sp = seq_params(r);
    for (int k = 1; k <= 5; ++k) CHECK(mod_floor(g_poly(r)(sp.s + k * sp.m) - sp.n, sp.m) == 0);
  }
}

TEST_CASE("real-root threshold") {
  auto sp = seq_params(3);
  // g_3(X) - 11904 vanishes at 5 and g_3 increases for X >= 1.
  CHECK(g_poly(3)(Integer(5)) - sp.n == 0);
  CHECK(real_root_threshold(sp) == 6);
  auto sp2 = seq_params(2);
  Integer t2 = real_root_threshold(sp2);
  IntPoly h = g_poly(2) - IntPoly::constant(sp2.n);
  for (Integer x = t2; x < t2 + 50; ++x) CHECK(h(x) > 0);
  CHECK(h(t2 - 1) <= 0);
}

TEST_CASE("faithful primes") {
  auto seq = start_sequence(3);
  Integer p1 = next_faithful_prime(seq, 0);
  // Independent scan: first prime of the progression beyond 5.
  Integer expect = 5 + 285696;
  while (!is_prime(expect)) expect += 285696;
  CHECK(p1 == expect);
  CHECK(p1 == 571397);
  Integer p2 = next_faithful_prime(seq, 0);
  CHECK(p2 > p1);
  CHECK(mod_floor(p2 - 5, Integer(285696)) == 0);
  CHECK(gcd_int(seq.product_values[0], seq.product_values[1]) == 1);
  auto avoided = start_sequence(3);
  CHECK(next_faithful_prime(avoided, p1 * 7) != p1);
}

TEST_CASE("factorization of g_r(p)/n_r") {
  for (Integer p : {Integer(571397), Integer(6285317)}) {
    auto sp = seq_params(3);
    Integer prod = 1;
    for (const auto& [q, e] : factor_g_quotient(sp, p)) prod *= pow_int(q, e);
    CHECK(prod == g_poly(3)(p) / sp.n);
  }
}

TEST_CASE("M_n and closed-form coefficient rings") {
  Cubic c;
  CHECK(build_mn(c.eps, c.one, 6) == module_from_generators(c.k, {c.one, c.eps, c.eps2 * Rational(6)}));
  CHECK(coeffring_closed_form(c.eps, c.one, 6).module() ==
        module_from_generators(c.k, {c.one, c.eps * Rational(6), c.eps2 * Rational(6)}));
  CHECK(coeffring_closed_form(c.eps, c.one, 1) == power_basis_order(c.k));
  for (long n = 2; n <= 12; ++n)
    CHECK(coeffring_closed_form(c.eps, c.one, n) == multiplier_ring(build_mn(c.eps, c.one, n)));
  CHECK_THROWS_AS(build_mn(c.eps, c.one, 0), PreconditionError);
}

TEST_CASE("two-generator case") {
  auto k = NumberField::create(parse_polynomial("-2,0,0,0,1"));
  auto t = FieldElement::generator(k);
  auto one = FieldElement::one(k);
  auto eps = one + t * t;  // 1 + sqrt(2), norm 1 from Q(2^(1/4))
  CHECK(eps.norm() == 1);
  CHECK_THROWS_AS(make_mn_generators(eps, one), PreconditionError);
  auto g = make_mn_generators(eps, t);
  CHECK(g.r1 == 2);
  CHECK(g.r2 == 2);
  for (long n = 2; n <= 6; ++n) CHECK(coeffring_closed_form(g, n) == multiplier_ring(build_mn(g, n)));
  CHECK(intersect_modules(build_mn(g, 2), build_mn(g, 3)) == build_mn(g, 6));
}

TEST_CASE("unit power oracle matches explicit powers") {
  Cubic c;
  for (long p : {2, 3, 5, 7}) {
    Order o = coeffring_closed_form(c.eps, c.one, p);
    UnitPowerOracle oracle(c.eps, o);
    for (long e = -20; e <= 60; ++e) CHECK(oracle.power_in(e, o.lattice()) == o.contains(c.eps.pow(e)));
  }
  ZModule m6 = build_mn(c.eps, c.one, 6);
  UnitPowerOracle oracle(c.eps, multiplier_ring(m6));
  for (long e = 0; e <= 40; ++e) CHECK(oracle.power_in(e, m6.lattice()) == m6.contains(c.eps.pow(e)));
}

TEST_CASE("coset orders") {
  Cubic c;
  CHECK(coset_order(c.eps, coeffring_closed_form(c.eps, c.one, 2)) == 4);
  CHECK(coset_order(c.eps, coeffring_closed_form(c.eps, c.one, 3)) == 3);
  for (long p = 2; p <= 30; ++p) {
    Order o = coeffring_closed_form(c.eps, c.one, p);
    Integer l = coset_order(c.eps, o);
    // Least power by direct expansion.
    long t = 1;
    while (!o.contains(c.eps.pow(t))) ++t;
    CHECK(l == t);
    CHECK(coset_order(c.eps, o, 1000000, l * 6) == l);
  }
  Order o5 = coeffring_closed_form(c.eps, c.one, 5);
  CHECK(UnitPowerOracle(c.eps, o5).power_in(11904, o5.lattice()));
  CHECK(11904 % coset_order(c.eps, o5) == 0);
  CHECK_THROWS_AS(coset_order(c.one, o5), PreconditionError);
  CHECK_THROWS_AS(coset_order(c.eps, o5, 3), SearchExhausted);
}

TEST_CASE("crt exponents") {
  auto a = crt_exponents({4, 3});
  CHECK(a.at(0) == 1);
  CHECK(a.at(1) == 4);
  CHECK(a.at(2) == 9);
  CHECK(a.at(3) == 12);
  CHECK(crt_exponents({2, 3, 5}).at(2) == 21);
  std::set<Integer> residues;
  for (const auto& [s, v] : a) residues.insert(v % 12);
  CHECK(residues.size() == 4);
  CHECK_THROWS_AS(crt_exponents({4, 6}), PreconditionError);
  CHECK_THROWS_AS(crt_exponents({1, 3}), PreconditionError);
}

TEST_CASE("subset text") {
  CHECK(format_subset(0, 2) == "{}");
  CHECK(format_subset(3, 2) == "{1,2}");
  CHECK(format_subset(4, 3) == "{3}");
  CHECK(parse_subset("{1,3}") == 5);
  CHECK(parse_subset("{}") == 0);
  CHECK_THROWS_AS(parse_subset("1,2"), ParseError);
}

TEST_CASE("kernel modules") {
  Cubic c;
  Order o = power_basis_order(c.k);
  std::vector<FieldElement> basis{c.one, c.eps, c.eps2};
  IntVector phi(3);
  phi << 0, 1, 0;
  CHECK(kernel_pairing_det(o, basis, phi) == -10);
  CHECK(build_kernel_module(o, basis, phi, 3) == module_from_generators(c.k, {c.one, c.eps * Rational(3), c.eps2}));
  for (long n : {3, 7, 9}) {
    CHECK(kernel_coeffring_condition(o, basis, phi, n));
    CHECK(multiplier_ring(build_kernel_module(o, basis, phi, n)) == scaled_order(o, n));
  }
  CHECK_FALSE(kernel_coeffring_condition(o, basis, phi, 5));
  CHECK_THROWS_AS(build_kernel_module(o, basis, phi, 3, c.eps), PreconditionError);
  IntVector bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(build_kernel_module(o, basis, bad, 3), PreconditionError);
  CHECK_THROWS_AS(build_kernel_module(o, basis, IntVector(IntVector::Zero(3)), 3), PreconditionError);
}
