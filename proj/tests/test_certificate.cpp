#include <doctest.h>

#include "mutations.hpp"

using namespace fullmod;

namespace {

struct Demo {
  FieldPtr k = NumberField::create(parse_polynomial("-2,0,0,1"));
  FieldElement eta = parse_element(k, "-1,1,0");

  CounterexampleCertificate build(int n, long bound = 50, Mode mode = Mode::Direct) const {
    CounterexampleOptions o;
    o.n = n;
    o.prime_bound = bound;
    o.mode = mode;
    return build_counterexample(eta, o);
  }
};

}  // namespace

TEST_CASE("worked example") {
  Demo d;
  auto c = d.build(2);
  CHECK(c.primes == std::vector<Integer>{2, 3});
  CHECK(c.coset_orders == std::vector<Integer>{4, 3});
  CHECK(format_lattice(c.module.lattice()) == "den=1\n1,0,0;0,1,0;0,0,6");
  std::vector<Integer> a;
  for (const auto& [s, v] : c.exponents) a.push_back(v);
  CHECK(a == std::vector<Integer>{1, 4, 9, 12});
  CHECK(c.units.size() == 4);
  CHECK(c.units.at(1) == d.eta.pow(4));
  auto v = verify_certificate(c);
  CHECK(v.passed());
  CHECK(v.transcript().find("FAIL") == std::string::npos);
}

TEST_CASE("unit counts and pairwise non-associates") {
  Demo d;
  for (int n : {1, 2, 3}) {
    auto c = d.build(n, 200);
    CHECK(c.exponents.size() == (1UL << n));
    CHECK(verify_certificate(c).passed());
    ZModule m = c.module;
    // Independent check by explicit field arithmetic.
    std::vector<FieldElement> units;
    for (const auto& [s, a] : c.exponents) units.push_back(d.eta.pow(a));
    for (const auto& u : units) CHECK(m.contains(u));
    for (size_t i = 0; i < units.size(); ++i)
      for (size_t j = i + 1; j < units.size(); ++j) CHECK_FALSE(associates(units[i], units[j], m));
  }
}

TEST_CASE("hand-made certificate with the single prime 3") {
  Demo d;
  auto g = make_mn_generators(d.eta, FieldElement::one(d.k));
  ZModule m3 = build_mn(g, 3);
  CounterexampleCertificate c{d.k,     d.eta, d.eta, std::nullopt, Mode::Direct, {3}, {3}, m3,
                              coeffring_closed_form(g, 3).module(), crt_exponents({3}), {},
                              PrimalityCertainty::Deterministic};
  CHECK(c.exponents.at(0) == 1);
  CHECK(c.exponents.at(1) == 3);
  CHECK(verify_certificate(c).passed());
}

TEST_CASE("text round trip") {
  Demo d;
  auto c = d.build(3, 200);
  std::string text = format_certificate(c);
  auto back = parse_certificate(text);
  CHECK(format_certificate(back) == text);
  CHECK(verify_certificate(back).passed());
  CHECK_THROWS_AS(parse_certificate("[field]\n-2,0,0,1\n[bogus]\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate(text.substr(0, text.find("[mode]"))), ParseError);
}

TEST_CASE("exponents are checked by congruence") {
  Demo d;
  std::string text = format_certificate(d.build(2));
  std::string edited = testing::edit("exponents", 0, "S={}: 13", text);
  edited = testing::edit("units", 0, "S={}: " + format_element(d.eta.pow(13)), edited);
  CHECK(verify_certificate(parse_certificate(edited)).passed());
}

TEST_CASE("mutations are caught with the right label") {
  Demo d;
  std::string text = format_certificate(d.build(2));
  auto mutations = testing::standard_mutations();
  CHECK(mutations.size() == 20);
  for (const auto& m : mutations) {
    CAPTURE(m.name);
    auto out = testing::run_mutation(m, text);
    CAPTURE(out.failed_labels);
    CHECK(out.rejected);
    CHECK(out.correct_label);
  }
}

TEST_CASE("faithful mode") {
  Demo d;
  auto c = d.build(1, 50, Mode::Faithful);
  REQUIRE(c.primes.size() == 1);
  CHECK(mod_floor(c.primes[0] - 5, Integer(285696)) == 0);
  CHECK(c.epsilon == d.eta.pow(11904));
  CHECK(c.units.empty());
  auto v = verify_certificate(parse_certificate(format_certificate(c)));
  CHECK(v.passed());
  CHECK_FALSE(v.failed("faithful-sequence"));
}

TEST_CASE("second generator") {
  auto k = NumberField::create(parse_polynomial("-2,0,0,0,1"));
  auto t = FieldElement::generator(k);
  auto eta = FieldElement::one(k) + t * t;
  CounterexampleOptions o;
  o.n = 2;
  o.alpha = t;
  auto c = build_counterexample(eta, o);
  CHECK(c.alpha);
  auto text = format_certificate(c);
  CHECK(text.find("[alpha]") != std::string::npos);
  CHECK(verify_certificate(parse_certificate(text)).passed());
  o.alpha.reset();
  CHECK_THROWS_AS(build_counterexample(eta, o), PreconditionError);
}

TEST_CASE("preconditions") {
  Demo d;
  CounterexampleOptions o;
  CHECK_THROWS_AS(build_counterexample(FieldElement::generator(d.k), o), PreconditionError);
  CHECK_THROWS_AS(build_counterexample(FieldElement::one(d.k), o), PreconditionError);
  o.n = 4;
  o.prime_bound = 7;
  CHECK_THROWS_AS(build_counterexample(d.eta, o), SearchExhausted);
  auto q = NumberField::create(parse_polynomial("-2,0,1"));
  CHECK_THROWS_AS(build_counterexample(parse_element(q, "3,2"), CounterexampleOptions{}), PreconditionError);
}
