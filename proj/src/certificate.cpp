#include "fullmod/construction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fullmod {

namespace {

PrimalityCertainty worst_certainty(const std::vector<Integer>& primes) {
  for (const auto& p : primes)
    if (miller_rabin(p).certainty == PrimalityCertainty::Probable) return PrimalityCertainty::Probable;
  return PrimalityCertainty::Deterministic;
}

Integer product(const std::vector<Integer>& xs) {
  Integer out = 1;
  for (const auto& x : xs) out *= x;
  return out;
}

std::string join(const std::vector<Integer>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i].str();
  return out;
}

}  // namespace

CounterexampleCertificate build_counterexample(const FieldElement& eta, const CounterexampleOptions& opts) {
  const FieldPtr& field = eta.field();
  const int r = field->degree();
  if (r < 3) throw PreconditionError("counterexample: field degree must be at least 3");
  if (opts.n < 1 || opts.n > 20) throw PreconditionError("counterexample: N must be between 1 and 20");
  if (!eta.is_norm1_unit()) throw PreconditionError("counterexample: eta must be a unit of norm 1");
  if (eta.is_root_of_unity()) throw PreconditionError("counterexample: eta must not be a root of unity");

  std::optional<SeqParams> params;
  FieldElement eps = eta;
  if (opts.mode == Mode::Faithful) {
    params = seq_params(r);
    eps = eta.pow(params->n);
  }
  const FieldElement alpha = opts.alpha.value_or(FieldElement::one(field));
  const MnGenerators g = make_mn_generators(eps, alpha);

  std::vector<Integer> primes, orders;
  if (opts.mode == Mode::Direct) {
    for (Integer p = 2; p <= opts.prime_bound && static_cast<int>(primes.size()) < opts.n; p = next_prime(p)) {
      Integer l;
      try {
        l = coset_order(eps, coeffring_closed_form(g, p), opts.coset_search_bound);
      } catch (const SearchExhausted&) {
        continue;
      }
      if (l <= 1) continue;
      bool coprime = std::all_of(orders.begin(), orders.end(), [&](const Integer& x) { return gcd_int(x, l) == 1; });
      if (!coprime) continue;
      primes.push_back(p);
      orders.push_back(l);
    }
    if (static_cast<int>(primes.size()) < opts.n)
      throw SearchExhausted("counterexample: only " + std::to_string(primes.size()) +
                            " primes with pairwise coprime coset orders up to " + opts.prime_bound.str());
  } else {
    PrimeSequence seq = start_sequence(r);
    const Integer avoid = coeffring_closed_form(g, 1).disc();
    for (int i = 0; i < opts.n; ++i) {
      Integer p = next_faithful_prime(seq, avoid);
      Integer l = coset_order(eps, coeffring_closed_form(g, p), factor_g_quotient(seq.params, p));
      if (l <= 1) throw Error("counterexample: coset order 1 for a sequence prime");
      primes.push_back(p);
      orders.push_back(l);
    }
  }

  std::optional<ZModule> module;
  for (const auto& p : primes) {
    ZModule mp = build_mn(g, p);
    module = module ? intersect_modules(*module, mp) : mp;
  }
  auto exponents = crt_exponents(orders);

  CounterexampleCertificate cert{field,  eta,     eps,
                                 opts.alpha && !opts.alpha->is_one() ? opts.alpha : std::nullopt,
                                 opts.mode, primes, orders,
                                 *module, multiplier_ring(*module).module(),
                                 exponents, {}, worst_certainty(primes)};
  Integer largest = 0;
  for (const auto& [s, a] : exponents) largest = std::max(largest, a);
  if (opts.mode == Mode::Direct && largest <= opts.explicit_unit_limit)
    for (const auto& [s, a] : exponents) cert.units.emplace(s, eps.pow(a));
  return cert;
}

// ---------------------------------------------------------------------------

bool Verdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool Verdict::failed(const std::string& label) const {
  return std::any_of(checks.begin(), checks.end(),
                     [&](const CheckResult& c) { return c.label == label && !c.passed; });
}

std::string Verdict::transcript() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.passed ? "PASS " : "FAIL ") + c.label;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += "\n";
  }
  out += passed() ? "certificate valid\n" : "certificate INVALID\n";
  return out;
}

namespace {

class Checker {
 public:
  explicit Checker(Verdict& v) : verdict_(v) {}

  /// Runs `body`, which returns a detail string and sets `ok`. Exceptions fail the check.
  void run(const std::string& label, const std::function<bool(std::string&)>& body) {
    CheckResult res{label, false, ""};
    try {
      res.passed = body(res.detail);
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = std::string("error: ") + e.what();
    }
    verdict_.checks.push_back(res);
  }

 private:
  Verdict& verdict_;
};

bool structure_ok(const CounterexampleCertificate& c, std::string& detail) {
  const size_t n = c.primes.size();
  if (n == 0 || n > 20) return detail = "need between 1 and 20 primes", false;
  if (c.coset_orders.size() != n) return detail = "one coset order per prime required", false;
  if (c.exponents.size() != (1UL << n)) return detail = "expected 2^N exponent lines", false;
  for (Subset s = 0; s < (1UL << n); ++s)
    if (!c.exponents.count(s)) return detail = "missing exponent for " + format_subset(s, static_cast<int>(n)), false;
  if (!c.units.empty() && c.units.size() != (1UL << n)) return detail = "units section incomplete", false;
  if (c.field->degree() < 3) return detail = "field degree below 3", false;
  for (const FieldPtr& f : {c.eta.field(), c.epsilon.field(), c.module.field(), c.coeff_ring.field()})
    if (!same_field(f, c.field)) return detail = "element or module over a different field", false;
  detail = "N=" + std::to_string(n) + ", r=" + std::to_string(c.field->degree());
  return true;
}

}  // namespace

Verdict verify_certificate(const CounterexampleCertificate& c) {
  Verdict verdict;
  Checker check(verdict);
  check.run("structure", [&](std::string& d) { return structure_ok(c, d); });
  if (verdict.failed("structure")) return verdict;

  const FieldPtr& field = c.field;
  const int n = c.n();
  const FieldElement& eps = c.epsilon;

  check.run("eps-unit", [&](std::string& d) {
    if (!eps.is_norm1_unit()) return d = "epsilon is not an integral unit of norm 1", false;
    if (eps.is_root_of_unity()) return d = "epsilon is a root of unity", false;
    return true;
  });
  check.run("epsilon-derivation", [&](std::string& d) {
    if (!c.eta.is_norm1_unit()) return d = "eta is not a unit of norm 1", false;
    if (c.mode == Mode::Direct) return d = "eps = eta", eps == c.eta;
    SeqParams sp = seq_params(field->degree());
    d = "eps = eta^" + sp.n.str();
    return eps == c.eta.pow(sp.n);
  });
  check.run("primes", [&](std::string& d) {
    bool probable = false;
    for (size_t i = 0; i < c.primes.size(); ++i) {
      auto res = miller_rabin(c.primes[i]);
      if (c.primes[i] < 2 || !res.is_prime) return d = c.primes[i].str() + " is not prime", false;
      if (res.certainty == PrimalityCertainty::Probable) probable = true;
      for (size_t j = 0; j < i; ++j)
        if (c.primes[j] == c.primes[i]) return d = "repeated prime " + c.primes[i].str(), false;
    }
    d = probable ? "Miller-Rabin, " + std::to_string(kProbableRounds) +
                       " bases; error probability below 4^-" + std::to_string(kProbableRounds)
                 : "deterministic Miller-Rabin";
    return true;
  });

  // Generators of M_n; failure here makes every module check meaningless.
  std::optional<MnGenerators> gens;
  check.run("generators", [&](std::string& d) {
    gens = make_mn_generators(eps, c.alpha.value_or(FieldElement::one(field)));
    d = "r1=" + std::to_string(gens->r1) + ", r2=" + std::to_string(gens->r2);
    return true;
  });
  if (!gens) return verdict;

  if (c.mode == Mode::Faithful) {
    check.run("faithful-sequence", [&](std::string& d) {
      SeqParams sp = seq_params(field->degree());
      Integer threshold = real_root_threshold(sp);
      Integer avoid = coeffring_closed_form(*gens, 1).disc();
      IntPoly gp = g_poly(sp.r);
      std::vector<Integer> values;
      for (size_t i = 0; i < c.primes.size(); ++i) {
        const Integer& p = c.primes[i];
        if (mod_floor(p - sp.s, sp.m) != 0) return d = p.str() + " is not " + sp.s.str() + " mod " + sp.m.str(), false;
        if (i == 0 && p < threshold) return d = "first prime below the real-root threshold " + threshold.str(), false;
        if (i > 0 && p <= c.primes[i - 1]) return d = "primes are not increasing", false;
        if (avoid % p == 0) return d = p.str() + " divides disc(Z[eps, alpha])", false;
        Integer v = gp(p) / sp.n;
        if (v <= 1) return d = "g_r(p)/n_r <= 1 for p=" + p.str(), false;
        for (const auto& w : values)
          if (gcd_int(v, w) != 1) return d = "g_r(p)/n_r values not coprime at p=" + p.str(), false;
        values.push_back(v);
      }
      d = "s=" + sp.s.str() + ", m=" + sp.m.str() + ", threshold=" + threshold.str();
      return true;
    });
  }

  // Per-prime modules and rings.
  std::vector<std::optional<ZModule>> mi(static_cast<size_t>(n));
  std::vector<std::optional<Order>> oi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (c.primes[static_cast<size_t>(i)] < 1) continue;
    try {
      mi[static_cast<size_t>(i)] = build_mn(*gens, c.primes[static_cast<size_t>(i)]);
      oi[static_cast<size_t>(i)] = multiplier_ring(*mi[static_cast<size_t>(i)]);
    } catch (const std::exception&) {
    }
  }
  auto per_prime = [&](const std::string& label, const std::function<bool(size_t, std::string&)>& body) {
    check.run(label, [&](std::string& d) {
      for (size_t i = 0; i < mi.size(); ++i) {
        if (!mi[i] || !oi[i]) return d = "cannot build M for k=" + c.primes[i].str(), false;
        if (!body(i, d)) return false;
      }
      return true;
    });
  };

  per_prime("(a)", [&](size_t i, std::string& d) {
    if (!mi[i]->contains(oi[i]->module()) || oi[i]->module() == *mi[i])
      return d = "O is not a proper subset of M for k=" + c.primes[i].str(), false;
    return true;
  });
  per_prime("(b)", [&](size_t i, std::string& d) {
    if (!mi[i]->contains(eps)) return d = "eps not in M for k=" + c.primes[i].str(), false;
    if (oi[i]->contains(eps)) return d = "eps in O for k=" + c.primes[i].str(), false;
    return true;
  });
  per_prime("coset-orders", [&](size_t i, std::string& d) {
    const Integer& stated = c.coset_orders[i];
    if (stated < 1) return d = "non-positive coset order", false;
    Integer actual;
    if (c.mode == Mode::Faithful) {
      actual = coset_order(eps, *oi[i], factor_g_quotient(seq_params(field->degree()), c.primes[i]));
    } else {
      UnitPowerOracle oracle(eps, *oi[i]);
      if (!oracle.power_in(stated, oi[i]->lattice()))
        return d = "eps^" + stated.str() + " not in O for k=" + c.primes[i].str(), false;
      actual = oracle.least_power_dividing(oi[i]->lattice(), factor_integer(stated));
    }
    if (actual != stated)
      return d = "k=" + c.primes[i].str() + ": stated " + stated.str() + ", actual " + actual.str(), false;
    d = "l = (" + join(c.coset_orders) + ")";
    return true;
  });
  check.run("(c)", [&](std::string& d) {
    for (size_t i = 0; i < c.coset_orders.size(); ++i) {
      if (c.coset_orders[i] <= 1) return d = "coset order " + c.coset_orders[i].str() + " <= 1", false;
      for (size_t j = 0; j < i; ++j)
        if (gcd_int(c.coset_orders[i], c.coset_orders[j]) != 1)
          return d = "coset orders " + c.coset_orders[j].str() + " and " + c.coset_orders[i].str() +
                     " are not coprime", false;
    }
    return true;
  });

  std::optional<ZModule> m_actual;
  std::optional<ZModule> o_meet;
  check.run("module", [&](std::string& d) {
    for (size_t i = 0; i < mi.size(); ++i) {
      if (!mi[i]) return d = "cannot build M for k=" + c.primes[i].str(), false;
      m_actual = m_actual ? intersect_modules(*m_actual, *mi[i]) : *mi[i];
    }
    if (*m_actual != build_mn(*gens, product(c.primes))) return d = "intersection differs from M_K", false;
    if (c.module != *m_actual) return d = "stated module differs from the intersection of the M_k", false;
    return true;
  });
  check.run("(d)", [&](std::string& d) {
    for (size_t i = 0; i < oi.size(); ++i) {
      if (!oi[i]) return d = "missing coefficient ring", false;
      o_meet = o_meet ? intersect_modules(*o_meet, oi[i]->module()) : oi[i]->module();
    }
    if (!m_actual) return d = "module unavailable", false;
    if (multiplier_ring(*m_actual).module() != *o_meet)
      return d = "coefficient ring of M is not the intersection of the O^(i)", false;
    return true;
  });

  std::optional<Order> ring;
  check.run("coeff-ring", [&](std::string& d) {
    ring = multiplier_ring(c.module);
    if (c.coeff_ring != ring->module()) return d = "stated ring differs from the multiplier ring", false;
    return true;
  });
  check.run("exponents", [&](std::string& d) {
    for (const auto& [s, a] : c.exponents) {
      if (a < 1) return d = "a_" + format_subset(s, n) + " is not positive", false;
      for (int i = 0; i < n; ++i) {
        Integer want = (s >> i & 1UL) ? 0 : 1;
        const Integer& l = c.coset_orders[static_cast<size_t>(i)];
        if (l < 1) return d = "non-positive coset order", false;
        if (mod_floor(a, l) != mod_floor(want, l))
          return d = "a_" + format_subset(s, n) + " violates the congruence mod l_" + std::to_string(i + 1), false;
      }
    }
    return true;
  });

  if (!ring) {
    try {
      ring = multiplier_ring(c.module);
    } catch (const std::exception&) {
    }
  }
  std::optional<UnitPowerOracle> oracle;
  if (ring) {
    try {
      oracle.emplace(eps, *ring);
    } catch (const std::exception&) {
    }
  }
  check.run("membership", [&](std::string& d) {
    if (!oracle) return d = "no coefficient ring for the stated module", false;
    for (const auto& [s, a] : c.exponents)
      if (!oracle->power_in(a, c.module.lattice())) return d = "eps^a_" + format_subset(s, n) + " not in M", false;
    d = std::to_string(c.exponents.size()) + " units in M";
    return true;
  });
  check.run("non-associates", [&](std::string& d) {
    if (!oracle) return d = "no coefficient ring for the stated module", false;
    size_t pairs = 0;
    for (auto a = c.exponents.begin(); a != c.exponents.end(); ++a)
      for (auto b = std::next(a); b != c.exponents.end(); ++b, ++pairs)
        if (oracle->power_in(a->second - b->second, ring->lattice()))
          return d = format_subset(a->first, n) + " and " + format_subset(b->first, n) + " are associates", false;
    d = std::to_string(pairs) + " pairs checked";
    return true;
  });
  check.run("units", [&](std::string& d) {
    if (c.units.empty()) return d = "not expanded", true;
    for (const auto& [s, u] : c.units) {
      auto e = c.exponents.find(s);
      if (e == c.exponents.end()) return d = "unit for unknown subset", false;
      if (u != eps.pow(e->second)) return d = "unit " + format_subset(s, n) + " is not eps^a_S", false;
      if (!c.module.contains(u) || u.norm() != 1) return d = "unit " + format_subset(s, n) + " not a norm-1 element of M", false;
    }
    return true;
  });
  return verdict;
}

// ---------------------------------------------------------------------------

std::string format_certificate(const CounterexampleCertificate& c) {
  const int n = c.n();
  std::ostringstream out;
  out << "[field]\n" << format_polynomial(c.field->min_poly()) << "\n";
  out << "[eta]\n" << format_element(c.eta) << "\n";
  out << "[epsilon]\n" << format_element(c.epsilon) << "\n";
  if (c.alpha) out << "[alpha]\n" << format_element(*c.alpha) << "\n";
  out << "[mode]\n" << to_string(c.mode) << "\n";
  out << "[primes]\n";
  for (const auto& p : c.primes) out << p << "\n";
  out << "[coset-orders]\n";
  for (const auto& l : c.coset_orders) out << l << "\n";
  out << "[module]\n" << format_lattice(c.module.lattice()) << "\n";
  out << "[coeff-ring]\n" << format_lattice(c.coeff_ring.lattice()) << "\n";
  out << "[exponents]\n";
  for (const auto& [s, a] : c.exponents) out << "S=" << format_subset(s, n) << ": " << a << "\n";
  out << "[units]\n";
  if (c.units.empty()) out << "# eps^a_S, not expanded\n";
  for (const auto& [s, u] : c.units) out << "S=" << format_subset(s, n) << ": " << format_element(u) << "\n";
  return out.str();
}

namespace {

std::pair<Subset, std::string> parse_subset_line(const std::string& line) {
  auto colon = line.find(':');
  if (line.rfind("S=", 0) != 0 || colon == std::string::npos) throw ParseError("expected 'S={...}: value', got '" + line + "'");
  std::string value = line.substr(colon + 1);
  value.erase(0, value.find_first_not_of(" \t"));
  return {parse_subset(line.substr(2, colon - 2)), value};
}

}  // namespace

CounterexampleCertificate parse_certificate(const std::string& text) {
  std::map<std::string, std::vector<std::string>> sections;
  std::string current;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '[') {
      if (line.back() != ']') throw ParseError("bad section header '" + line + "'");
      current = line.substr(1, line.size() - 2);
      if (sections.count(current)) throw ParseError("duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    if (current.empty()) throw ParseError("content before the first section");
    sections[current].push_back(line);
  }
  auto single = [&](const std::string& name) -> const std::string& {
    auto it = sections.find(name);
    if (it == sections.end() || it->second.size() != 1) throw ParseError("section [" + name + "] needs exactly one line");
    return it->second.front();
  };
  auto lines = [&](const std::string& name) -> const std::vector<std::string>& {
    auto it = sections.find(name);
    if (it == sections.end()) throw ParseError("missing section [" + name + "]");
    return it->second;
  };
  for (const auto& [name, body] : sections) {
    static const std::vector<std::string> known{"field",  "eta",    "epsilon", "alpha",     "mode",     "primes",
                                                "coset-orders", "module", "coeff-ring", "exponents", "units"};
    if (std::find(known.begin(), known.end(), name) == known.end()) throw ParseError("unknown section [" + name + "]");
  }

  FieldPtr field = NumberField::create(parse_polynomial(single("field")));
  const Index r = field->degree();
  std::optional<FieldElement> alpha;
  if (sections.count("alpha")) alpha = parse_element(field, single("alpha"));
  std::vector<Integer> primes, orders;
  for (const auto& l : lines("primes")) primes.push_back(parse_integer(l));
  for (const auto& l : lines("coset-orders")) orders.push_back(parse_integer(l));
  auto lattice_of = [&](const std::string& name) {
    const auto& body = lines(name);
    std::string joined;
    for (const auto& l : body) joined += l + "\n";
    return ZModule(field, parse_lattice(joined, r));
  };
  std::map<Subset, Integer> exponents;
  for (const auto& l : lines("exponents")) {
    auto [s, v] = parse_subset_line(l);
    if (!exponents.emplace(s, parse_integer(v)).second) throw ParseError("duplicate exponent line");
  }
  std::map<Subset, FieldElement> units;
  if (sections.count("units"))
    for (const auto& l : lines("units")) {
      auto [s, v] = parse_subset_line(l);
      if (!units.emplace(s, parse_element(field, v)).second) throw ParseError("duplicate unit line");
    }
  CounterexampleCertificate c{field,
                              parse_element(field, single("eta")),
                              parse_element(field, single("epsilon")),
                              alpha,
                              parse_mode(single("mode")),
                              primes,
                              orders,
                              lattice_of("module"),
                              lattice_of("coeff-ring"),
                              exponents,
                              units,
                              worst_certainty(primes)};
  return c;
}

}  // namespace fullmod
