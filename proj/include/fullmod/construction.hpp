#pragma once

#include "fullmod/number_theory.hpp"
#include "fullmod/zmodule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fullmod {

// ---------------------------------------------------------------------------
// Prime sequence machinery.

/// prod_{i=1}^{r} (X^i - 1).
IntPoly g_poly(int r);

struct SeqParams {
  int r = 0;
  Integer s;  ///< least prime > r + 1
  Integer n;  ///< g_r(s)
  Integer m;  ///< n * (r + 1)!
};

SeqParams seq_params(int r);

enum class Mode { Direct, Faithful };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct PrimeSequence {
  SeqParams params;
  std::vector<Integer> found;
  std::vector<Integer> product_values;  ///< g_r(p) / n_r for each found prime
  Mode mode = Mode::Faithful;
};

PrimeSequence start_sequence(int r);

/// Smallest integer R such that every real root of g_r(X)/n_r - 1 is < R.
Integer real_root_threshold(const SeqParams& params);

/// Appends and returns the next prime p = s_r mod m_r above the previous
/// one (above every real root of g_r/n_r - 1 for the first) such that
/// g_r(p)/n_r > 1 is coprime to all earlier values and p does not divide
/// `avoid_disc` (ignored when 0). Gives up after `max_candidates` steps.
Integer next_faithful_prime(PrimeSequence& seq, const Integer& avoid_disc,
                            unsigned long max_candidates = 1000000);

/// Factorization of g_r(p)/n_r via its cyclotomic pieces Phi_d(p), d <= r.
Factorization factor_g_quotient(const SeqParams& params, const Integer& p);

// ---------------------------------------------------------------------------
// The modules M_n(alpha1, alpha2) and their coefficient rings.

/// Validated generator pair: alpha1 integral of degree r1, alpha2 of degree
/// r2 = r / r1 over Q(alpha1) with monic minimal polynomial over Z[alpha1].
struct MnGenerators {
  FieldElement alpha1;
  FieldElement alpha2;
  int r1 = 0;
  int r2 = 0;
  /// alpha1^i alpha2^j in lexicographic (i, j) order; index i*r2 + j.
  std::vector<FieldElement> monomials;
};

MnGenerators make_mn_generators(const FieldElement& alpha1, const FieldElement& alpha2);

/// Module generated by all monomials except the last, which is scaled by n.
ZModule build_mn(const MnGenerators& g, const Integer& n);
ZModule build_mn(const FieldElement& alpha1, const FieldElement& alpha2, const Integer& n);

/// Z + n * (span of the non-constant monomials).
Order coeffring_closed_form(const MnGenerators& g, const Integer& n);
Order coeffring_closed_form(const FieldElement& alpha1, const FieldElement& alpha2, const Integer& n);

// ---------------------------------------------------------------------------
// Powers of a unit modulo sublattices.

/// Decides whether large powers eps^e lie in a given full lattice without
/// forming eps^e: arithmetic happens in an order S containing eps (and a
/// target-dependent ring), reduced modulo an integer D with D*S inside the
/// scaled target.
class UnitPowerOracle {
 public:
  /// `eps` must be an integral unit; `ambient` an order the target lattices
  /// are compared against (its ring with eps adjoined is used as S).
  UnitPowerOracle(const FieldElement& eps, const Order& ambient);

  bool power_in(const Integer& exponent, const ZLattice& target) const;
  /// Least t >= 1 with eps^t in target. Increments one power at a time.
  std::optional<Integer> least_power_in(const ZLattice& target, unsigned long search_bound) const;
  /// Least t >= 1 with eps^t in target given a multiple `hint` with eps^hint in target.
  Integer least_power_dividing(const ZLattice& target, const Factorization& hint) const;

  const ZModule& ring() const { return ring_; }

 private:
  struct Reduced {
    IntMatrix target;  ///< c * target in S-coordinates (integer, full)
    Integer c;
    Integer modulus;   ///< D with D Z^r inside `target`
  };
  Reduced reduce_target(const ZLattice& target) const;
  IntVector power_vector(const Integer& exponent, const Integer& modulus) const;
  static bool member(const IntVector& v, const Reduced& red, const ZLattice& lattice);

  FieldPtr field_;
  ZModule ring_;
  RatMatrix to_ring_;   ///< power-basis coordinates -> S-coordinates
  IntMatrix mult_;      ///< multiplication by eps in S-coordinates
  IntMatrix mult_inv_;  ///< multiplication by eps^{-1}
  IntVector one_;
};

/// Least t >= 1 with eps^t in O. With a divisor hint, only divisors of the
/// hint are considered (the exponents t with eps^t in O form a subgroup).
Integer coset_order(const FieldElement& eps, const Order& o, unsigned long search_bound = 1000000,
                    const std::optional<Integer>& divisor_hint = std::nullopt);
Integer coset_order(const FieldElement& eps, const Order& o, const Factorization& divisor_hint);

// ---------------------------------------------------------------------------
// CRT exponents and certificates.

/// Subset S of {1..N} encoded as a bitmask (bit i-1 <=> i in S).
using Subset = unsigned long;

std::string format_subset(Subset s, int n);
Subset parse_subset(const std::string& text);

/// a_S = 0 mod l_i for i in S, 1 mod l_i otherwise; smallest positive,
/// with the all-zero class mapped to lcm(l_i).
std::map<Subset, Integer> crt_exponents(const std::vector<Integer>& coset_orders);

struct CounterexampleCertificate {
  FieldPtr field;
  FieldElement eta;
  FieldElement epsilon;
  std::optional<FieldElement> alpha;  ///< second generator when Q(eps) != K
  Mode mode = Mode::Direct;
  std::vector<Integer> primes;
  std::vector<Integer> coset_orders;
  ZModule module;
  ZModule coeff_ring;
  std::map<Subset, Integer> exponents;
  /// Explicit units eps^{a_S}; empty when the exponents are too large to expand.
  std::map<Subset, FieldElement> units;
  PrimalityCertainty prime_certainty = PrimalityCertainty::Deterministic;

  int n() const { return static_cast<int>(primes.size()); }
};

struct CounterexampleOptions {
  int n = 1;
  Mode mode = Mode::Direct;
  Integer prime_bound = 50;
  std::optional<FieldElement> alpha;
  unsigned long coset_search_bound = 1000000;
  /// Units are written out explicitly when every a_S is at most this.
  Integer explicit_unit_limit = 100000;
};

CounterexampleCertificate build_counterexample(const FieldElement& eta, const CounterexampleOptions& opts);

struct CheckResult {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct Verdict {
  std::vector<CheckResult> checks;
  bool passed() const;
  bool failed(const std::string& label) const;
  std::string transcript() const;
};

/// Re-derives every claim of the certificate from its field, eta, mode,
/// primes and exponents. Check labels: structure, eps-unit,
/// epsilon-derivation, primes, generators, faithful-sequence, coset-orders,
/// (a), (b), (c), module, (d), coeff-ring, exponents, membership,
/// non-associates, units.
Verdict verify_certificate(const CounterexampleCertificate& cert);

std::string format_certificate(const CounterexampleCertificate& cert);
CounterexampleCertificate parse_certificate(const std::string& text);

// ---------------------------------------------------------------------------
// Kernel modules {x in O : phi(x) = 0 mod n}.

/// `phi` gives phi on a Z-basis of O (its HNF basis unless `basis` is
/// passed). Requires phi(1) = 0, phi != 0 and, when `eps` is given,
/// phi(eps) = 0.
ZModule build_kernel_module(const Order& o, const IntVector& phi, const Integer& n,
                            const std::optional<FieldElement>& eps = std::nullopt);
ZModule build_kernel_module(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi,
                            const Integer& n, const std::optional<FieldElement>& eps = std::nullopt);

/// det(phi(w_i w_j)).
Integer kernel_pairing_det(const Order& o, const IntVector& phi);
Integer kernel_pairing_det(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi);

/// gcd(n, det(phi(w_i w_j))) == 1; then the coefficient ring of the kernel
/// module is Z + nO.
bool kernel_coeffring_condition(const Order& o, const IntVector& phi, const Integer& n);
bool kernel_coeffring_condition(const Order& o, const std::vector<FieldElement>& basis, const IntVector& phi,
                                const Integer& n);

/// Z + n O.
Order scaled_order(const Order& o, const Integer& n);

}  // namespace fullmod
