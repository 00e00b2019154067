#include "fullmod/number_theory.hpp"

#include <algorithm>
#include <map>

namespace fullmod {

namespace {

const unsigned kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool witness_passes(const Integer& n, const Integer& base, const Integer& d,
                    unsigned s) {
  Integer a = mod_floor(base, n);
  if (a == 0) return true;
  Integer x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (n % 2 == 0) return Integer(2);
  Integer y = seed % n, c = (seed * 7 + 1) % n, m = 128;
  Integer g = 1, r = 1, q = 1, x, ys;
  auto f = [&](const Integer& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (Integer i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = q * abs_int(x - y) % n;
      }
      g = gcd_int(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd_int(abs_int(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 2;; ++seed) {
    Integer d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace

Integer powmod(Integer base, Integer exponent, const Integer& modulus) {
  Integer result = 1 % modulus;
  base = mod_floor(base, modulus);
  while (exponent > 0) {
    if (mp::bit_test(exponent, 0)) result = result * base % modulus;
    base = base * base % modulus;
    exponent >>= 1;
  }
  return result;
}

PrimalityResult miller_rabin(const Integer& n) {
  PrimalityResult res;
  if (n < 2) return res;
  for (unsigned p : kSmallPrimes) {
    if (n == p) {
      res.is_prime = true;
      return res;
    }
    if (n % p == 0) return res;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (mp::bit_test(d, 0) == false) {
    d >>= 1;
    ++s;
  }
  static const Integer kDeterministicBound("341550071728321");
  const bool small = n < kDeterministicBound;
  const size_t rounds = small ? 7 : static_cast<size_t>(kProbableRounds);
  for (size_t i = 0; i < rounds; ++i)
    if (!witness_passes(n, Integer(kSmallPrimes[i]), d, s)) return res;
  res.is_prime = true;
  res.certainty = small ? PrimalityCertainty::Deterministic : PrimalityCertainty::Probable;
  return res;
}

Integer next_prime(const Integer& n) {
  Integer c = n < 2 ? Integer(2) : n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Factorization factor_integer(const Integer& input) {
  if (input == 0) throw PreconditionError("factor_integer: zero");
  Integer n = abs_int(input);
  std::map<Integer, unsigned> found;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; ++p) {
    while (n % p == 0) {
      ++found[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, found);
  return {found.begin(), found.end()};
}

Factorization merge_factorizations(const Factorization& a, const Factorization& b) {
  std::map<Integer, unsigned> m(a.begin(), a.end());
  for (const auto& [p, e] : b) m[p] += e;
  return {m.begin(), m.end()};
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
  if (residues.size() != moduli.size()) throw DimensionMismatch("crt: size mismatch");
  Integer x = 0, m = 1;
  for (size_t i = 0; i < moduli.size(); ++i) {
    const Integer& mi = moduli[i];
    if (mi <= 0) throw PreconditionError("crt: moduli must be positive");
    auto [g, s, t] = xgcd(m, mi);
    if (g != 1) throw PreconditionError("crt: moduli are not pairwise coprime");
    // x + m * k = residues[i] mod mi  =>  k = (residues[i] - x) * s mod mi
    Integer k = mod_floor((residues[i] - x) * s, mi);
    x += m * k;
    m *= mi;
    x = mod_floor(x, m);
  }
  return x;
}

}  // namespace fullmod
