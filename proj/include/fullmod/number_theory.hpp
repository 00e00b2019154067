#pragma once

#include "fullmod/scalar.hpp"

#include <utility>
#include <vector>

namespace fullmod {

enum class PrimalityCertainty {
  Deterministic,  ///< fixed witness set proven sufficient below the bound
  Probable,       ///< Miller-Rabin with kProbableRounds fixed bases
};

constexpr int kProbableRounds = 25;

struct PrimalityResult {
  bool is_prime = false;
  PrimalityCertainty certainty = PrimalityCertainty::Deterministic;
};

/// Miller-Rabin with the witnesses {2,...,17}, deterministic below
/// 3.4e14; larger inputs are tested against the first 25 primes as bases.
PrimalityResult miller_rabin(const Integer& n);

inline bool is_prime(const Integer& n) { return miller_rabin(n).is_prime; }

/// Smallest prime strictly greater than n.
Integer next_prime(const Integer& n);

Integer powmod(Integer base, Integer exponent, const Integer& modulus);

using Factorization = std::vector<std::pair<Integer, unsigned>>;

/// Prime factorization of |n| (n != 0), primes ascending. Trial division
/// followed by Pollard-Brent rho.
Factorization factor_integer(const Integer& n);

Factorization merge_factorizations(const Factorization& a, const Factorization& b);

unsigned long euler_phi(unsigned long n);

/// Smallest non-negative x with x = residues[i] mod moduli[i]; moduli must
/// be pairwise coprime.
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);

}  // namespace fullmod
