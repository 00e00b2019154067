#include "fullmod/polynomial.hpp"

#include "fullmod/exact_linalg.hpp"
#include "fullmod/number_theory.hpp"

#include <algorithm>
#include <numeric>

namespace fullmod {

std::tuple<RatPoly, RatPoly, RatPoly> xgcd(const RatPoly& a, const RatPoly& b) {
  RatPoly old_r = a, r = b;
  RatPoly old_s = RatPoly::constant(Rational(1)), s;
  RatPoly old_t, t = RatPoly::constant(Rational(1));
  while (!r.is_zero()) {
    auto [q, rem] = old_r.divmod(r);
    old_r = std::exchange(r, rem);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r.is_zero()) return {old_r, old_s, old_t};
  Rational inv = Rational(1) / old_r.leading();
  return {inv * old_r, inv * old_s, inv * old_t};
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return make_monic(p);
  RatPoly g = gcd(p, p.derivative());
  return make_monic(p.divmod(g).first);
}

bool has_integer_coefficients(const RatPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const Rational& c) { return is_integral(c); });
}

IntPoly to_integer(const RatPoly& p) {
  std::vector<Integer> c;
  for (const auto& x : p.coeffs()) {
    if (!is_integral(x)) throw Error("to_integer: non-integral coefficient");
    c.push_back(numerator_of(x));
  }
  return IntPoly(std::move(c));
}

namespace {

// Signed divisors of a nonzero integer.
std::vector<Integer> signed_divisors(const Integer& n) {
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factor_integer(n)) {
    const size_t count = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  const size_t count = divs.size();
  for (size_t i = 0; i < count; ++i) divs.push_back(-divs[i]);
  return divs;
}

Integer binomial(unsigned n, unsigned k) {
  Integer b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Monic polynomial of degree d = points.size() taking values `values`.
RatPoly interpolate_monic(const std::vector<Integer>& points,
                          const std::vector<Integer>& values) {
  RatPoly vanishing = RatPoly::constant(Rational(1));
  for (const auto& x : points)
    vanishing = vanishing * RatPoly(std::vector<Rational>{Rational(-x), Rational(1)});
  RatPoly h;
  for (size_t i = 0; i < points.size(); ++i) {
    RatPoly basis = RatPoly::constant(Rational(1));
    Rational denom = 1;
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * RatPoly(std::vector<Rational>{Rational(-points[j]), Rational(1)});
      denom *= Rational(points[i] - points[j]);
    }
    h += (Rational(values[i]) / denom) * basis;
  }
  return vanishing + h;
}

}  // namespace

bool is_irreducible(const IntPoly& f) {
  const int r = f.degree();
  if (r < 1) return false;
  if (f.leading() != 1) throw PreconditionError("is_irreducible: polynomial must be monic");
  if (r == 1) return true;

  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;

  // Candidate evaluation points ordered by the number of divisors of f(x).
  std::vector<std::pair<size_t, Integer>> ranked;
  for (long x = -3L * r - 2; x <= 3L * r + 2; ++x) {
    Integer v = f(Integer(x));
    if (v == 0) return false;
    ranked.emplace_back(signed_divisors(v).size(), Integer(x));
  }
  std::sort(ranked.begin(), ranked.end());

  for (int d = 1; d <= r / 2; ++d) {
    std::vector<Integer> points;
    std::vector<std::vector<Integer>> divisor_sets;
    for (int i = 0; i < d; ++i) {
      points.push_back(ranked[static_cast<size_t>(i)].second);
      divisor_sets.push_back(signed_divisors(f(points.back())));
    }
    std::vector<size_t> idx(static_cast<size_t>(d), 0);
    std::vector<Integer> values(static_cast<size_t>(d));
    while (true) {
      for (int i = 0; i < d; ++i) values[i] = divisor_sets[i][idx[i]];
      RatPoly g = interpolate_monic(points, values);
      if (has_integer_coefficients(g)) {
        bool within_bound = true;
        for (int j = 0; j <= d && within_bound; ++j) {
          Integer b = binomial(static_cast<unsigned>(d), static_cast<unsigned>(j));
          Integer gj = numerator_of(g[j]);
          within_bound = gj * gj <= b * b * norm2;
        }
        if (within_bound && (to_rational(f) % g).is_zero()) return false;
      }
      int pos = 0;
      while (pos < d && ++idx[pos] == divisor_sets[pos].size()) idx[pos++] = 0;
      if (pos == d) break;
    }
  }
  return true;
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return Integer(0);
  if (m + n == 0) return Integer(1);
  IntMatrix s = IntMatrix::Zero(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(i, i + k) = f[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s(n + i, i + k) = g[n - k];
  return determinant(s);
}

Integer discriminant(const IntPoly& f) {
  const int r = f.degree();
  Integer res = resultant(f, f.derivative());
  if ((r * (r - 1) / 2) % 2 == 1) res = -res;
  return res / f.leading();
}

int count_real_roots_above(const RatPoly& p, const Rational& a) {
  std::vector<RatPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    RatPoly rem = chain[chain.size() - 2] % chain.back();
    chain.push_back(-rem);
  }
  chain.pop_back();
  auto variations = [](const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  std::vector<int> at_a, at_inf;
  for (const auto& q : chain) {
    Rational v = q(a);
    at_a.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
    Rational lead = q.leading();
    at_inf.push_back(lead > 0 ? 1 : (lead < 0 ? -1 : 0));
  }
  return variations(at_a) - variations(at_inf);
}

std::string to_string(const IntPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Integer c = p[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    Integer a = abs_int(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (a != 1 || k == 0) out += a.str();
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace fullmod
