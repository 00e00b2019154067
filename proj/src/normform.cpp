#include "fullmod/normform.hpp"

#include "fullmod/exact_linalg.hpp"
#include "fullmod/number_theory.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace fullmod {

namespace {

using RatMultiPoly = std::map<std::vector<int>, Rational>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_multipoly(const MultiPoly& p, const std::vector<std::string>& vars) {
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [exps, coef] = *it;
    if (coef == 0) continue;
    Integer mag = abs_int(coef);
    out += out.empty() ? (coef < 0 ? "-" : "") : (coef < 0 ? " - " : " + ");
    std::string mono;
    for (size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.at(k);
      if (exps[k] > 1) mono += "^" + std::to_string(exps[k]);
    }
    if (mono.empty())
      out += mag.str();
    else
      out += (mag == 1 ? "" : mag.str() + "*") + mono;
  }
  return out.empty() ? "0" : out;
}

Integer evaluate(const MultiPoly& p, const std::vector<Integer>& x) {
  Integer total = 0;
  for (const auto& [exps, coef] : p) {
    if (exps.size() != x.size()) throw DimensionMismatch("evaluate: wrong number of variables");
    Integer term = coef;
    for (size_t k = 0; k < exps.size(); ++k) term *= pow_int(x[k], static_cast<unsigned long>(exps[k]));
    total += term;
  }
  return total;
}

MultiPoly expand(const Rational& scale, const std::vector<FieldElement>& coeffs) {
  if (scale == 0) throw PreconditionError("norm form: scale must be non-zero");
  if (coeffs.size() < 2) throw PreconditionError("norm form: need at least two coefficients");
  const int n = static_cast<int>(coeffs.size());
  const int r = coeffs.front().field()->degree();
  if (r > 16) throw PreconditionError("norm form: degree too large for expansion");
  std::vector<RatMatrix> reps;
  for (const auto& a : coeffs) {
    require_same_field(coeffs.front(), a);
    reps.push_back(a.regular_rep());
  }
  // Rows are placed in order; state = set of columns used so far.
  std::map<unsigned, RatMultiPoly> layer{{0U, RatMultiPoly{{std::vector<int>(static_cast<size_t>(n), 0), scale}}}};
  for (int row = 0; row < r; ++row) {
    std::map<unsigned, RatMultiPoly> next;
    for (const auto& [used, poly] : layer) {
      for (int col = 0; col < r; ++col) {
        if (used >> col & 1U) continue;
        const int above = std::popcount(used >> (col + 1));
        RatMultiPoly& dst = next[used | 1U << col];
        for (const auto& [exps, coef] : poly) {
          for (int j = 0; j < n; ++j) {
            const Rational& e = reps[static_cast<size_t>(j)](row, col);
            if (e == 0) continue;
            std::vector<int> ex = exps;
            ++ex[static_cast<size_t>(j)];
            Rational add = coef * e;
            dst[ex] += above % 2 ? Rational(-add) : add;
          }
        }
      }
    }
    layer = std::move(next);
  }
  MultiPoly out;
  for (const auto& [exps, coef] : layer.begin()->second) {
    if (coef == 0) continue;
    if (!is_integral(coef)) throw PreconditionError("norm form: expansion has non-integral coefficient " + to_string(coef));
    out[exps] = numerator_of(coef);
  }
  return out;
}

NormForm::NormForm(Rational scale, std::vector<FieldElement> coeffs) : scale_(std::move(scale)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw PreconditionError("norm form: need at least two coefficients");
  const Index r = field()->degree();
  RatMatrix m(r, static_cast<Index>(coeffs_.size()));
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    require_same_field(coeffs_.front(), coeffs_[j]);
    m.col(static_cast<Index>(j)) = coeffs_[j].coords();
  }
  if (rank(m) != static_cast<Index>(coeffs_.size()))
    throw PreconditionError("norm form: coefficients are not linearly independent over Q");
  expanded_ = expand(scale_, coeffs_);
}

FieldElement NormForm::linear_form(const std::vector<Integer>& x) const {
  if (x.size() != coeffs_.size()) throw DimensionMismatch("norm form: wrong number of variables");
  FieldElement out = FieldElement::zero(field());
  for (size_t j = 0; j < x.size(); ++j) out = out + coeffs_[j] * Rational(x[j]);
  return out;
}

Rational NormForm::evaluate(const std::vector<Integer>& x) const { return Rational(fullmod::evaluate(expanded_, x)); }

Rational NormForm::evaluate_by_norm(const std::vector<Integer>& x) const { return scale_ * linear_form(x).norm(); }

// ---------------------------------------------------------------------------

namespace {

template <class T>
T horner(const std::vector<T>& c, long t) {
  T v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * T(t) + c[i];
  return v;
}

template <class T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

template <class T>
std::vector<T> derivative_of(const std::vector<T>& c) {
  std::vector<T> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * T(static_cast<long>(i)));
  return d;
}

template <class T>
int degree_of(const std::vector<T>& c) {
  for (size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return static_cast<int>(i);
  return -1;
}

// Integer intervals covering [lo, hi] on each of which c is monotone as a
// real function.
template <class T>
std::vector<std::pair<long, long>> monotone_pieces(const std::vector<T>& c, long lo, long hi) {
  if (degree_of(c) <= 1) return {{lo, hi}};
  const std::vector<T> d = derivative_of(c);
  std::vector<std::pair<long, long>> out;
  for (auto [a, b] : monotone_pieces(d, lo, hi)) {
    const int sa = sign_of(horner(d, a)), sb = sign_of(horner(d, b));
    if (sa * sb < 0) {
      long l = a, h = b;  // sign(d(l)) == sa, sign(d(h)) != sa
      while (h - l > 1) {
        long mid = l + (h - l) / 2;
        (sign_of(horner(d, mid)) == sa ? l : h) = mid;
      }
      out.emplace_back(a, l);
      out.emplace_back(l + 1, b);
    } else {
      out.emplace_back(a, b);
    }
  }
  return out;
}

template <class T>
void fiber_roots(const std::vector<T>& c, const T& target, long bound, std::vector<long>& roots) {
  std::vector<T> p = c;
  p[0] -= target;
  if (degree_of(p) < 0) {
    for (long t = -bound; t <= bound; ++t) roots.push_back(t);
    return;
  }
  if (degree_of(p) == 0) return;
  for (auto [a, b] : monotone_pieces(p, -bound, bound)) {
    T fa = horner(p, a), fb = horner(p, b);
    if (fa == 0) roots.push_back(a);
    if (fb == 0) roots.push_back(b);
    if (sign_of(fa) * sign_of(fb) >= 0) continue;
    long l = a, h = b;  // sign(p(l)) == sign(fa), sign(p(h)) == sign(fb)
    const int sa = sign_of(fa);
    while (h - l > 1) {
      long mid = l + (h - l) / 2;
      T v = horner(p, mid);
      if (v == 0) {
        roots.push_back(mid);
        break;
      }
      (sign_of(v) == sa ? l : h) = mid;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
}

__int128 to_i128(const Integer& v) {
  __int128 out = 0;
  const std::string s = abs_int(v).str();
  for (char ch : s) out = out * 10 + (ch - '0');
  return v < 0 ? -out : out;
}

template <class T>
T convert(const Integer& v) {
  if constexpr (std::is_same_v<T, Integer>)
    return v;
  else
    return to_i128(v);
}

struct Term {
  int last;                 // exponent of the fiber variable
  std::vector<int> others;  // exponents of x_1..x_{n-1}
  Integer coef;
};

template <class T>
void solve_shard(const std::vector<Term>& terms, int n, int r, const Integer& target, long bound, unsigned shard,
                 unsigned shards, std::vector<Solution>& out) {
  const int free = n - 1;
  const T tgt = convert<T>(target);
  std::vector<T> coefs;
  for (const auto& t : terms) coefs.push_back(convert<T>(t.coef));
  std::vector<long> x(static_cast<size_t>(free), -bound);
  std::vector<std::vector<T>> powers(static_cast<size_t>(free), std::vector<T>(static_cast<size_t>(r) + 1));
  std::vector<long> roots;
  std::vector<T> fiber(static_cast<size_t>(r) + 1);
  while (true) {
    if (static_cast<unsigned long>(x[0] + bound) % shards == shard) {
      for (int k = 0; k < free; ++k) {
        powers[k][0] = 1;
        for (int e = 1; e <= r; ++e) powers[k][e] = powers[k][e - 1] * T(x[k]);
      }
      std::fill(fiber.begin(), fiber.end(), T(0));
      for (size_t i = 0; i < terms.size(); ++i) {
        T v = coefs[i];
        for (int k = 0; k < free; ++k) v *= powers[k][terms[i].others[k]];
        fiber[static_cast<size_t>(terms[i].last)] += v;
      }
      roots.clear();
      fiber_roots(fiber, tgt, bound, roots);
      const bool rest_zero = std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
      for (long t : roots) {
        if (rest_zero && t == 0) continue;
        Solution s;
        for (long v : x) s.emplace_back(v);
        s.emplace_back(t);
        out.push_back(std::move(s));
      }
    }
    int k = free - 1;
    while (k >= 0 && x[k] == bound) x[k--] = -bound;
    if (k < 0) break;
    ++x[k];
  }
}

}  // namespace

std::vector<Solution> solve_box(const NormForm& f, const Rational& m, long bound, unsigned threads) {
  if (bound < 0) throw PreconditionError("solve_box: negative bound");
  if (!is_integral(m)) return {};
  const Integer target = numerator_of(m);
  const int n = f.num_vars();
  int r = 0;
  std::vector<Term> terms;
  Integer size_bound = 0;
  for (const auto& [exps, coef] : f.expanded()) {
    Term t{exps.back(), std::vector<int>(exps.begin(), exps.end() - 1), coef};
    r = std::max(r, std::accumulate(exps.begin(), exps.end(), 0));
    terms.push_back(t);
    size_bound += abs_int(coef);
  }
  size_bound = (size_bound + abs_int(target)) * pow_int(Integer(bound) + 1, static_cast<unsigned long>(r)) *
               factorial(static_cast<unsigned>(r));
  const bool fast = size_bound < pow_int(Integer(2), 120);
  threads = std::max(1U, threads);
  std::vector<std::vector<Solution>> parts(threads);
  auto work = [&](unsigned shard) {
    if (fast)
      solve_shard<__int128>(terms, n, r, target, bound, shard, threads, parts[shard]);
    else
      solve_shard<Integer>(terms, n, r, target, bound, shard, threads, parts[shard]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < threads; ++s) pool.emplace_back(work, s);
    for (auto& t : pool) t.join();
  }
  std::vector<Solution> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Family> group_families(const std::vector<Solution>& solutions, const NormForm& f, const ZModule& module) {
  if (!module.is_full()) throw NotFullModule();
  const Order ring = multiplier_ring(module);
  std::vector<Solution> sorted = solutions;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Family> families;
  std::vector<FieldElement> reps;
  for (const auto& s : sorted) {
    FieldElement v = f.linear_form(s);
    if (v.is_zero()) throw PreconditionError("group_families: zero solution");
    bool placed = false;
    for (size_t i = 0; i < families.size() && !placed; ++i) {
      if (associates(v, reps[i], ring)) {
        families[i].push_back(s);
        placed = true;
      }
    }
    if (!placed) {
      families.push_back({s});
      reps.push_back(v);
    }
  }
  return families;
}

NormForm quadratic_norm_form(const Integer& a, const Integer& b, const Integer& c) {
  if (a == 0) throw PreconditionError("quadratic form: a must be non-zero");
  const Integer disc = b * b - 4 * a * c;
  if (disc >= 0) {
    Integer s = mp::sqrt(disc);
    if (s * s == disc) throw PreconditionError("quadratic form is reducible (square discriminant)");
  }
  FieldPtr field = NumberField::create(IntPoly(std::vector<Integer>{a * c, b, Integer(1)}));
  FieldElement alpha2 = FieldElement::generator(field) * Rational(-1, a);
  return NormForm(Rational(a), {FieldElement::one(field), alpha2});
}

bool quad_one_family_predicate(const Integer& a, const Integer& b, const Integer& c, int m, long box) {
  if (m != 1 && m != -1) throw PreconditionError("quad predicate: m must be 1 or -1");
  NormForm f = quadratic_norm_form(a, b, c);
  auto families = group_families(solve_box(f, Rational(m), box), f, f.module());
  const Integer disc = b * b - 4 * a * c;
  int pairs = 0;
  const Integer big_a = 1;
  for (Integer big_b = -big_a; big_b < big_a; ++big_b)
    if (mod_floor(big_b * big_b - disc, 4 * big_a) == 0) ++pairs;
  return families.size() <= 1 && pairs <= 1;
}

int ratio_field_degree(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3) {
  require_same_field(a1, a2);
  require_same_field(a1, a3);
  if (a1.is_zero() || a2.is_zero() || a3.is_zero()) throw PreconditionError("ratio_field_degree: zero coefficient");
  const Index r = a1.field()->degree();
  RatMatrix m(r, 3);
  m << a1.coords(), a2.coords(), a3.coords();
  if (rank(m) != 3) throw PreconditionError("ratio_field_degree: coefficients are not linearly independent over Q");
  return static_cast<int>(q_algebra_basis(a1.field(), {a2 / a1, a3 / a1}).size());
}

PartitionFamily partition_matrices(const Integer& p, int n) {
  if (!is_prime(p)) throw PreconditionError("partition_matrices: p must be prime");
  if (n < 2) throw PreconditionError("partition_matrices: n must be at least 2");
  if (p > 100000) throw PreconditionError("partition_matrices: p too large");
  PartitionFamily fam{p, n, {}, {}};
  const long pl = static_cast<long>(p);
  for (long j = 0; j <= pl; ++j) {
    IntMatrix a(2, 2);
    if (j == 0)
      a << p, 0, 0, 1;
    else
      a << 0, -1, p, Integer(-j);
    IntMatrix b = IntMatrix::Identity(n, n);
    b.topLeftCorner(2, 2) = a;
    fam.a.push_back(a);
    fam.b.push_back(b);
  }
  return fam;
}

bool verify_partition(const PartitionFamily& fam, long box) {
  std::vector<ZLattice> lattices;
  for (const auto& b : fam.b) lattices.push_back(ZLattice::from_integer_generators(b));
  std::vector<long> x(static_cast<size_t>(fam.n), -box);
  while (true) {
    RatVector v(fam.n);
    for (int i = 0; i < fam.n; ++i) v(i) = x[static_cast<size_t>(i)];
    if (std::none_of(lattices.begin(), lattices.end(), [&](const ZLattice& l) { return l.contains(v); })) return false;
    int k = fam.n - 1;
    while (k >= 0 && x[static_cast<size_t>(k)] == box) x[static_cast<size_t>(k--)] = -box;
    if (k < 0) return true;
    ++x[static_cast<size_t>(k)];
  }
}

NormForm parse_form(const FieldPtr& field, const std::string& text) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t bar = text.find('|', pos);
    parts.push_back(trim(text.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos)));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  if (parts.size() < 3) throw ParseError("form must look like 'a | alpha_1 | alpha_2 | ...'");
  std::vector<FieldElement> coeffs;
  for (size_t i = 1; i < parts.size(); ++i) coeffs.push_back(parse_element(field, parts[i]));
  return NormForm(parse_rational(parts[0]), coeffs);
}

std::string format_form(const NormForm& f) {
  std::string out = to_string(f.scale());
  for (const auto& a : f.coeffs()) out += " | " + format_element(a);
  return out;
}

}  // namespace fullmod
