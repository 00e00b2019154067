#include "fullmod/lattice.hpp"

#include "fullmod/exact_linalg.hpp"

#include <sstream>

namespace fullmod {

namespace {

// Column op on (a | u): (c_i, c_j) <- (c_i, c_j) * [[p, q], [r, s]].
void combine_columns(IntMatrix& a, Index i, Index j, const Integer& p, const Integer& q,
                     const Integer& r, const Integer& s) {
  for (Index k = 0; k < a.rows(); ++k) {
    Integer x = a(k, i), y = a(k, j);
    a(k, i) = p * x + r * y;
    a(k, j) = q * x + s * y;
  }
}

// In-place column HNF of the top `rows` rows of `a`; the remaining rows
// are carried along as the transform. Returns pivot rows.
std::vector<Index> column_hnf(IntMatrix& a, Index rows) {
  std::vector<Index> pivots;
  Index col = 0;
  for (Index row = 0; row < rows && col < a.cols(); ++row) {
    for (Index j = col + 1; j < a.cols(); ++j) {
      if (a(row, j) == 0) continue;
      if (a(row, col) == 0) {
        a.col(col).swap(a.col(j));
        continue;
      }
      auto [g, s, t] = xgcd(a(row, col), a(row, j));
      Integer u = a(row, col) / g, v = a(row, j) / g;
      // new c_col = s*c_col + t*c_j, new c_j = -v*c_col + u*c_j (det 1)
      combine_columns(a, col, j, s, Integer(-v), t, u);
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.col(col) = -a.col(col).eval();
    const Integer pivot = a(row, col);
    for (Index j = 0; j < col; ++j) {
      Integer q = floor_div(a(row, j), pivot);
      if (q != 0) a.col(j) -= q * a.col(col);
    }
    pivots.push_back(row);
    ++col;
  }
  return pivots;
}

}  // namespace

std::pair<IntMatrix, IntMatrix> hermite_normal_form_with_transform(const IntMatrix& generators) {
  const Index r = generators.rows(), m = generators.cols();
  IntMatrix work(r + m, m);
  work << generators, IntMatrix::Identity(m, m);
  auto pivots = column_hnf(work, r);
  const Index k = static_cast<Index>(pivots.size());
  return {work.topLeftCorner(r, k), work.bottomRows(m)};
}

IntMatrix hermite_normal_form(const IntMatrix& generators) {
  IntMatrix work = generators;
  auto pivots = column_hnf(work, work.rows());
  return work.leftCols(static_cast<Index>(pivots.size()));
}

ZLattice::ZLattice(Index ambient_dim)
    : ambient_dim_(ambient_dim), denominator_(1), basis_(IntMatrix::Zero(ambient_dim, 0)) {}

ZLattice::ZLattice(Index ambient_dim, IntMatrix hnf_basis, Integer denominator)
    : ambient_dim_(ambient_dim), denominator_(std::move(denominator)), basis_(std::move(hnf_basis)) {
  normalize();
}

void ZLattice::normalize() {
  if (denominator_ <= 0) throw PreconditionError("lattice denominator must be positive");
  Integer g = denominator_;
  for (Index i = 0; i < basis_.rows(); ++i)
    for (Index j = 0; j < basis_.cols(); ++j) g = gcd_int(g, basis_(i, j));
  if (g != 1) {
    denominator_ /= g;
    for (Index i = 0; i < basis_.rows(); ++i)
      for (Index j = 0; j < basis_.cols(); ++j) basis_(i, j) /= g;
  }
  pivots_.clear();
  for (Index j = 0; j < basis_.cols(); ++j) {
    Index row = 0;
    while (basis_(row, j) == 0) ++row;
    pivots_.push_back(row);
  }
}

ZLattice ZLattice::from_integer_generators(const IntMatrix& generators, const Integer& denominator) {
  return ZLattice(generators.rows(), hermite_normal_form(generators), denominator);
}

ZLattice ZLattice::from_rational_generators(const RatMatrix& generators) {
  Integer d = common_denominator(generators);
  return from_integer_generators(scale_to_integer(generators, d), d);
}

RatMatrix ZLattice::rational_basis() const {
  return to_rational(basis_) / Rational(denominator_);
}

Integer ZLattice::integer_det() const {
  if (!is_full()) throw PreconditionError("integer_det: lattice is not full");
  Integer det = 1;
  for (Index j = 0; j < basis_.cols(); ++j) det *= basis_(pivots_[j], j);
  return det;
}

std::optional<IntVector> ZLattice::solve(const RatVector& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("lattice membership: dimension mismatch");
  IntVector w(ambient_dim_);
  for (Index i = 0; i < ambient_dim_; ++i) {
    Rational x = v(i) * Rational(denominator_);
    if (!is_integral(x)) return std::nullopt;
    w(i) = numerator_of(x);
  }
  IntVector coeffs(basis_.cols());
  Index next_row = 0;
  for (Index j = 0; j < basis_.cols(); ++j) {
    const Index p = pivots_[j];
    for (; next_row < p; ++next_row)
      if (w(next_row) != 0) return std::nullopt;
    if (w(p) % basis_(p, j) != 0) return std::nullopt;
    coeffs(j) = w(p) / basis_(p, j);
    if (coeffs(j) != 0) w -= coeffs(j) * basis_.col(j);
    next_row = p + 1;
  }
  for (; next_row < ambient_dim_; ++next_row)
    if (w(next_row) != 0) return std::nullopt;
  return coeffs;
}

bool ZLattice::contains(const ZLattice& o) const {
  if (o.ambient_dim_ != ambient_dim_) throw DimensionMismatch("lattice containment: dimension mismatch");
  RatMatrix gens = o.rational_basis();
  for (Index j = 0; j < gens.cols(); ++j)
    if (!contains(RatVector(gens.col(j)))) return false;
  return true;
}

ZLattice integer_kernel(const IntMatrix& a) {
  auto [h, u] = hermite_normal_form_with_transform(a);
  return ZLattice::from_integer_generators(u.rightCols(a.cols() - h.cols()));
}

ZLattice intersect(const ZLattice& a, const ZLattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: dimension mismatch");
  const Integer d = lcm_int(a.denominator(), b.denominator());
  const IntMatrix ba = a.basis() * Integer(d / a.denominator());
  const IntMatrix bb = b.basis() * Integer(d / b.denominator());
  IntMatrix stacked(a.ambient_dim(), ba.cols() + bb.cols());
  stacked << ba, -bb;
  ZLattice ker = integer_kernel(stacked);
  IntMatrix gens = ba * ker.basis().topRows(ba.cols());
  return ZLattice::from_integer_generators(gens, d);
}

ZLattice lattice_sum(const ZLattice& a, const ZLattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("lattice_sum: dimension mismatch");
  const Integer d = lcm_int(a.denominator(), b.denominator());
  IntMatrix gens(a.ambient_dim(), a.rank() + b.rank());
  gens << a.basis() * Integer(d / a.denominator()), b.basis() * Integer(d / b.denominator());
  return ZLattice::from_integer_generators(gens, d);
}

ZLattice apply_map(const RatMatrix& map, const ZLattice& l) {
  if (map.cols() != l.ambient_dim()) throw DimensionMismatch("apply_map: dimension mismatch");
  if (l.rank() == 0) return ZLattice(map.rows());
  return ZLattice::from_rational_generators(map * l.rational_basis());
}

std::string format_matrix(const IntMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += ";";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).str();
    }
  }
  return out;
}

IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  std::istringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) {
    std::vector<Integer> entries;
    std::istringstream rin(row);
    std::string e;
    while (std::getline(rin, e, ',')) entries.push_back(parse_integer(e));
    if (!rows.empty() && entries.size() != rows.front().size())
      throw ParseError("ragged matrix rows");
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  IntMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

std::string format_lattice(const ZLattice& l) {
  std::string out = "den=" + l.denominator().str() + "\n";
  if (l.rank() == 0) return out + "empty";
  return out + format_matrix(l.basis());
}

ZLattice parse_lattice(const std::string& text, Index ambient_dim) {
  std::istringstream in(text);
  std::string den_line, body;
  std::getline(in, den_line);
  std::getline(in, body);
  if (den_line.rfind("den=", 0) != 0) throw ParseError("lattice must start with a 'den=' line");
  Integer d = parse_integer(den_line.substr(4));
  if (d <= 0) throw ParseError("lattice denominator must be positive");
  if (body == "empty") return ZLattice(ambient_dim);
  IntMatrix m = parse_matrix(body);
  if (m.rows() != ambient_dim) throw ParseError("lattice basis has the wrong number of rows");
  return ZLattice::from_integer_generators(m, d);
}

}  // namespace fullmod
