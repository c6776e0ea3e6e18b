#pragma once

// Subspaces of PG(n,q) in canonical reduced row-echelon form, lattice
// operations, enumeration, pencils and interval (quotient) coordinates.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lincx/errors.hpp"
#include "lincx/gf.hpp"
#include "lincx/linalg.hpp"

namespace lincx {

// A projective subspace of PG(n,q). The basis matrix is always in reduced
// row-echelon form, so two subspaces are equal iff their matrices are.
class Subspace {
 public:
  // Span of the given vectors (all of length n+1). Zero vectors are dropped;
  // no vectors at all gives the empty subspace.
  static Subspace span(const Field& f, int n, std::span<const Vec> vectors) {
    Matrix m(0, static_cast<std::size_t>(n + 1));
    for (const auto& v : vectors) {
      if (v.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("vector length does not match ambient");
      for (Scalar x : v)
        if (x >= f.order()) throw MixedFields();
      m.append_row(v);
    }
    return Subspace(f, n, std::move(m));
  }
  static Subspace span(const Field& f, int n, std::initializer_list<Vec> vectors) {
    return span(f, n, std::span<const Vec>(vectors.begin(), vectors.size()));
  }

  static Subspace empty(const Field& f, int n) { return Subspace(f, n, Matrix(0, static_cast<std::size_t>(n + 1))); }

  static Subspace whole(const Field& f, int n) {
    Matrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) m(i, i) = 1;
    return Subspace(f, n, std::move(m));
  }

  // Accepts a matrix the caller guarantees to be in RREF already.
  static Subspace from_rref(const Field& f, int n, Matrix m, std::vector<std::size_t> pivots) {
    Subspace s;
    s.f_ = &f;
    s.n_ = n;
    s.m_ = std::move(m);
    s.pivots_ = std::move(pivots);
    return s;
  }

  const Field& field() const { return *f_; }
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(m_.rows()) - 1; }
  std::size_t rank() const { return m_.rows(); }
  const Matrix& basis() const { return m_; }
  std::span<const Scalar> row(std::size_t i) const { return m_.row(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec> rows() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < m_.rows(); ++i) out.emplace_back(m_.row(i).begin(), m_.row(i).end());
    return out;
  }

  // v minus its projection onto the pivot positions; zero iff v lies in here.
  Vec reduce(std::span<const Scalar> v) const {
    Vec x(v.begin(), v.end());
    for (std::size_t r = 0; r < m_.rows(); ++r) {
      const Scalar c = x[pivots_[r]];
      if (c != 0) axpy(*f_, f_->neg(c), m_.row(r), x);
    }
    return x;
  }

  bool contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }

  // Subspace inclusion: other ⊆ *this.
  bool contains(const Subspace& other) const {
    check_compatible(other);
    if (other.rank() > rank()) return false;
    for (std::size_t r = 0; r < other.m_.rows(); ++r)
      if (!contains(other.row(r))) return false;
    return true;
  }

  void check_compatible(const Subspace& o) const {
    if (!(*f_ == *o.f_)) throw MixedFields();
    if (n_ != o.n_) throw DimensionMismatch("ambient dimensions differ");
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.f_->order() == b.f_->order() && a.m_.rows() == b.m_.rows() && a.m_.data() == b.m_.data();
  }
  // Lexicographic order of the canonical matrices (flattened row-major),
  // lower-dimensional subspaces first.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.m_.rows() != b.m_.rows()) return a.m_.rows() < b.m_.rows();
    return a.m_.data() < b.m_.data();
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(n_ * 131 + static_cast<int>(m_.rows()));
    for (Scalar x : m_.data()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  Subspace() = default;
  Subspace(const Field& f, int n, Matrix m) : f_(&f), n_(n), m_(std::move(m)) {
    if (n < 0) throw DimensionMismatch("negative ambient dimension");
    pivots_ = rref(f, m_);
  }

  const Field* f_ = nullptr;
  int n_ = 0;
  Matrix m_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

inline Subspace join(const Subspace& u, const Subspace& w) {
  u.check_compatible(w);
  auto rows = u.rows();
  auto more = w.rows();
  rows.insert(rows.end(), more.begin(), more.end());
  return Subspace::span(u.field(), u.ambient(), rows);
}

// Vectors of the dual space vanishing on s, as a basis list.
inline std::vector<Vec> annihilator(const Subspace& s) {
  Matrix m(0, static_cast<std::size_t>(s.ambient() + 1));
  for (std::size_t r = 0; r < s.rank(); ++r) m.append_row(s.row(r));
  return nullspace(s.field(), std::move(m));
}

inline Subspace meet(const Subspace& u, const Subspace& w) {
  u.check_compatible(w);
  Matrix m(0, static_cast<std::size_t>(u.ambient() + 1));
  for (const auto& a : annihilator(u)) m.append_row(a);
  for (const auto& a : annihilator(w)) m.append_row(a);
  return Subspace::span(u.field(), u.ambient(), nullspace(u.field(), std::move(m)));
}

// Hyperplane {x : cov(x) = 0}.
inline Subspace hyperplane_from_covector(const Field& f, std::span<const Scalar> cov) {
  if (is_zero(cov)) throw Error("zero covector does not define a hyperplane");
  Matrix m(0, cov.size());
  m.append_row(cov);
  return Subspace::span(f, static_cast<int>(cov.size()) - 1, nullspace(f, std::move(m)));
}

// Normalized dual coordinates of a hyperplane.
inline Vec covector_of_hyperplane(const Subspace& h) {
  if (h.dim() != h.ambient() - 1) throw DimensionMismatch("not a hyperplane");
  auto ann = annihilator(h);
  normalize(h.field(), ann.front());
  return ann.front();
}

// Number of b-dimensional vector subspaces of F_q^a, by the product formula.
inline std::uint64_t gaussian_binomial(int a, int b, unsigned q) {
  if (b < 0 || b > a) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < b; ++i) {
    std::uint64_t t = 1, s = 1;
    for (int j = 0; j < a - i; ++j) t *= q;
    for (int j = 0; j < i + 1; ++j) s *= q;
    num *= t - 1;
    den *= s - 1;
  }
  return num / den;
}

// Every d-subspace of PG(n,q) exactly once, in lexicographic order of the
// canonical matrices.
inline std::vector<Subspace> enumerate_subspaces(const Field& f, int n, int d) {
  if (n < 0 || d < -1 || d > n) throw DimensionMismatch("subspace dimension out of range");
  const std::size_t cols = static_cast<std::size_t>(n + 1);
  const std::size_t k = static_cast<std::size_t>(d + 1);
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back(Subspace::empty(f, n));
    return out;
  }
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free cells: right of the row's pivot, outside pivot columns.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < cols; ++c)
        if (!is_pivot[c]) cells.emplace_back(r, c);

    Matrix m(k, cols);
    for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
    std::vector<Scalar> digits(cells.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < cells.size(); ++i) m(cells[i].first, cells[i].second) = digits[i];
      out.push_back(Subspace::from_rref(f, n, m, piv));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == f.order()) digits[i++] = 0;
      if (i == digits.size()) break;
    }

    // Next increasing tuple.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == cols - k + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The q+1 h-subspaces between an (h-1)-subspace and an (h+1)-subspace.
struct Pencil {
  Subspace vertex;
  Subspace carrier;
  std::vector<Subspace> members;
};

// Coordinates on the interval [U,W], which is a projective space of dimension
// dim W - dim U - 1. The complement of U in W is spanned by those rows of W's
// canonical basis whose pivot is not a pivot of U.
class IntervalCoords {
 public:
  IntervalCoords(Subspace lower, Subspace upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    lower_.check_compatible(upper_);
    if (!upper_.contains(lower_)) throw ContainmentError("interval bottom is not contained in the top");
    const auto& lp = lower_.pivots();
    for (std::size_t r = 0; r < upper_.rank(); ++r) {
      const auto p = upper_.pivots()[r];
      if (std::find(lp.begin(), lp.end(), p) != lp.end()) continue;
      complement_.emplace_back(upper_.row(r).begin(), upper_.row(r).end());
      complement_pivots_.push_back(p);
    }
  }

  const Subspace& lower() const { return lower_; }
  const Subspace& upper() const { return upper_; }
  const Field& field() const { return lower_.field(); }
  // Dimension of the interval as a projective space.
  int dim() const { return upper_.dim() - lower_.dim() - 1; }

  Vec vector_to_coords(std::span<const Scalar> x) const {
    const Vec red = lower_.reduce(x);
    Vec c(complement_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = red[complement_pivots_[i]];
    return c;
  }

  Vec vector_from_coords(std::span<const Scalar> c) const {
    Vec x(static_cast<std::size_t>(lower_.ambient() + 1), 0);
    for (std::size_t i = 0; i < c.size(); ++i) axpy(field(), c[i], complement_[i], x);
    return x;
  }

  Subspace to_coords(const Subspace& x) const {
    if (!x.contains(lower_) || !upper_.contains(x)) throw ContainmentError("subspace is outside the interval");
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < x.rank(); ++r) rows.push_back(vector_to_coords(x.row(r)));
    return Subspace::span(field(), dim(), rows);
  }

  Subspace from_coords(const Subspace& y) const {
    if (y.ambient() != dim()) throw DimensionMismatch("coordinate subspace has the wrong ambient");
    auto rows = lower_.rows();
    for (std::size_t r = 0; r < y.rank(); ++r) rows.push_back(vector_from_coords(y.row(r)));
    return Subspace::span(field(), lower_.ambient(), rows);
  }

 private:
  Subspace lower_, upper_;
  std::vector<Vec> complement_;
  std::vector<std::size_t> complement_pivots_;
};

inline IntervalCoords interval_coords(const Subspace& u, const Subspace& w) { return IntervalCoords(u, w); }

inline Pencil pencil(const Subspace& vertex, const Subspace& carrier) {
  vertex.check_compatible(carrier);
  if (!carrier.contains(vertex)) throw ContainmentError("pencil vertex is not contained in the carrier");
  if (carrier.dim() != vertex.dim() + 2) throw DimensionMismatch("pencil carrier must have dimension vertex + 2");
  IntervalCoords ic(vertex, carrier);
  Pencil p{vertex, carrier, {}};
  for (const auto& pt : enumerate_subspaces(vertex.field(), 1, 0)) p.members.push_back(ic.from_coords(pt));
  return p;
}

// Textual syntax: rows separated by ';', one hex digit per scalar index, e.g.
// "1000;0100". The empty subspace is written "-".
inline std::string format_vector(std::span<const Scalar> v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (Scalar x : v) s.push_back(digits[x]);
  return s;
}

inline std::string format_subspace(const Subspace& s) {
  if (s.rank() == 0) return "-";
  std::string out;
  for (std::size_t r = 0; r < s.rank(); ++r) {
    if (r) out.push_back(';');
    out += format_vector(s.row(r));
  }
  return out;
}

inline Vec parse_vector(const Field& f, std::string_view text) {
  Vec v;
  for (char ch : text) {
    unsigned d;
    if (ch >= '0' && ch <= '9')
      d = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      d = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F')
      d = static_cast<unsigned>(ch - 'A' + 10);
    else
      throw ParseError(std::string("bad digit '") + ch + "' in vector literal");
    if (d >= f.order()) throw ParseError("digit exceeds field order in vector literal");
    v.push_back(static_cast<Scalar>(d));
  }
  if (v.empty()) throw ParseError("empty vector literal");
  return v;
}

// Parses the subspace syntax. `n` is the expected ambient dimension, or -1 to
// infer it from the row length (not possible for "-").
inline Subspace parse_subspace(const Field& f, std::string_view text, int n = -1) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty() || text == "-") {
    if (n < 0) throw ParseError("cannot infer the ambient of the empty subspace");
    return Subspace::empty(f, n);
  }
  std::vector<Vec> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    rows.push_back(parse_vector(f, text.substr(start, end - start)));
    start = end + 1;
  }
  const int len = static_cast<int>(rows.front().size()) - 1;
  if (n >= 0 && len != n) throw ParseError("subspace literal has the wrong vector length");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) - 1 != len) throw ParseError("rows of different lengths in subspace literal");
  return Subspace::span(f, len, rows);
}

}  // namespace lincx

template <>
struct std::hash<lincx::Subspace> {
  std::size_t operator()(const lincx::Subspace& s) const { return s.hash(); }
};
