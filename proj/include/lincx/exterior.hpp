#pragma once

// Exterior algebra over F^{n+1}: Pluecker coordinates, decomposability and
// contraction of alternating forms.
//
// A grade-k element is stored as one coefficient per strictly increasing
// k-tuple of {0..n}, tuples in lexicographic order. The same layout is used
// for multivectors (e_T) and for alternating forms (e*_T); the two are kept
// apart by a tag type.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lincx/errors.hpp"
#include "lincx/gf.hpp"
#include "lincx/linalg.hpp"
#include "lincx/projspace.hpp"

namespace lincx {

// Lexicographic list of the k-subsets of {0..dim-1} with a rank lookup.
class SubsetIndex {
 public:
  SubsetIndex(int dim, int k) : dim_(dim), k_(k) {
    if (dim > 32 || k < 0 || k > dim) throw DimensionMismatch("subset index out of range");
    std::vector<int> t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int x : t) mask |= 1u << x;
      rank_.emplace(mask, tuples_.size());
      tuples_.push_back(t);
      masks_.push_back(mask);
      int i = k;
      while (i > 0 && t[i - 1] == dim - k + i - 1) --i;
      if (i == 0) break;
      ++t[i - 1];
      for (int j = i; j < k; ++j) t[j] = t[j - 1] + 1;
    }
  }

  int dim() const { return dim_; }
  int k() const { return k_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<int>& tuple(std::size_t i) const { return tuples_[i]; }
  std::uint32_t mask(std::size_t i) const { return masks_[i]; }
  std::size_t rank_of_mask(std::uint32_t mask) const { return rank_.at(mask); }

  static const SubsetIndex& get(int dim, int k) {
    static std::map<std::pair<int, int>, std::unique_ptr<SubsetIndex>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, k}];
    if (!slot) slot = std::make_unique<SubsetIndex>(dim, k);
    return *slot;
  }

 private:
  int dim_, k_;
  std::vector<std::vector<int>> tuples_;
  std::vector<std::uint32_t> masks_;
  std::unordered_map<std::uint32_t, std::size_t> rank_;
};

inline std::size_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<std::size_t>(a - b + i) / static_cast<std::size_t>(i);
  return r;
}

struct MultiVectorTag {};
struct FormTag {};

template <class Tag>
class Graded {
 public:
  Graded(const Field& f, int n, int grade) : f_(&f), n_(n), grade_(grade), c_(binomial(n + 1, grade), 0) {
    if (grade < 0 || grade > n + 1) throw DimensionMismatch("grade out of range");
  }
  Graded(const Field& f, int n, int grade, Vec coeffs) : Graded(f, n, grade) {
    if (coeffs.size() != c_.size()) throw DimensionMismatch("coefficient vector has the wrong length");
    c_ = std::move(coeffs);
  }

  // Basis element e_T (or e*_T) for the increasing tuple T.
  static Graded basis(const Field& f, int n, std::span<const int> tuple) {
    Graded g(f, n, static_cast<int>(tuple.size()));
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (tuple[i] < 0 || tuple[i] > n || (i > 0 && tuple[i] <= tuple[i - 1]))
        throw DimensionMismatch("basis tuple must be strictly increasing inside 0..n");
      mask |= 1u << tuple[i];
    }
    g.c_[g.index().rank_of_mask(mask)] = 1;
    return g;
  }
  static Graded basis(const Field& f, int n, std::initializer_list<int> tuple) {
    return basis(f, n, std::span<const int>(tuple.begin(), tuple.size()));
  }

  const Field& field() const { return *f_; }
  int ambient() const { return n_; }
  int grade() const { return grade_; }
  const Vec& coeffs() const { return c_; }
  Vec& coeffs() { return c_; }
  std::size_t size() const { return c_.size(); }
  Scalar operator[](std::size_t i) const { return c_[i]; }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  const SubsetIndex& index() const { return SubsetIndex::get(n_ + 1, grade_); }

  bool is_zero() const { return lincx::is_zero(c_); }

  // Projective normalization: first nonzero coefficient becomes 1.
  Graded& normalize() {
    lincx::normalize(*f_, c_);
    return *this;
  }
  Graded normalized() const {
    Graded g = *this;
    g.normalize();
    return g;
  }

  Graded& operator+=(const Graded& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = f_->add(c_[i], o.c_[i]);
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  Graded scaled(Scalar s) const {
    Graded g = *this;
    for (auto& x : g.c_) x = f_->mul(x, s);
    return g;
  }

  friend bool operator==(const Graded& a, const Graded& b) {
    return a.n_ == b.n_ && a.grade_ == b.grade_ && a.f_->order() == b.f_->order() && a.c_ == b.c_;
  }

  void check(const Graded& o) const {
    if (!(*f_ == *o.f_)) throw MixedFields();
    if (n_ != o.n_ || grade_ != o.grade_) throw DimensionMismatch("grade or ambient mismatch");
  }

 private:
  const Field* f_;
  int n_, grade_;
  Vec c_;
};

using MultiVector = Graded<MultiVectorTag>;
using AlternatingForm = Graded<FormTag>;

// Sign of moving index k past every element of `mask` larger than k.
inline bool odd_above(std::uint32_t mask, int k) { return std::popcount(mask >> (k + 1)) & 1; }

// Wedge of the given vectors: the coefficient at T is the minor on columns T.
inline MultiVector wedge(const Field& f, int n, std::span<const Vec> vectors) {
  const int k = static_cast<int>(vectors.size());
  for (const auto& v : vectors)
    if (v.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("vector length does not match ambient");
  MultiVector out(f, n, k);
  const auto& idx = out.index();
  Matrix minor(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const auto& cols = idx.tuple(t);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) minor(r, c) = vectors[r][cols[c]];
    out[t] = determinant(f, minor);
  }
  return out;
}
inline MultiVector wedge(const Field& f, int n, std::initializer_list<Vec> vectors) {
  return wedge(f, n, std::span<const Vec>(vectors.begin(), vectors.size()));
}

// p ∧ v for a grade-k multivector p and a vector v.
inline MultiVector wedge(const MultiVector& p, std::span<const Scalar> v) {
  const Field& f = p.field();
  const int n = p.ambient();
  if (v.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("vector length does not match ambient");
  MultiVector out(f, n, p.grade() + 1);
  const auto& src = p.index();
  const auto& dst = out.index();
  for (std::size_t t = 0; t < src.size(); ++t) {
    if (p[t] == 0) continue;
    const auto mask = src.mask(t);
    for (int i = 0; i <= n; ++i) {
      if ((mask >> i) & 1 || v[i] == 0) continue;
      // e_T ∧ e_i = (-1)^{#{t in T : t > i}} e_{T+i}
      Scalar c = f.mul(p[t], v[i]);
      if (odd_above(mask, i)) c = f.neg(c);
      const auto u = dst.rank_of_mask(mask | (1u << i));
      out[u] = f.add(out[u], c);
    }
  }
  return out;
}

// Pluecker coordinates of a nonempty subspace, projectively normalized.
inline MultiVector pluecker(const Subspace& x) {
  if (x.rank() == 0) throw DimensionMismatch("the empty subspace has no Pluecker image");
  return wedge(x.field(), x.ambient(), x.rows()).normalize();
}

// The subspace whose Pluecker image is proportional to p, or nullopt when p
// is not decomposable. Decided by the annihilator {v : v ∧ p = 0}.
inline std::optional<Subspace> unpluecker(const MultiVector& p) {
  if (p.is_zero()) throw Error("zero multivector is not a projective point");
  const Field& f = p.field();
  const int n = p.ambient();
  const auto& src = p.index();
  const auto& dst = SubsetIndex::get(n + 1, p.grade() + 1);
  // Column i of the matrix is the image of e_i under v -> p ∧ v.
  Matrix m(dst.size(), static_cast<std::size_t>(n + 1));
  for (std::size_t t = 0; t < src.size(); ++t) {
    if (p[t] == 0) continue;
    const auto mask = src.mask(t);
    for (int i = 0; i <= n; ++i) {
      if ((mask >> i) & 1) continue;
      const Scalar c = odd_above(mask, i) ? f.neg(p[t]) : p[t];
      const auto u = dst.rank_of_mask(mask | (1u << i));
      m(u, i) = f.add(m(u, i), c);
    }
  }
  auto kernel = nullspace(f, std::move(m));
  if (static_cast<int>(kernel.size()) != p.grade()) return std::nullopt;
  return Subspace::span(f, n, kernel);
}

// ⟨f, p⟩ for a form and a multivector of equal degree.
inline Scalar pair(const AlternatingForm& form, const MultiVector& p) {
  if (form.grade() != p.grade() || form.ambient() != p.ambient()) throw DimensionMismatch("degree mismatch in pairing");
  if (!(form.field() == p.field())) throw MixedFields();
  return dot(form.field(), form.coeffs(), p.coeffs());
}

// The covector w -> f(p, w), extended linearly in p. Contracting e*_S by e_T
// with S \ T = {k} gives (-1)^{#{s in S : s > k}} e*_k.
inline Vec contract(const AlternatingForm& form, const MultiVector& p) {
  if (p.grade() + 1 != form.grade()) throw DimensionMismatch("contraction needs grade = degree - 1");
  if (form.ambient() != p.ambient()) throw DimensionMismatch("ambient mismatch in contraction");
  if (!(form.field() == p.field())) throw MixedFields();
  const Field& f = form.field();
  const int n = form.ambient();
  const auto& fi = form.index();
  const auto& pi = p.index();
  Vec out(static_cast<std::size_t>(n + 1), 0);
  for (std::size_t s = 0; s < fi.size(); ++s) {
    if (form[s] == 0) continue;
    const auto mask = fi.mask(s);
    for (int k : fi.tuple(s)) {
      const Scalar pt = p[pi.rank_of_mask(mask & ~(1u << k))];
      if (pt == 0) continue;
      Scalar c = f.mul(form[s], pt);
      if (odd_above(mask, k)) c = f.neg(c);
      out[k] = f.add(out[k], c);
    }
  }
  return out;
}

// Literal syntax for forms: terms "c*ijk" joined by '+', the scalar omitted
// when it is 1; tuple indices >= 10 are written "(10)". Example "2*012+134".
// The zero form is written "-".
inline std::string format_form(const AlternatingForm& form) {
  const auto& idx = form.index();
  std::string out;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (form[t] == 0) continue;
    if (!out.empty()) out.push_back('+');
    if (form[t] != 1) out += std::to_string(form[t]) + "*";
    for (int i : idx.tuple(t)) out += (i < 10) ? std::to_string(i) : "(" + std::to_string(i) + ")";
  }
  return out.empty() ? "-" : out;
}

// Parses a form literal of the given degree over PG(n,q). Repeated tuples add.
inline AlternatingForm parse_form(const Field& f, int n, int degree, std::string_view text) {
  AlternatingForm form(f, n, degree);
  if (text == "-") return form;
  const auto& idx = form.index();
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw ParseError("form literal '" + std::string(text) + "': " + why); };
  while (pos <= text.size()) {
    auto end = std::min(text.find('+', pos), text.size());
    std::string_view term = text.substr(pos, end - pos);
    if (term.empty()) fail("empty term");
    Scalar coeff = 1;
    if (auto star = term.find('*'); star != std::string_view::npos) {
      unsigned c = 0;
      if (star == 0) fail("missing coefficient");
      for (char ch : term.substr(0, star)) {
        if (ch < '0' || ch > '9') fail("bad coefficient");
        c = c * 10 + static_cast<unsigned>(ch - '0');
        if (c >= 1000) fail("coefficient too large");
      }
      if (c >= f.order()) fail("coefficient exceeds field order");
      coeff = static_cast<Scalar>(c);
      term.remove_prefix(star + 1);
    }
    std::vector<int> tuple;
    for (std::size_t i = 0; i < term.size(); ++i) {
      int v;
      if (term[i] == '(') {
        auto close = term.find(')', i);
        if (close == std::string_view::npos || close == i + 1) fail("unclosed index");
        v = 0;
        for (std::size_t j = i + 1; j < close; ++j) {
          if (term[j] < '0' || term[j] > '9') fail("bad index");
          v = v * 10 + (term[j] - '0');
        }
        i = close;
      } else if (term[i] >= '0' && term[i] <= '9') {
        v = term[i] - '0';
      } else {
        fail("bad character");
      }
      if (v > n) fail("index exceeds ambient dimension");
      if (!tuple.empty() && v <= tuple.back()) fail("indices must be strictly increasing");
      tuple.push_back(v);
    }
    if (static_cast<int>(tuple.size()) != degree) fail("term has the wrong degree");
    std::uint32_t mask = 0;
    for (int v : tuple) mask |= 1u << v;
    auto& slot = form[idx.rank_of_mask(mask)];
    slot = f.add(slot, coeff);
    pos = end + 1;
  }
  return form;
}

}  // namespace lincx
