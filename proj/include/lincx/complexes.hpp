#pragma once

// Linear complexes of h-subspaces of PG(n,q) and the polarities they define.
//
// A complex is the zero set, on the Grassmannian of h-subspaces, of a nonzero
// alternating (h+1)-form c: X belongs to K iff <c, pluecker(X)> = 0. Only the
// form is stored; member sets are recomputed on demand.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lincx/errors.hpp"
#include "lincx/exterior.hpp"
#include "lincx/projspace.hpp"
#include "lincx/tables.hpp"

namespace lincx {

// Markers for the exceptional outcomes of the polarity operations.
struct Singular {
  friend bool operator==(Singular, Singular) { return true; }
};
struct Total {
  friend bool operator==(Total, Total) { return true; }
};
struct AllMembers {
  friend bool operator==(AllMembers, AllMembers) { return true; }
};

class LinearComplex {
 public:
  // Complex of h-subspaces, h = form degree - 1. The form is normalized.
  explicit LinearComplex(AlternatingForm form) : c_(std::move(form)) {
    if (c_.is_zero()) throw Error("a linear complex needs a nonzero form");
    if (h() < 0 || h() > ambient() - 1) throw DimensionMismatch("complex needs 0 <= h <= n-1");
    c_.normalize();
  }

  static LinearComplex parse(const Field& f, int n, int h, std::string_view literal) {
    return LinearComplex(parse_form(f, n, h + 1, literal));
  }

  const Field& field() const { return c_.field(); }
  int ambient() const { return c_.ambient(); }
  int h() const { return c_.grade() - 1; }
  const AlternatingForm& form() const { return c_; }
  std::string literal() const { return format_form(c_); }

  bool contains(const Subspace& x) const {
    if (x.dim() != h() || x.ambient() != ambient()) throw DimensionMismatch("membership needs an h-subspace of the same ambient");
    if (!(x.field() == field())) throw MixedFields();
    return pair(c_, pluecker(x)) == 0;
  }
  // Membership by Pluecker coordinates (already known to be decomposable).
  bool contains_pluecker(std::span<const Scalar> p) const { return dot(field(), c_.coeffs(), p) == 0; }

  friend bool operator==(const LinearComplex& a, const LinearComplex& b) { return a.c_ == b.c_; }

 private:
  AlternatingForm c_;
};

// Membership flags of K over the canonical list of h-subspaces.
inline std::vector<bool> member_mask(const LinearComplex& k) {
  const auto& table = SubspaceTable::get(k.field(), k.ambient(), k.h());
  std::vector<bool> mask(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) mask[i] = k.contains_pluecker(table.pluecker(i));
  return mask;
}

inline std::size_t member_count(const LinearComplex& k) {
  std::size_t c = 0;
  for (bool b : member_mask(k)) c += b;
  return c;
}

struct PrimeCheck {
  bool prime = false;
  bool proper = false;
  // Index into IncidenceTable::pencils() of a pencil meeting the set in
  // neither 1 nor q+1 elements.
  std::optional<std::size_t> failing_pencil;
};

// Prime test for a set of h-subspaces given as flags over the canonical list.
inline PrimeCheck check_prime(const Field& f, int n, int h, const std::vector<bool>& in_set) {
  const auto& inc = IncidenceTable::get(f, n, h);
  if (in_set.size() != inc.members().size()) throw DimensionMismatch("membership flags do not match the subspace list");
  PrimeCheck r;
  for (bool b : in_set)
    if (!b) r.proper = true;
  const auto& pencils = inc.pencils();
  for (std::size_t i = 0; i < pencils.size(); ++i) {
    std::size_t hits = 0;
    for (auto m : pencils[i].members) hits += in_set[m];
    if (hits != 1 && hits != f.order() + 1) {
      r.failing_pencil = i;
      break;
    }
  }
  r.prime = r.proper && !r.failing_pencil;
  return r;
}

inline bool is_prime(const Field& f, int n, int h, const std::vector<bool>& in_set) {
  return check_prime(f, n, h, in_set).prime;
}

// Prime test for an explicit list of h-subspaces.
inline bool is_prime(const std::vector<Subspace>& set, const Field& f, int n, int h) {
  const auto& table = SubspaceTable::get(f, n, h);
  std::vector<bool> in_set(table.size(), false);
  for (const auto& s : set) {
    if (s.dim() != h || s.ambient() != n) throw DimensionMismatch("set element has the wrong dimension");
    in_set[table.index_of(s)] = true;
  }
  return is_prime(f, n, h, in_set);
}

// The unique complex of h-subspaces of PG(n,q) whose members are exactly the
// flagged ones, by solving <c, pluecker(X)> = 0 over the members. Throws
// InternalInconsistency if the solution is not unique up to scalars or its
// zero set differs from the flags.
inline LinearComplex complex_from_members(const Field& f, int n, int h, const std::vector<bool>& in_set) {
  const auto& table = SubspaceTable::get(f, n, h);
  Matrix m(0, table.pluecker_width());
  for (std::size_t i = 0; i < table.size(); ++i)
    if (in_set[i]) m.append_row(table.pluecker(i));
  auto sol = nullspace(f, std::move(m));
  if (sol.size() != 1)
    throw InternalInconsistency("member set determines a " + std::to_string(sol.size()) + "-dimensional space of forms");
  LinearComplex k(AlternatingForm(f, n, h + 1, std::move(sol.front())));
  for (std::size_t i = 0; i < table.size(); ++i)
    if (k.contains_pluecker(table.pluecker(i)) != in_set[i])
      throw InternalInconsistency("recovered form does not reproduce the member set");
  return k;
}

using RestrictResult = std::variant<AllMembers, LinearComplex>;

// K(U,W): the members X of K with U ⊆ X ⊆ W, read in the interval
// coordinates of [U,W] as a complex of (h-1-dim U)-subspaces.
inline RestrictResult restrict(const LinearComplex& k, const Subspace& u, const Subspace& w) {
  u.check_compatible(w);
  if (u.ambient() != k.ambient()) throw DimensionMismatch("interval lives in a different ambient");
  if (u.dim() > k.h() - 1) throw DimensionMismatch("restriction needs dim U <= h-1");
  if (w.dim() < k.h() + 1) throw DimensionMismatch("restriction needs dim W >= h+1");
  IntervalCoords ic(u, w);  // throws ContainmentError unless U ⊆ W
  const int m = ic.dim();
  const int hh = k.h() - 1 - u.dim();
  const auto& table = SubspaceTable::get(k.field(), m, hh);
  std::vector<bool> in_set(table.size());
  bool all = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    in_set[i] = k.contains(ic.from_coords(table[i]));
    all = all && in_set[i];
  }
  if (all) return AllMembers{};
  return complex_from_members(k.field(), m, hh, in_set);
}

// Covector w -> c(U, w) for the (h-1)-subspace U; zero iff U is singular.
inline Vec polar_covector(const LinearComplex& k, const Subspace& u) {
  if (u.dim() != k.h() - 1 || u.ambient() != k.ambient()) throw DimensionMismatch("polar hyperplane needs an (h-1)-subspace");
  if (k.h() < 1) throw DimensionMismatch("polarity needs h >= 1");
  auto v = contract(k.form(), pluecker(u));
  normalize(k.field(), v);
  return v;
}

using PolarValue = std::variant<Singular, Subspace>;

inline PolarValue polar_hyperplane(const LinearComplex& k, const Subspace& u) {
  const auto v = polar_covector(k, u);
  if (is_zero(v)) return Singular{};
  return hyperplane_from_covector(k.field(), v);
}

// Contraction-free polar hyperplane: the join of the members of K through U,
// Singular when that join is the whole space.
inline PolarValue polar_hyperplane_by_join(const LinearComplex& k, const Subspace& u) {
  const auto& inc = IncidenceTable::get(k.field(), k.ambient(), k.h());
  const auto& members = inc.members();
  auto acc = u;
  for (auto x : inc.star(inc.lower().index_of(u)))
    if (k.contains_pluecker(members.pluecker(x))) acc = join(acc, members[x]);
  if (acc.dim() == k.ambient()) return Singular{};
  return acc;
}

struct SingularLocus {
  std::vector<Subspace> subspaces;  // the singular (h-1)-subspaces
  Subspace kernel;                  // inside PG(C(n+1,h)-1, q)
};

inline SingularLocus singular_locus(const LinearComplex& k) {
  const int h = k.h();
  const int n = k.ambient();
  if (h < 1 || h > n - 1) throw DimensionMismatch("singular locus needs 1 <= h <= n-1");
  const Field& f = k.field();
  const auto& idx = SubsetIndex::get(n + 1, h);
  // Column t is the contraction of c by the basis multivector e_T.
  Matrix m(static_cast<std::size_t>(n + 1), idx.size());
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const auto v = contract(k.form(), MultiVector::basis(f, n, idx.tuple(t)));
    for (int i = 0; i <= n; ++i) m(i, t) = v[i];
  }
  SingularLocus out{{}, Subspace::span(f, static_cast<int>(idx.size()) - 1, nullspace(f, std::move(m)))};
  const auto& lower = SubspaceTable::get(f, n, h - 1);
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (out.kernel.contains(lower.pluecker(i))) out.subspaces.push_back(lower[i]);
  return out;
}

using PoleResult = std::variant<Total, Subspace>;

// Pole of an (h+1)-subspace V: the point P of V with X ∈ K ⇔ P ∈ X for the
// h-subspaces X of V, or Total when all of them belong to K.
inline PoleResult pole(const LinearComplex& k, const Subspace& v) {
  if (v.dim() != k.h() + 1 || v.ambient() != k.ambient()) throw DimensionMismatch("pole needs an (h+1)-subspace");
  const Field& f = k.field();
  const auto basis = v.rows();
  const std::size_t r = basis.size();
  Vec point(static_cast<std::size_t>(k.ambient() + 1), 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Vec> rest;
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) rest.push_back(basis[j]);
    Scalar g = pair(k.form(), wedge(f, k.ambient(), rest));
    if (i % 2) g = f.neg(g);
    axpy(f, g, basis[i], point);
  }
  if (is_zero(point)) return Total{};
  return Subspace::span(f, k.ambient(), {point});
}

inline std::vector<Subspace> total_subspaces(const LinearComplex& k) {
  if (k.h() > k.ambient() - 2) throw DimensionMismatch("total subspaces need h <= n-2");
  std::vector<Subspace> out;
  for (const auto& v : SubspaceTable::get(k.field(), k.ambient(), k.h() + 1).all())
    if (std::holds_alternative<Total>(pole(k, v))) out.push_back(v);
  return out;
}

using ProductResult = std::variant<AllMembers, LinearComplex>;

// K·H = {X of dim h+1 : some member Y of K has Y ⊆ X ∩ H}, taken verbatim.
inline ProductResult product(const LinearComplex& k, const Subspace& hyperplane) {
  const int n = k.ambient();
  const int h = k.h();
  if (h > n - 2) throw DimensionMismatch("product needs h <= n-2");
  if (hyperplane.dim() != n - 1 || hyperplane.ambient() != n) throw DimensionMismatch("product needs a hyperplane");
  const Field& f = k.field();
  const auto& table = SubspaceTable::get(f, n, h + 1);
  std::vector<bool> in_set(table.size());
  bool all = true;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto cut = meet(table[i], hyperplane);
    bool hit = false;
    if (cut.dim() == h) {
      hit = k.contains(cut);
    } else {
      for (const auto& y : SubspaceTable::get(f, n, h).all())
        if (cut.contains(y) && k.contains(y)) {
          hit = true;
          break;
        }
    }
    in_set[i] = hit;
    all = all && hit;
  }
  if (all) return AllMembers{};
  if (!is_prime(f, n, h + 1, in_set)) throw InternalInconsistency("product set is not a prime");
  return complex_from_members(f, n, h + 1, in_set);
}

// A partial map from k-subspaces into hyperplanes, tabulated over the
// canonical list of k-subspaces; Singular marks the exceptional set.
struct PolarMap {
  const Field* field;
  int n;
  int k;
  std::vector<PolarValue> table;
};

inline PolarMap up_polarity(const LinearComplex& c) {
  if (c.h() < 1 || c.h() > c.ambient() - 1) throw DimensionMismatch("polarity needs 1 <= h <= n-1");
  const auto& lower = SubspaceTable::get(c.field(), c.ambient(), c.h() - 1);
  PolarMap map{&c.field(), c.ambient(), c.h() - 1, {}};
  map.table.reserve(lower.size());
  for (const auto& u : lower.all()) map.table.push_back(polar_hyperplane(c, u));
  return map;
}

struct NullPolarityReport {
  bool ok = false;
  bool domain_nonempty = false;
  bool linear = false;
  bool null_property = false;
  bool reciprocity = false;
  std::string failure;
  std::optional<std::size_t> witness_pencil;   // index into the pencils of k-subspaces
  std::optional<std::size_t> witness_subspace;  // index into the k-subspaces
};

// Checks that χ is a linear mapping with non-empty domain and the null
// property, and then that reciprocity U1 ⊆ χ(U2) ⇒ U2 ⊆ χ(U1) holds on every
// pencil.
inline NullPolarityReport check_null_polarity(const PolarMap& chi) {
  const Field& f = *chi.field;
  const auto& inc = IncidenceTable::get(f, chi.n, chi.k);
  const auto& subs = inc.members();
  NullPolarityReport r;
  if (chi.table.size() != subs.size()) {
    r.failure = "table does not cover every k-subspace";
    return r;
  }
  std::vector<Vec> cov(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (const auto* h = std::get_if<Subspace>(&chi.table[i])) {
      if (h->dim() != chi.n - 1 || h->ambient() != chi.n) {
        r.failure = "table entry is not a hyperplane";
        r.witness_subspace = i;
        return r;
      }
      cov[i] = covector_of_hyperplane(*h);
      r.domain_nonempty = true;
    }
  }
  if (!r.domain_nonempty) {
    r.failure = "empty domain";
    return r;
  }
  auto inside = [&](std::size_t sub, std::size_t img) {
    if (cov[img].empty()) return true;  // singular image is the whole space
    for (std::size_t row = 0; row < subs[sub].rank(); ++row)
      if (dot(f, cov[img], subs[sub].row(row)) != 0) return false;
    return true;
  };

  const auto& pencils = inc.pencils();
  for (std::size_t p = 0; p < pencils.size(); ++p) {
    const auto& mem = pencils[p].members;
    std::size_t singular = 0;
    for (auto m : mem) singular += cov[m].empty();
    bool good = false;
    if (singular == mem.size()) {
      good = true;
    } else if (singular == 1) {
      const Vec* e = nullptr;
      good = true;
      for (auto m : mem) {
        if (cov[m].empty()) continue;
        if (!e) e = &cov[m];
        good = good && cov[m] == *e;
      }
    } else if (singular == 0) {
      good = true;
      Matrix span(0, cov[mem[0]].size());
      for (std::size_t a = 0; a < mem.size() && good; ++a) {
        span.append_row(cov[mem[a]]);
        for (std::size_t b = 0; b < a; ++b) good = good && cov[mem[a]] != cov[mem[b]];
      }
      good = good && rank(f, span) == 2;
    }
    if (!good) {
      r.failure = "pencil violates the linearity conditions";
      r.witness_pencil = p;
      return r;
    }
  }
  r.linear = true;

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!cov[i].empty() && !inside(i, i)) {
      r.failure = "null property fails";
      r.witness_subspace = i;
      return r;
    }
  }
  r.null_property = true;

  for (std::size_t p = 0; p < pencils.size(); ++p) {
    const auto& mem = pencils[p].members;
    for (auto a : mem)
      for (auto b : mem)
        if (a != b && inside(a, b) && !inside(b, a)) {
          r.failure = "reciprocity fails";
          r.witness_pencil = p;
          return r;
        }
  }
  r.reciprocity = true;
  r.ok = true;
  return r;
}

inline bool verify_null_polarity(const PolarMap& chi) { return check_null_polarity(chi).ok; }

// The unique complex K of (k+1)-subspaces with χ = ↑K: X ∈ K iff some
// k-subspace U ⊆ X has X ⊆ χ(U), a singular U counting as the whole space.
inline LinearComplex from_polarity(const PolarMap& chi) {
  const auto report = check_null_polarity(chi);
  if (!report.ok) throw InvalidPolarity(report.failure);
  const Field& f = *chi.field;
  const int h = chi.k + 1;
  if (h > chi.n - 1) throw InvalidPolarity("polarity on hyperplanes does not come from a complex");
  const auto& inc = IncidenceTable::get(f, chi.n, h);
  const auto& members = inc.members();
  std::vector<bool> in_set(members.size(), false);
  for (std::size_t u = 0; u < chi.table.size(); ++u) {
    const auto* hp = std::get_if<Subspace>(&chi.table[u]);
    for (auto x : inc.star(u))
      if (!hp || hp->contains(members[x])) in_set[x] = true;
  }
  return complex_from_members(f, chi.n, h, in_set);
}

// Projective dimension of the span of all polar hyperplanes in the dual space.
inline int image_span_dim(const LinearComplex& k) {
  if (k.h() < 1 || k.h() > k.ambient() - 1) throw DimensionMismatch("polarity needs 1 <= h <= n-1");
  const auto& lower = SubspaceTable::get(k.field(), k.ambient(), k.h() - 1);
  Matrix m(0, static_cast<std::size_t>(k.ambient() + 1));
  for (const auto& u : lower.all()) {
    const auto v = polar_covector(k, u);
    if (!is_zero(v)) m.append_row(v);
  }
  return static_cast<int>(rank(k.field(), std::move(m))) - 1;
}

}  // namespace lincx
