#pragma once

// Line spreads of subspaces: the set F_H of lines with polar hyperplane H,
// and the spread / geometric / linear predicates.

#include <set>
#include <unordered_set>
#include <vector>

#include "lincx/complexes.hpp"
#include "lincx/errors.hpp"
#include "lincx/exterior.hpp"
#include "lincx/projspace.hpp"
#include "lincx/tables.hpp"

namespace lincx {

// All points of a subspace, as 0-subspaces.
inline std::vector<Subspace> points_of(const Subspace& s) {
  std::vector<Subspace> out;
  if (s.rank() == 0) return out;
  IntervalCoords ic(Subspace::empty(s.field(), s.ambient()), s);
  for (const auto& pt : SubspaceTable::get(s.field(), s.dim(), 0).all()) out.push_back(ic.from_coords(pt));
  return out;
}

// Disjoint lines covering every point of `carrier`. Throws if some line is
// not contained in the carrier.
inline bool is_spread(const std::vector<Subspace>& lines, const Subspace& carrier) {
  std::unordered_set<Subspace, SubspaceHash> seen;
  for (const auto& l : lines) {
    carrier.check_compatible(l);
    if (l.dim() != 1) throw DimensionMismatch("spread element is not a line");
    if (!carrier.contains(l)) throw ContainmentError("spread line " + format_subspace(l) + " is not in the carrier");
    for (auto& p : points_of(l))
      if (!seen.insert(std::move(p)).second) return false;
  }
  return seen.size() == gaussian_binomial(carrier.dim() + 1, 1, carrier.field().order());
}

class LineSpread {
 public:
  // Validates the spread property; throws Error when it fails.
  LineSpread(Subspace carrier, std::vector<Subspace> lines) : carrier_(std::move(carrier)), lines_(std::move(lines)) {
    if (!is_spread(lines_, carrier_)) throw Error("line set is not a spread of " + format_subspace(carrier_));
  }

  const Subspace& carrier() const { return carrier_; }
  const std::vector<Subspace>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }

 private:
  Subspace carrier_;
  std::vector<Subspace> lines_;
};

// Every pair of spread lines spans a solid whose spread lines cover it.
inline bool is_geometric(const LineSpread& spread) {
  const auto& lines = spread.lines();
  std::unordered_set<Subspace, SubspaceHash> checked;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto solid = join(lines[i], lines[j]);
      if (!checked.insert(solid).second) continue;
      std::vector<Subspace> inside;
      for (const auto& l : lines)
        if (solid.contains(l)) inside.push_back(l);
      if (!is_spread(inside, solid)) return false;
    }
  }
  return true;
}

// Dimension M of the Pluecker ambient PG(M,q) of the lines of PG(n,q).
inline int line_pluecker_ambient(int n) { return (n * n + n - 2) / 2; }

struct LinearityResult {
  bool linear = false;
  int span_dim = -1;  // projective dimension of the span of the Pluecker images
};

// Linear iff the lines of the carrier whose Pluecker image lies in the span S
// of the spread's images are exactly the spread lines.
inline LinearityResult is_linear(const LineSpread& spread) {
  const auto& carrier = spread.carrier();
  const Field& f = carrier.field();
  const int n = carrier.ambient();
  std::vector<Vec> images;
  for (const auto& l : spread.lines()) images.push_back(pluecker(l).coeffs());
  const auto s = Subspace::span(f, line_pluecker_ambient(n), images);
  std::unordered_set<Subspace, SubspaceHash> in_spread(spread.lines().begin(), spread.lines().end());
  LinearityResult r{true, s.dim()};
  const auto& lines = SubspaceTable::get(f, n, 1);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!carrier.contains(lines[i]) || !s.contains(lines.pluecker(i))) continue;
    if (!in_spread.count(lines[i])) {
      r.linear = false;
      break;
    }
  }
  return r;
}

struct SpreadFromComplex {
  std::vector<Subspace> lines;  // F_H
  bool is_spread = false;
};

// F_H: the lines whose polar hyperplane with respect to the complex of planes
// K is H. In strict mode K must have no singular line and the result is
// checked to be a spread of H.
inline SpreadFromComplex spread_from_complex(const LinearComplex& k, const Subspace& hyperplane, bool strict) {
  if (k.h() != 2) throw DimensionMismatch("F_H needs a complex of planes");
  if (hyperplane.dim() != k.ambient() - 1 || hyperplane.ambient() != k.ambient())
    throw DimensionMismatch("F_H needs a hyperplane");
  if (strict && !singular_locus(k).subspaces.empty()) throw NotSingularFree("complex " + k.literal() + " has singular lines");
  const auto target = covector_of_hyperplane(hyperplane);
  SpreadFromComplex out;
  for (const auto& l : SubspaceTable::get(k.field(), k.ambient(), 1).all())
    if (polar_covector(k, l) == target) out.lines.push_back(l);
  out.is_spread = is_spread(out.lines, hyperplane);
  if (strict) {
    if (k.ambient() % 2 != 0) throw InternalInconsistency("singular-free complex of planes in odd dimension");
    if (!out.is_spread) throw InternalInconsistency("F_H of a singular-free complex is not a spread");
  }
  return out;
}

// The Desarguesian spread of PG(2m-1,q): points of PG(m-1,q^2) read as
// F_q-lines through a fixed F_q-basis {1, x} of GF(q^2).
inline LineSpread field_reduction_spread(int m, unsigned q) {
  if (m < 2 || m > 3) throw Error("field reduction spread needs m in {2,3}");
  if (q != 2 && q != 3) throw Error("field reduction spread needs q in {2,3}");
  const Field& base = Field::get(q);
  const Field& ext = Field::get(q * q);
  const int n = 2 * m - 1;
  const Scalar x = static_cast<Scalar>(q);  // index of the generator x
  auto expand = [&](const Vec& a) {
    Vec v;
    for (Scalar c : a) {
      v.push_back(static_cast<Scalar>(c % q));
      v.push_back(static_cast<Scalar>(c / q));
    }
    return v;
  };
  std::vector<Subspace> lines;
  for (const auto& pt : SubspaceTable::get(ext, m - 1, 0).all()) {
    Vec a(pt.row(0).begin(), pt.row(0).end());
    Vec xa = a;
    for (auto& c : xa) c = ext.mul(c, x);
    lines.push_back(Subspace::span(base, n, {expand(a), expand(xa)}));
  }
  return LineSpread(Subspace::whole(base, n), std::move(lines));
}

}  // namespace lincx
