#pragma once

// Line partitions of PG(n,q): one line spread per hyperplane, together
// covering every line exactly once. π_Ω sends a line to the hyperplane of
// its class.

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lincx/complexes.hpp"
#include "lincx/errors.hpp"
#include "lincx/spreads.hpp"
#include "lincx/tables.hpp"

namespace lincx {

struct PartitionClass {
  Subspace hyperplane;
  std::vector<Subspace> lines;
};

class LinePartition {
 public:
  LinePartition(const Field& f, int n, std::vector<PartitionClass> classes)
      : f_(&f), n_(n), classes_(std::move(classes)) {
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (const auto& l : classes_[c].lines) owner_.emplace(l, c);
  }

  const Field& field() const { return *f_; }
  int ambient() const { return n_; }
  const std::vector<PartitionClass>& classes() const { return classes_; }

  // Class index of a line, if any class lists it.
  std::optional<std::size_t> owner(const Subspace& line) const {
    auto it = owner_.find(line);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

 private:
  const Field* f_;
  int n_;
  std::vector<PartitionClass> classes_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> owner_;
};

struct PartitionCheck {
  bool valid = false;
  std::string reason;
  std::string witness;  // offending hyperplane or line, in subspace syntax
};

// Checks every partition invariant. A class line outside its key hyperplane
// is a malformed association and throws ContainmentError.
inline PartitionCheck check_partition(const LinePartition& omega) {
  const Field& f = omega.field();
  const int n = omega.ambient();
  PartitionCheck r;
  for (const auto& cls : omega.classes()) {
    if (cls.hyperplane.ambient() != n || cls.hyperplane.dim() != n - 1)
      throw DimensionMismatch("partition key " + format_subspace(cls.hyperplane) + " is not a hyperplane");
    for (const auto& l : cls.lines) {
      if (l.ambient() != n || l.dim() != 1) throw DimensionMismatch("partition member " + format_subspace(l) + " is not a line");
      if (!cls.hyperplane.contains(l))
        throw ContainmentError("line " + format_subspace(l) + " is not contained in its key hyperplane " +
                               format_subspace(cls.hyperplane));
    }
  }
  const auto& hyperplanes = SubspaceTable::get(f, n, n - 1);
  const auto& lines = SubspaceTable::get(f, n, 1);
  const unsigned q = f.order();
  const auto points_per_hyperplane = gaussian_binomial(n, 1, q);
  if (hyperplanes.size() * points_per_hyperplane / (q + 1) != lines.size()) {
    r.reason = "counting identity fails: PG(n,q) admits no line partition";
    return r;
  }

  std::vector<bool> key_seen(hyperplanes.size(), false);
  for (const auto& cls : omega.classes()) {
    const auto k = hyperplanes.index_of(cls.hyperplane);
    if (key_seen[k]) {
      r.reason = "hyperplane carries more than one class";
      r.witness = format_subspace(cls.hyperplane);
      return r;
    }
    key_seen[k] = true;
  }
  for (std::size_t k = 0; k < hyperplanes.size(); ++k)
    if (!key_seen[k]) {
      r.reason = "hyperplane without a class";
      r.witness = format_subspace(hyperplanes[k]);
      return r;
    }

  std::vector<int> uses(lines.size(), 0);
  for (const auto& cls : omega.classes()) {
    if (!is_spread(cls.lines, cls.hyperplane)) {
      r.reason = "class is not a line spread of its hyperplane";
      r.witness = format_subspace(cls.hyperplane);
      return r;
    }
    for (const auto& l : cls.lines) ++uses[lines.index_of(l)];
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (uses[i] != 1) {
      r.reason = uses[i] == 0 ? "line not covered" : "line in more than one class";
      r.witness = format_subspace(lines[i]);
      return r;
    }
  r.valid = true;
  return r;
}

inline bool verify_partition(const LinePartition& omega) { return check_partition(omega).valid; }

inline const Subspace& pi_omega(const LinePartition& omega, const Subspace& line) {
  if (line.dim() != 1 || line.ambient() != omega.ambient()) throw DimensionMismatch("π_Ω is defined on lines only");
  const auto c = omega.owner(line);
  if (!c) throw Error("line " + format_subspace(line) + " is not covered by the partition");
  return omega.classes()[*c].hyperplane;
}

struct PencilWitness {
  Subspace vertex;                  // the common point
  std::vector<Subspace> members;    // the q+1 lines
  std::vector<Subspace> images;     // their hyperplanes under π_Ω
};

struct PartitionLinearity {
  bool linear = false;
  std::optional<PencilWitness> witness;
};

// π_Ω is global, so linearity means every pencil of lines goes bijectively
// onto a pencil of hyperplanes.
inline PartitionLinearity check_partition_linear(const LinePartition& omega) {
  const Field& f = omega.field();
  const auto& inc = IncidenceTable::get(f, omega.ambient(), 1);
  const auto& lines = inc.members();
  std::vector<Vec> cov(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) cov[i] = covector_of_hyperplane(pi_omega(omega, lines[i]));
  PartitionLinearity r;
  for (const auto& p : inc.pencils()) {
    bool good = true;
    Matrix span(0, static_cast<std::size_t>(omega.ambient() + 1));
    for (std::size_t a = 0; a < p.members.size(); ++a) {
      span.append_row(cov[p.members[a]]);
      for (std::size_t b = 0; b < a; ++b) good = good && cov[p.members[a]] != cov[p.members[b]];
    }
    good = good && rank(f, span) == 2;
    if (!good) {
      PencilWitness w{inc.lower()[p.vertex], {}, {}};
      for (auto m : p.members) {
        w.members.push_back(lines[m]);
        w.images.push_back(pi_omega(omega, lines[m]));
      }
      r.witness = std::move(w);
      return r;
    }
  }
  r.linear = true;
  return r;
}

inline bool is_linear_partition(const LinePartition& omega) { return check_partition_linear(omega).linear; }

class NonLinearInput : public Error {
 public:
  NonLinearInput(PencilWitness w, bool prime)
      : Error("line partition is not linear"), witness(std::move(w)), complex_is_prime(prime) {}
  PencilWitness witness;
  bool complex_is_prime;
};

// The set of planes ε with ℓ ⊆ ε ⊆ π_Ω(ℓ) for some line ℓ, as flags over
// the canonical list of planes.
inline std::vector<bool> related_plane_set(const LinePartition& omega) {
  const auto& inc = IncidenceTable::get(omega.field(), omega.ambient(), 2);
  const auto& lines = inc.lower();
  const auto& planes = inc.members();
  std::vector<bool> in_set(planes.size(), false);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& target = pi_omega(omega, lines[l]);
    for (auto e : inc.star(l))
      if (target.contains(planes[e])) in_set[e] = true;
  }
  return in_set;
}

// The complex of planes related to a linear partition. Throws NonLinearInput
// (with a failing pencil) when the partition is not linear.
inline LinearComplex complex_from_partition(const LinePartition& omega) {
  if (omega.ambient() < 4) throw DegenerateAmbient("complex_from_partition needs n >= 4");
  const auto in_set = related_plane_set(omega);
  const bool prime = is_prime(omega.field(), omega.ambient(), 2, in_set);
  auto lin = check_partition_linear(omega);
  if (lin.linear != prime) throw InternalInconsistency("prime property of the related planes disagrees with linearity");
  if (!lin.linear) throw NonLinearInput(std::move(*lin.witness), prime);
  auto k = complex_from_members(omega.field(), omega.ambient(), 2, in_set);
  if (!singular_locus(k).subspaces.empty()) throw InternalInconsistency("complex related to a linear partition has singular lines");
  return k;
}

// {H -> F_H} for a complex of planes without singular lines.
inline LinePartition partition_from_complex(const LinearComplex& k) {
  if (k.h() != 2) throw DimensionMismatch("partition_from_complex needs a complex of planes");
  if (!singular_locus(k).subspaces.empty()) throw NotSingularFree("complex " + k.literal() + " has singular lines");
  const Field& f = k.field();
  const int n = k.ambient();
  const auto& hyperplanes = SubspaceTable::get(f, n, n - 1);
  std::unordered_map<Subspace, std::size_t, SubspaceHash> slot;
  std::vector<PartitionClass> classes;
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    slot.emplace(hyperplanes[i], i);
    classes.push_back({hyperplanes[i], {}});
  }
  for (const auto& l : SubspaceTable::get(f, n, 1).all()) {
    const auto hp = hyperplane_from_covector(f, polar_covector(k, l));
    classes[slot.at(hp)].lines.push_back(l);
  }
  LinePartition omega(f, n, std::move(classes));
  if (!verify_partition(omega) || !is_linear_partition(omega))
    throw InternalInconsistency("partition built from a singular-free complex is not a linear partition");
  return omega;
}

// PG(2,q): every line is a hyperplane and its own one-line spread.
inline LinePartition trivial_partition(const Field& f) {
  std::vector<PartitionClass> classes;
  for (const auto& l : SubspaceTable::get(f, 2, 1).all()) classes.push_back({l, {l}});
  return LinePartition(f, 2, std::move(classes));
}

// File format: for each class a header "H <subspace>" followed by its lines,
// one per row. Blank rows and rows starting with '#' are ignored.
inline LinePartition read_partition(std::istream& in, const Field& f) {
  std::vector<PartitionClass> classes;
  int n = -1;
  std::string row;
  std::size_t lineno = 0;
  while (std::getline(in, row)) {
    ++lineno;
    auto first = row.find_first_not_of(" \t");
    if (first == std::string::npos || row[first] == '#') continue;
    std::string_view text(row);
    text.remove_prefix(first);
    if (text.size() >= 2 && text[0] == 'H' && (text[1] == ' ' || text[1] == '\t')) {
      auto hp = parse_subspace(f, text.substr(2), n);
      n = hp.ambient();
      classes.push_back({std::move(hp), {}});
    } else {
      if (classes.empty()) throw ParseError("partition file line " + std::to_string(lineno) + ": line before any 'H' header");
      classes.back().lines.push_back(parse_subspace(f, text, n));
    }
  }
  if (n < 0) throw ParseError("partition file has no classes");
  return LinePartition(f, n, std::move(classes));
}

inline void write_partition(std::ostream& out, const LinePartition& omega) {
  for (const auto& cls : omega.classes()) {
    out << "H " << format_subspace(cls.hyperplane) << '\n';
    for (const auto& l : cls.lines) out << format_subspace(l) << '\n';
  }
}

}  // namespace lincx
