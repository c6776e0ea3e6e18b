#pragma once

// Precomputed incidence tables shared by the exhaustive checks: every
// d-subspace of PG(n,q) with its Pluecker image, the stars of
// (h-1)-subspaces and the pencils of h-subspaces. Tables are built once per
// (q, n, d), are immutable afterwards and may be read from any thread.

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "lincx/exterior.hpp"
#include "lincx/projspace.hpp"

namespace lincx {

class SubspaceTable {
 public:
  SubspaceTable(const Field& f, int n, int d) : f_(&f), n_(n), d_(d), all_(enumerate_subspaces(f, n, d)) {
    index_.reserve(all_.size());
    for (std::size_t i = 0; i < all_.size(); ++i) index_.emplace(all_[i], i);
    if (d >= 0) {
      width_ = binomial(n + 1, d + 1);
      pl_.reserve(all_.size() * width_);
      for (const auto& s : all_) {
        const auto p = lincx::pluecker(s);
        pl_.insert(pl_.end(), p.coeffs().begin(), p.coeffs().end());
      }
    }
  }

  const Field& field() const { return *f_; }
  int ambient() const { return n_; }
  int dim() const { return d_; }
  std::size_t size() const { return all_.size(); }
  const Subspace& operator[](std::size_t i) const { return all_[i]; }
  const std::vector<Subspace>& all() const { return all_; }
  std::size_t index_of(const Subspace& s) const { return index_.at(s); }
  bool has(const Subspace& s) const { return index_.count(s) != 0; }

  // Normalized Pluecker coordinates of subspace i.
  std::span<const Scalar> pluecker(std::size_t i) const { return {pl_.data() + i * width_, width_}; }
  std::size_t pluecker_width() const { return width_; }

  static const SubspaceTable& get(const Field& f, int n, int d) {
    static std::map<std::tuple<unsigned, int, int>, std::unique_ptr<SubspaceTable>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{f.order(), n, d}];
    if (!slot) slot = std::make_unique<SubspaceTable>(Field::get(f.order()), n, d);
    return *slot;
  }

 private:
  const Field* f_;
  int n_, d_;
  std::vector<Subspace> all_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
  std::size_t width_ = 0;
  std::vector<Scalar> pl_;
};

// Lines of PG(m,q) as index lists into the point table of PG(m,q).
inline std::vector<std::vector<std::size_t>> lines_as_points(const Field& f, int m) {
  const auto& points = SubspaceTable::get(f, m, 0);
  const auto& lines = SubspaceTable::get(f, m, 1);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(lines.size());
  for (const auto& l : lines.all()) {
    std::vector<std::size_t> pts;
    Vec v(l.row(1).begin(), l.row(1).end());
    pts.push_back(points.index_of(Subspace::span(f, m, {v})));
    for (unsigned t = 0; t < f.order(); ++t) {
      Vec w(l.row(0).begin(), l.row(0).end());
      axpy(f, static_cast<Scalar>(t), l.row(1), w);
      pts.push_back(points.index_of(Subspace::span(f, m, {w})));
    }
    out.push_back(std::move(pts));
  }
  return out;
}

// Stars and pencils of h-subspaces in PG(n,q), 0 <= h <= n-1.
class IncidenceTable {
 public:
  struct PencilEntry {
    std::size_t vertex;                // index among the (h-1)-subspaces
    std::vector<std::size_t> members;  // q+1 indices among the h-subspaces
  };

  IncidenceTable(const Field& f, int n, int h)
      : lower_(&SubspaceTable::get(f, n, h - 1)), members_(&SubspaceTable::get(f, n, h)) {
    if (h < 0 || h > n - 1) throw DimensionMismatch("pencils need 0 <= h <= n-1");
    const int m = n - h;  // dimension of the quotient [U, PG(n)]
    const auto& qpoints = SubspaceTable::get(f, m, 0);
    const auto qlines = lines_as_points(f, m);
    const auto whole = Subspace::whole(f, n);
    stars_.resize(lower_->size());
    for (std::size_t u = 0; u < lower_->size(); ++u) {
      IntervalCoords ic((*lower_)[u], whole);
      auto& star = stars_[u];
      star.reserve(qpoints.size());
      for (const auto& pt : qpoints.all()) star.push_back(members_->index_of(ic.from_coords(pt)));
      for (const auto& ql : qlines) {
        PencilEntry e{u, {}};
        for (auto j : ql) e.members.push_back(star[j]);
        pencils_.push_back(std::move(e));
      }
    }
  }

  const SubspaceTable& lower() const { return *lower_; }
  const SubspaceTable& members() const { return *members_; }
  // h-subspaces through the (h-1)-subspace with index u.
  const std::vector<std::size_t>& star(std::size_t u) const { return stars_[u]; }
  const std::vector<PencilEntry>& pencils() const { return pencils_; }

  static const IncidenceTable& get(const Field& f, int n, int h) {
    static std::map<std::tuple<unsigned, int, int>, std::unique_ptr<IncidenceTable>> cache;
    static std::mutex mu;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find({f.order(), n, h});
      if (it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<IncidenceTable>(Field::get(f.order()), n, h);
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{f.order(), n, h}];
    if (!slot) slot = std::move(built);
    return *slot;
  }

 private:
  const SubspaceTable* lower_;
  const SubspaceTable* members_;
  std::vector<std::vector<std::size_t>> stars_;
  std::vector<PencilEntry> pencils_;
};

}  // namespace lincx
