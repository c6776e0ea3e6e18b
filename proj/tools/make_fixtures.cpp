// Regenerates the stored test fixtures:
//   partition_pg42.txt      a line partition of PG(4,2) (exact cover search)
//   malformed_partition.txt the same partition with two lines swapped
//   nongeometric_spread.txt a line spread of PG(5,2) that is not geometric
// Usage: make_fixtures <output-dir> [seed]

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "lincx/partitions.hpp"
#include "lincx/spreads.hpp"

using namespace lincx;

namespace {

// All line spreads of PG(3,q), as index lists into the line table.
std::vector<std::vector<std::size_t>> spreads_of_pg3(const Field& f) {
  const auto pts = lines_as_points(f, 3);
  const std::size_t npts = SubspaceTable::get(f, 3, 0).size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chosen;
  std::vector<bool> covered(npts, false);
  auto rec = [&](auto&& self, std::size_t from) -> void {
    auto first = std::find(covered.begin(), covered.end(), false);
    if (first == covered.end()) {
      out.push_back(chosen);
      return;
    }
    const auto p = static_cast<std::size_t>(first - covered.begin());
    for (std::size_t l = from; l < pts.size(); ++l) {
      if (std::find(pts[l].begin(), pts[l].end(), p) == pts[l].end()) continue;
      if (std::any_of(pts[l].begin(), pts[l].end(), [&](std::size_t x) { return covered[x]; })) continue;
      for (auto x : pts[l]) covered[x] = true;
      chosen.push_back(l);
      self(self, 0);
      chosen.pop_back();
      for (auto x : pts[l]) covered[x] = false;
    }
  };
  rec(rec, 0);
  // each spread is found once per ordering of its lines by first uncovered point, which is unique
  return out;
}

// Algorithm X over items = lines of PG(4,2) + solids, options = (solid, spread).
struct ExactCover {
  std::vector<std::vector<std::size_t>> options;  // item lists
  std::size_t items = 0;
  std::mt19937_64 rng;
  std::vector<std::size_t> solution;
  std::vector<int> item_used;
  std::vector<std::vector<std::size_t>> by_item;
  std::uint64_t nodes = 0;

  bool solve() {
    if (++nodes > 50'000'000) return false;
    std::size_t best = items, best_count = SIZE_MAX;
    for (std::size_t i = 0; i < items; ++i) {
      if (item_used[i]) continue;
      std::size_t c = 0;
      for (auto o : by_item[i]) c += feasible(o);
      if (c < best_count) {
        best = i;
        best_count = c;
        if (c == 0) return false;
      }
    }
    if (best == items) return true;
    auto opts = by_item[best];
    std::shuffle(opts.begin(), opts.end(), rng);
    for (auto o : opts) {
      if (!feasible(o)) continue;
      for (auto i : options[o]) item_used[i] = 1;
      solution.push_back(o);
      if (solve()) return true;
      solution.pop_back();
      for (auto i : options[o]) item_used[i] = 0;
    }
    return false;
  }

  bool feasible(std::size_t o) const {
    for (auto i : options[o])
      if (item_used[i]) return false;
    return true;
  }
};

LinePartition find_partition(std::uint64_t seed) {
  const Field& f = Field::get(2);
  const auto& lines = SubspaceTable::get(f, 4, 1);
  const auto& solids = SubspaceTable::get(f, 4, 3);
  const auto& local_lines = SubspaceTable::get(f, 3, 1);
  const auto local_spreads = spreads_of_pg3(f);
  ExactCover ec;
  ec.items = lines.size() + solids.size();
  ec.rng.seed(seed);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> meaning;
  for (std::size_t s = 0; s < solids.size(); ++s) {
    IntervalCoords ic(Subspace::empty(f, 4), solids[s]);
    for (const auto& sp : local_spreads) {
      std::vector<std::size_t> opt{lines.size() + s};
      std::vector<std::size_t> global;
      for (auto l : sp) {
        global.push_back(lines.index_of(ic.from_coords(local_lines[l])));
        opt.push_back(global.back());
      }
      ec.options.push_back(opt);
      meaning.emplace_back(s, global);
    }
  }
  ec.by_item.resize(ec.items);
  for (std::size_t o = 0; o < ec.options.size(); ++o)
    for (auto i : ec.options[o]) ec.by_item[i].push_back(o);
  ec.item_used.assign(ec.items, 0);
  if (!ec.solve()) throw Error("no PG(4,2) line partition found within the node budget");
  std::vector<PartitionClass> classes;
  for (auto o : ec.solution) {
    PartitionClass c{solids[meaning[o].first], {}};
    for (auto l : meaning[o].second) c.lines.push_back(lines[l]);
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.hyperplane < b.hyperplane; });
  return LinePartition(f, 4, std::move(classes));
}

std::vector<Subspace> random_spread_pg52(std::mt19937_64& rng) {
  const Field& f = Field::get(2);
  const auto& lines = SubspaceTable::get(f, 5, 1);
  const auto pts = lines_as_points(f, 5);
  const std::size_t npts = SubspaceTable::get(f, 5, 0).size();
  std::vector<std::vector<std::size_t>> through(npts);
  for (std::size_t l = 0; l < pts.size(); ++l)
    for (auto p : pts[l]) through[p].push_back(l);
  while (true) {
    std::vector<bool> covered(npts, false);
    std::vector<std::size_t> chosen;
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self) -> bool {
      if (++nodes > 200'000) return false;
      std::size_t best = npts, best_count = SIZE_MAX;
      for (std::size_t p = 0; p < npts; ++p) {
        if (covered[p]) continue;
        std::size_t c = 0;
        for (auto l : through[p])
          c += std::none_of(pts[l].begin(), pts[l].end(), [&](std::size_t x) { return covered[x]; });
        if (c < best_count) {
          best = p;
          best_count = c;
        }
      }
      if (best == npts) return true;
      auto cand = through[best];
      std::shuffle(cand.begin(), cand.end(), rng);
      for (auto l : cand) {
        if (std::any_of(pts[l].begin(), pts[l].end(), [&](std::size_t x) { return covered[x]; })) continue;
        for (auto x : pts[l]) covered[x] = true;
        chosen.push_back(l);
        if (self(self)) return true;
        chosen.pop_back();
        for (auto x : pts[l]) covered[x] = false;
      }
      return false;
    };
    if (!rec(rec)) continue;
    std::vector<Subspace> out;
    for (auto l : chosen) out.push_back(lines[l]);
    std::sort(out.begin(), out.end());
    return out;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixtures <output-dir> [seed]\n";
    return 2;
  }
  const std::string dir = argv[1];
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1;
  const Field& f = Field::get(2);

  const auto omega = find_partition(seed);
  if (!verify_partition(omega)) throw Error("generated partition does not verify");
  {
    std::ofstream out(dir + "/partition_pg42.txt");
    out << "# line partition of PG(4,2); exact cover search, seed " << seed << "\n";
    write_partition(out, omega);
  }
  {
    auto classes = omega.classes();
    // swap the first line of class 0 with a line of another class not inside hyperplane 0
    for (std::size_t c = 1; c < classes.size(); ++c) {
      auto it = std::find_if(classes[c].lines.begin(), classes[c].lines.end(),
                             [&](const Subspace& l) { return !classes[0].hyperplane.contains(l); });
      if (it == classes[c].lines.end()) continue;
      std::swap(classes[0].lines[0], *it);
      break;
    }
    std::ofstream out(dir + "/malformed_partition.txt");
    out << "# PG(4,2) partition with two lines swapped between classes\n";
    write_partition(out, LinePartition(f, 4, std::move(classes)));
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0;; ++attempt) {
    auto lines = random_spread_pg52(rng);
    const LineSpread s(Subspace::whole(f, 5), lines);
    if (is_geometric(s)) continue;
    std::ofstream out(dir + "/nongeometric_spread.txt");
    out << "# line spread of PG(5,2) that is not geometric; randomized backtracking, seed " << seed << "\n";
    for (const auto& l : lines) out << format_subspace(l) << "\n";
    break;
  }
  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
