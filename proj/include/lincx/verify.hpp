#pragma once

// The acceptance battery: ten reproducible checks, each returning one
// pass/fail record with its wall time and time limit. `Full` runs the
// criteria at their stated scale; `Quick` shrinks the sampled and exhaustive
// parts so the whole battery finishes in about a minute.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lincx/complexes.hpp"
#include "lincx/partitions.hpp"
#include "lincx/search.hpp"
#include "lincx/spreads.hpp"

namespace lincx::verify {

enum class Level { Quick, Full };

struct Options {
  Level level = Level::Full;
  std::string data_dir;  // directory holding the stored fixtures
  unsigned workers = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool correct = false;  // the mathematical check held
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
  bool pass() const { return correct && seconds <= limit_seconds; }
};

// Number of forms on F_2^6 whose singular lines form a line spread of
// PG(5,2), frozen from the first exhaustive run.
inline constexpr std::uint64_t kPG52SpreadFormCount = 166656;

inline constexpr int kCriterionCount = 10;

namespace detail {

inline std::vector<LinearComplex> all_complexes(const Field& f, int n, int h) {
  const std::size_t dim = binomial(n + 1, h + 1);
  std::set<Vec> seen;
  std::vector<LinearComplex> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= f.order();
  for (std::uint64_t code = 1; code < total; ++code) {
    AlternatingForm form(f, n, h + 1);
    auto c = code;
    for (auto& x : form.coeffs()) {
      x = static_cast<Scalar>(c % f.order());
      c /= f.order();
    }
    form.normalize();
    if (seen.insert(form.coeffs()).second) out.emplace_back(std::move(form));
  }
  return out;
}

inline std::string join_text(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

inline CriterionResult c1_enumeration(const Options&) {
  CriterionResult r{1, "enumeration counts equal Gaussian binomials"};
  const Field& f = Field::get(2);
  struct Case {
    int n, d;
    std::size_t want;
  };
  bool ok = true;
  std::vector<std::string> parts;
  for (const auto& c : {Case{3, 1, 35}, Case{4, 2, 155}, Case{5, 1, 651}, Case{6, 2, 11811}}) {
    const auto got = enumerate_subspaces(f, c.n, c.d).size();
    const auto formula = gaussian_binomial(c.n + 1, c.d + 1, 2);
    ok = ok && got == c.want && formula == c.want;
    parts.push_back("PG(" + std::to_string(c.n) + ",2) d=" + std::to_string(c.d) + ": " + std::to_string(got) + "/" +
                    std::to_string(formula));
  }
  r.correct = ok;
  r.limit_seconds = 5;
  r.detail = join_text(parts);
  return r;
}

inline CriterionResult c2_klein(const Options&) {
  CriterionResult r{2, "Klein quadric coherence"};
  const Field& f = Field::get(2);
  std::size_t on_quadric = 0, round_trips = 0;
  const auto& lines = SubspaceTable::get(f, 3, 1).all();
  for (const auto& l : lines) {
    const auto p = pluecker(l);
    // order 01 02 03 12 13 23
    const Scalar k = f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]));
    on_quadric += k == 0;
    round_trips += unpluecker(p) == l;
  }
  const auto bad = MultiVector::basis(f, 3, {0, 1}) + MultiVector::basis(f, 3, {2, 3});
  const bool rejected = !unpluecker(bad).has_value();
  r.correct = on_quadric == lines.size() && round_trips == lines.size() && rejected;
  r.limit_seconds = 1;
  r.detail = std::to_string(on_quadric) + "/35 on quadric, " + std::to_string(round_trips) +
             "/35 round trips, e01+e23 " + (rejected ? "rejected" : "accepted");
  return r;
}

inline CriterionResult c3_prime(const Options&) {
  CriterionResult r{3, "hyperplane sections are primes"};
  const Field& f = Field::get(2);
  std::size_t lines_ok = 0, planes_ok = 0;
  const auto lc = all_complexes(f, 3, 1);
  for (const auto& k : lc) lines_ok += is_prime(f, 3, 1, member_mask(k));
  const auto pc = all_complexes(f, 4, 2);
  for (const auto& k : pc) planes_ok += is_prime(f, 4, 2, member_mask(k));
  r.correct = lc.size() == 63 && pc.size() == 1023 && lines_ok == 63 && planes_ok == 1023;
  r.limit_seconds = 120;
  r.detail = std::to_string(lines_ok) + "/" + std::to_string(lc.size()) + " line complexes of PG(3,2), " +
             std::to_string(planes_ok) + "/" + std::to_string(pc.size()) + " plane complexes of PG(4,2)";
  return r;
}

// Violations of the null-polarity properties for one complex, appended as text.
inline std::size_t null_polarity_violations(const LinearComplex& k, std::vector<std::string>& notes) {
  std::size_t bad = 0;
  auto note = [&](const std::string& what) {
    ++bad;
    if (notes.size() < 5) notes.push_back(k.literal() + ": " + what);
  };
  const Field& f = k.field();
  const int n = k.ambient(), h = k.h();
  const auto chi = up_polarity(k);
  const auto rep = check_null_polarity(chi);
  if (!rep.ok) note(rep.failure);
  const auto& lower = SubspaceTable::get(f, n, h - 1);
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(chi.table[i] == polar_hyperplane_by_join(k, lower[i]))) {
      note("contraction and join disagree at " + format_subspace(lower[i]));
      break;
    }
  if (image_span_dim(k) < h) note("image span below h");
  const auto loc = singular_locus(k);
  const int big = static_cast<int>(binomial(n + 1, h));
  if (loc.kernel.dim() < big - (n + 2) || loc.kernel.dim() > big - (h + 2)) note("singular locus dimension out of bounds");
  std::vector<bool> sing(lower.size(), false);
  for (const auto& u : loc.subspaces) sing[lower.index_of(u)] = true;
  const auto& inc = IncidenceTable::get(f, n, h - 1);
  for (const auto& p : inc.pencils()) {
    std::size_t c = 0;
    for (auto m : p.members) c += sing[m];
    if (c > 1 && c != p.members.size()) {
      note("singular set not pencil-closed");
      break;
    }
  }
  if (rep.ok) {
    try {
      if (!(from_polarity(chi) == k)) note("from_polarity(up_polarity(K)) != K");
    } catch (const std::exception& e) {
      note(std::string("from_polarity failed: ") + e.what());
    }
  }
  return bad;
}

inline CriterionResult c4_null_polarity(const Options& opt) {
  CriterionResult r{4, "null polarity suite"};
  std::size_t checked = 0, violations = 0;
  std::vector<std::string> notes;
  const Field& f2 = Field::get(2);
  struct Ex {
    int n, h;
  };
  for (const auto& e : {Ex{3, 1}, Ex{3, 2}, Ex{4, 2}}) {
    auto ks = all_complexes(f2, e.n, e.h);
    if (opt.level == Level::Quick && ks.size() > 100) ks.erase(ks.begin() + 100, ks.end());
    for (const auto& k : ks) {
      violations += null_polarity_violations(k, notes);
      ++checked;
    }
  }
  const int samples = opt.level == Level::Full ? 100 : 10;
  std::mt19937_64 rng(2024);
  for (const auto& [n, q] : {std::pair{4, 3u}, {5, 2u}}) {
    const Field& f = Field::get(q);
    for (int i = 0; i < samples; ++i) {
      violations += null_polarity_violations(LinearComplex(random_form(f, n, rng)), notes);
      ++checked;
    }
  }
  r.correct = violations == 0;
  r.limit_seconds = 600;
  r.detail = std::to_string(checked) + " complexes, " + std::to_string(violations) + " violations";
  if (!notes.empty()) r.detail += " (" + join_text(notes) + ")";
  return r;
}

inline CriterionResult c5_parity(const Options&) {
  CriterionResult r{5, "every point of PG(4,2) on a singular line"};
  const Field& f = Field::get(2);
  const auto& points = SubspaceTable::get(f, 4, 0).all();
  std::size_t failing = 0, missed_points = 0;
  std::string example;
  const auto ks = all_complexes(f, 4, 2);
  for (const auto& k : ks) {
    const auto loc = singular_locus(k);
    std::size_t missed = 0;
    std::string first;
    for (const auto& p : points) {
      bool on = false;
      for (const auto& l : loc.subspaces) on = on || l.contains(p);
      if (!on) {
        if (first.empty()) first = format_subspace(p);
        ++missed;
      }
    }
    if (missed) {
      ++failing;
      missed_points += missed;
      if (example.empty()) example = k.literal() + " misses point " + first;
    }
  }
  r.correct = failing == 0;
  r.limit_seconds = 120;
  r.detail = std::to_string(failing) + "/" + std::to_string(ks.size()) + " complexes violate (" +
             std::to_string(missed_points) + " point incidences missing)";
  if (!example.empty()) r.detail += "; e.g. " + example;
  return r;
}

inline CriterionResult c6_pg52_spreads(const Options& opt) {
  CriterionResult r{6, "PG(5,2) forms whose singular lines form a spread"};
  SearchConfig cfg;
  cfg.q = 2;
  cfg.workers = opt.workers;
  if (opt.level == Level::Quick) {
    cfg.mode = SearchMode::Random;
    cfg.budget = 1u << 16;
    cfg.seed = 1;
  }
  const auto c = classify_spread_forms(cfg);
  std::size_t geometric = 0;
  for (const auto& h : c.hits) geometric += h.geometric;
  const bool frozen_ok = opt.level == Level::Quick || kPG52SpreadFormCount == 0 || c.hits.size() == kPG52SpreadFormCount;
  r.correct = !c.hits.empty() && geometric == c.hits.size() && frozen_ok;
  r.limit_seconds = 900;
  r.detail = std::string(opt.level == Level::Full ? "exhaustive " : "sampled ") + std::to_string(c.report.forms_tested) +
             " forms, " + std::to_string(c.hits.size()) + " spread hits, " + std::to_string(geometric) + " geometric";
  if (opt.level == Level::Full)
    r.detail += kPG52SpreadFormCount ? ", frozen value " + std::to_string(kPG52SpreadFormCount) : ", no frozen value yet";
  r.detail += ", " + std::to_string(c.cross_checked) + " cross-checked";
  return r;
}

inline CriterionResult c7_nonexistence(const Options& opt) {
  CriterionResult r{7, "no singular-free complexes of planes in PG(6,2), PG(8,2) samples"};
  std::vector<std::string> parts;
  bool ok = true;
  for (const auto& [n, budget] : {std::pair{6, std::uint64_t{100000}}, {8, std::uint64_t{10000}}}) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.q = 2;
    cfg.mode = SearchMode::Random;
    cfg.budget = opt.level == Level::Full ? budget : budget / 100;
    cfg.seed = 1;
    cfg.workers = opt.workers;
    const auto rep = search_no_singular(cfg);
    ok = ok && rep.forms_tested == cfg.budget && rep.forms_without_singular_line == 0;
    std::string part = "PG(" + std::to_string(n) + ",2): " + std::to_string(rep.forms_without_singular_line) + " hits in " +
                       std::to_string(rep.forms_tested);
    for (const auto& hc : rep.hit_checks)
      part += " [hit " + hc.form + (hc.failure.empty() ? " passes linear/non-geometric checks" : " fails: " + hc.failure) + "]";
    parts.push_back(part);
  }
  r.correct = ok;
  r.limit_seconds = 900;
  r.detail = join_text(parts) + " (consistency evidence, not a proof)";
  return r;
}

inline CriterionResult c8_product(const Options&) {
  CriterionResult r{8, "product and total subspaces of the symplectic complex"};
  const Field& f = Field::get(2);
  const auto k = LinearComplex::parse(f, 3, 1, "01+23");
  std::size_t non_total = 0, prime = 0;
  for (const auto& h : SubspaceTable::get(f, 3, 2).all()) {
    const auto p = product(k, h);
    if (std::holds_alternative<AllMembers>(p)) continue;
    ++non_total;
    prime += is_prime(f, 3, 2, member_mask(std::get<LinearComplex>(p)));
  }
  const auto& planes = SubspaceTable::get(f, 3, 2);
  std::vector<bool> meet_all(planes.size(), true);
  for (int i = 0; i <= 3; ++i) {
    Vec e(4, 0);
    e[i] = 1;
    const auto p = product(k, hyperplane_from_covector(f, e));
    if (std::holds_alternative<AllMembers>(p)) continue;
    const auto mask = member_mask(std::get<LinearComplex>(p));
    for (std::size_t j = 0; j < mask.size(); ++j) meet_all[j] = meet_all[j] && mask[j];
  }
  std::vector<bool> total(planes.size(), false);
  const auto t = total_subspaces(k);
  for (const auto& v : t) total[planes.index_of(v)] = true;
  r.correct = non_total == prime && total == meet_all;
  r.limit_seconds = 1;
  r.detail = std::to_string(prime) + "/" + std::to_string(non_total) + " products prime, " + std::to_string(t.size()) +
             " total planes, intersection " + (total == meet_all ? "agrees" : "differs");
  return r;
}

inline CriterionResult c9_partitions(const Options& opt) {
  CriterionResult r{9, "partition machinery"};
  std::vector<std::string> parts;
  bool ok = true;
  for (unsigned q : {2u, 3u}) {
    const auto omega = trivial_partition(Field::get(q));
    const bool good = verify_partition(omega) && is_linear_partition(omega);
    ok = ok && good;
    parts.push_back("PG(2," + std::to_string(q) + ") trivial " + (good ? "valid+linear" : "rejected"));
  }
  const Field& f = Field::get(2);
  try {
    std::ifstream in(opt.data_dir + "/malformed_partition.txt");
    if (!in) throw Error("fixture malformed_partition.txt not found in " + opt.data_dir);
    check_partition(read_partition(in, f));
    ok = false;
    parts.push_back("malformed partition accepted");
  } catch (const ContainmentError& e) {
    parts.push_back(std::string("malformed rejected: ") + e.what());
  } catch (const std::exception& e) {
    ok = false;
    parts.push_back(e.what());
  }
  try {
    std::ifstream in(opt.data_dir + "/partition_pg42.txt");
    if (!in) throw Error("fixture partition_pg42.txt not found in " + opt.data_dir);
    const auto omega = read_partition(in, f);
    const bool valid = verify_partition(omega);
    const auto lin = check_partition_linear(omega);
    bool non_linear_reported = false;
    try {
      complex_from_partition(omega);
    } catch (const NonLinearInput&) {
      non_linear_reported = true;
    }
    const bool good = valid && !lin.linear && lin.witness && non_linear_reported;
    ok = ok && good;
    std::string w;
    if (lin.witness) {
      w = "vertex " + format_subspace(lin.witness->vertex) + " ->";
      for (const auto& img : lin.witness->images) w += " [" + format_subspace(img) + "]";
    }
    parts.push_back(std::string("PG(4,2) partition ") + (valid ? "valid" : "invalid") + ", " +
                    (lin.linear ? "linear" : "not a dual pencil at " + w));
  } catch (const std::exception& e) {
    ok = false;
    parts.push_back(e.what());
  }
  r.correct = ok;
  r.limit_seconds = 1;
  r.detail = join_text(parts);
  return r;
}

inline CriterionResult c10_spreads(const Options& opt) {
  CriterionResult r{10, "spread predicates"};
  const Field& f = Field::get(2);
  const auto s3 = field_reduction_spread(2, 2);
  const auto s5 = field_reduction_spread(3, 2);
  const bool sizes = s3.size() == 5 && s5.size() == 21 && is_spread(s3.lines(), s3.carrier()) &&
                     is_spread(s5.lines(), s5.carrier());
  const bool geo = is_geometric(s5);
  const auto lin = is_linear(s3);
  bool fixture_rejected = false;
  std::string fixture_note;
  try {
    std::ifstream in(opt.data_dir + "/nongeometric_spread.txt");
    if (!in) throw Error("fixture nongeometric_spread.txt not found in " + opt.data_dir);
    std::vector<Subspace> lines;
    std::string row;
    while (std::getline(in, row))
      if (!row.empty() && row[0] != '#') lines.push_back(parse_subspace(f, row, 5));
    fixture_rejected = !is_geometric(LineSpread(Subspace::whole(f, 5), std::move(lines)));
    fixture_note = fixture_rejected ? "fixture not geometric" : "fixture geometric";
  } catch (const std::exception& e) {
    fixture_note = e.what();
  }
  r.correct = sizes && geo && lin.linear && lin.span_dim == 3 && fixture_rejected;
  r.limit_seconds = 5;
  r.detail = std::string("sizes ") + std::to_string(s3.size()) + "/" + std::to_string(s5.size()) + ", PG(5,2) " +
             (geo ? "geometric" : "not geometric") + ", PG(3,2) linear=" + (lin.linear ? "yes" : "no") +
             " span_dim=" + std::to_string(lin.span_dim) + ", " + fixture_note;
  return r;
}

}  // namespace detail

inline CriterionResult run_criterion(int id, const Options& opt) {
  using Fn = CriterionResult (*)(const Options&);
  static const Fn table[kCriterionCount] = {detail::c1_enumeration, detail::c2_klein,       detail::c3_prime,
                                            detail::c4_null_polarity, detail::c5_parity,   detail::c6_pg52_spreads,
                                            detail::c7_nonexistence, detail::c8_product,   detail::c9_partitions,
                                            detail::c10_spreads};
  if (id < 1 || id > kCriterionCount) throw Error("unknown criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opt);
  } catch (const std::exception& e) {
    r.id = id;
    r.correct = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::string format_result(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", r.seconds, r.limit_seconds);
  std::string status = r.pass() ? "PASS" : "FAIL";
  if (r.correct && !r.pass()) status += " (over time)";
  return "C" + std::to_string(r.id) + " " + status + " " + r.title + " [" + timing + "] " + r.detail;
}

}  // namespace lincx::verify
