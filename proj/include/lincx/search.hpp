#pragma once

// Enumeration and sampling of alternating trilinear forms, the singular-line
// scan, and the searches for complexes of planes without singular lines.
//
// Throughput comes from precomputing, per form, the covectors
// F_ij = f(e_i, e_j, ·). The contraction of f by a line with Pluecker
// coordinates p is then sum_{i<j} p_ij F_ij. Over GF(2) covectors are bit
// masks and the sum is a few table lookups per line.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "lincx/complexes.hpp"
#include "lincx/errors.hpp"
#include "lincx/exterior.hpp"
#include "lincx/partitions.hpp"
#include "lincx/spreads.hpp"
#include "lincx/tables.hpp"

namespace lincx {

// Number of projective points of the degree-3 form space, or nullopt when it
// does not fit in 64 bits.
inline std::optional<std::uint64_t> form_count(int n, unsigned q) {
  if (n < 3) throw DimensionMismatch("trilinear forms need n >= 3");
  const std::size_t dim = binomial(n + 1, 3);
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= q;
    if (total > (static_cast<unsigned __int128>(1) << 100)) return std::nullopt;
  }
  const unsigned __int128 count = (total - 1) / (q - 1);
  if (count > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(count);
}

// The form with the given enumeration index. Representatives have first
// nonzero coefficient 1. They are grouped by the position of that leading
// one (position 0 first); within a group the later coordinates are read as a
// base-q number, most significant first. Index 0 is e*_{012}.
inline AlternatingForm form_at(const Field& f, int n, std::uint64_t index) {
  const auto count = form_count(n, f.order());
  if (!count || index >= *count) throw Error("form index out of range");
  AlternatingForm form(f, n, 3);
  const std::size_t dim = form.size();
  const unsigned q = f.order();
  for (std::size_t lead = 0; lead < dim; ++lead) {
    std::uint64_t block = 1;
    for (std::size_t i = lead + 1; i < dim; ++i) block *= q;
    if (index >= block) {
      index -= block;
      continue;
    }
    form[lead] = 1;
    for (std::size_t i = dim; i-- > lead + 1;) {
      form[i] = static_cast<Scalar>(index % q);
      index /= q;
    }
    return form;
  }
  throw InternalInconsistency("form index decoding failed");
}

// Shared per-(q,n) data for scanning lines: Pluecker coordinates of every line
// and the pair/triple bookkeeping for F_ij.
class LineScanData {
 public:
  struct PairTerm {
    std::uint8_t k;         // output coordinate
    std::uint32_t triple;   // index of {i,j,k} among the 3-subsets
    bool negate;
  };

  LineScanData(const Field& f, int n) : f_(&f), n_(n), lines_(&SubspaceTable::get(f, n, 1)) {
    const auto& pairs = SubsetIndex::get(n + 1, 2);
    const auto& triples = SubsetIndex::get(n + 1, 3);
    pair_terms_.resize(pairs.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      const auto pm = pairs.mask(t);
      for (int k = 0; k <= n; ++k) {
        if ((pm >> k) & 1) continue;
        const auto sm = pm | (1u << k);
        pair_terms_[t].push_back({static_cast<std::uint8_t>(k), static_cast<std::uint32_t>(triples.rank_of_mask(sm)),
                                  odd_above(sm, k)});
      }
    }
    const std::size_t w = pairs.size();
    for (std::size_t i = 0; i < lines_->size(); ++i) {
      const auto p = lines_->pluecker(i);
      std::uint64_t mask = 0;
      std::vector<std::pair<std::uint8_t, Scalar>> sparse;
      for (std::size_t t = 0; t < w; ++t) {
        if (p[t] == 0) continue;
        mask |= std::uint64_t{1} << t;
        sparse.emplace_back(static_cast<std::uint8_t>(t), p[t]);
      }
      masks_.push_back(mask);
      sparse_.push_back(std::move(sparse));
    }
    const auto& points = SubspaceTable::get(f, n, 0);
    for (const auto& l : lines_->all()) {
      Vec v(l.row(1).begin(), l.row(1).end());
      line_points_.push_back(static_cast<std::uint32_t>(points.index_of(Subspace::span(f, n, {v}))));
      for (unsigned t = 0; t < f.order(); ++t) {
        Vec w0(l.row(0).begin(), l.row(0).end());
        axpy(f, static_cast<Scalar>(t), l.row(1), w0);
        line_points_.push_back(static_cast<std::uint32_t>(points.index_of(Subspace::span(f, n, {w0}))));
      }
    }
    point_count_ = points.size();
  }

  const Field& field() const { return *f_; }
  int ambient() const { return n_; }
  const SubspaceTable& lines() const { return *lines_; }
  std::size_t pair_count() const { return pair_terms_.size(); }
  const std::vector<PairTerm>& pair_terms(std::size_t t) const { return pair_terms_[t]; }
  std::uint64_t pluecker_mask(std::size_t line) const { return masks_[line]; }
  const std::vector<std::pair<std::uint8_t, Scalar>>& pluecker_sparse(std::size_t line) const { return sparse_[line]; }
  std::span<const std::uint32_t> line_points(std::size_t line) const {
    const std::size_t k = f_->order() + 1;
    return {line_points_.data() + line * k, k};
  }
  std::size_t point_count() const { return point_count_; }
  std::size_t spread_size() const { return point_count_ / (f_->order() + 1); }

  static const LineScanData& get(const Field& f, int n) {
    static std::map<std::pair<unsigned, int>, std::unique_ptr<LineScanData>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{f.order(), n}];
    if (!slot) slot = std::make_unique<LineScanData>(Field::get(f.order()), n);
    return *slot;
  }

 private:
  const Field* f_;
  int n_;
  const SubspaceTable* lines_;
  std::vector<std::vector<PairTerm>> pair_terms_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::pair<std::uint8_t, Scalar>>> sparse_;
  std::vector<std::uint32_t> line_points_;
  std::size_t point_count_ = 0;
};

struct FormScan {
  std::size_t singular_lines = 0;
  bool forms_spread = false;        // singular lines are a line spread of PG(n,q)
  std::vector<std::size_t> lines;   // singular line indices when collected
};

// Per-worker scanner; load() a form, then query lines. Not thread-safe, one
// instance per thread.
class FormScanner {
 public:
  // bit_path = false forces the generic field arithmetic over GF(2) as well.
  explicit FormScanner(const LineScanData& data, bool bit_path = true)
      : d_(&data), gf2_(bit_path && data.field().order() == 2) {
    cov_.assign(d_->pair_count() * static_cast<std::size_t>(d_->ambient() + 1), 0);
    if (gf2_) {
      chunks_ = (d_->pair_count() + 7) / 8;
      table_.assign(chunks_ * 256, 0);
    }
    stamp_.assign(d_->point_count(), 0);
  }

  void load(const AlternatingForm& form) {
    if (form.ambient() != d_->ambient() || form.grade() != 3) throw DimensionMismatch("scanner needs a trilinear form of matching ambient");
    const Field& f = d_->field();
    const std::size_t width = static_cast<std::size_t>(d_->ambient() + 1);
    std::fill(cov_.begin(), cov_.end(), 0);
    for (std::size_t t = 0; t < d_->pair_count(); ++t)
      for (const auto& term : d_->pair_terms(t)) {
        const Scalar c = form[term.triple];
        cov_[t * width + term.k] = term.negate ? f.neg(c) : c;
      }
    if (gf2_) {
      for (std::size_t c = 0; c < chunks_; ++c) {
        auto* tbl = table_.data() + c * 256;
        tbl[0] = 0;
        for (unsigned x = 1; x < 256; ++x) {
          const unsigned low = static_cast<unsigned>(std::countr_zero(x));
          const std::size_t t = c * 8 + low;
          tbl[x] = tbl[x & (x - 1)] ^ (t < d_->pair_count() ? pair_mask(t) : 0u);
        }
      }
    }
  }

  bool singular(std::size_t line) const {
    if (gf2_) {
      std::uint64_t m = d_->pluecker_mask(line);
      std::uint32_t acc = 0;
      for (std::size_t c = 0; m; ++c, m >>= 8) acc ^= table_[c * 256 + (m & 0xff)];
      return acc == 0;
    }
    const Field& f = d_->field();
    const std::size_t width = static_cast<std::size_t>(d_->ambient() + 1);
    Scalar acc[32] = {};
    for (const auto& [t, p] : d_->pluecker_sparse(line))
      for (std::size_t k = 0; k < width; ++k) acc[k] = f.add(acc[k], f.mul(p, cov_[t * width + k]));
    for (std::size_t k = 0; k < width; ++k)
      if (acc[k]) return false;
    return true;
  }

  std::optional<std::size_t> first_singular() const {
    for (std::size_t i = 0; i < d_->lines().size(); ++i)
      if (singular(i)) return i;
    return std::nullopt;
  }

  FormScan scan(bool collect) {
    FormScan out;
    std::vector<std::size_t> found;
    for (std::size_t i = 0; i < d_->lines().size(); ++i) {
      if (!singular(i)) continue;
      ++out.singular_lines;
      found.push_back(i);
    }
    if (out.singular_lines == d_->spread_size()) {
      ++generation_;
      bool disjoint = true;
      for (auto l : found)
        for (auto p : d_->line_points(l)) {
          if (stamp_[p] == generation_) disjoint = false;
          stamp_[p] = generation_;
        }
      out.forms_spread = disjoint;  // right count + disjoint => covering
    }
    if (collect) out.lines = std::move(found);
    return out;
  }

  const LineScanData& data() const { return *d_; }

 private:
  std::uint32_t pair_mask(std::size_t t) const {
    const std::size_t width = static_cast<std::size_t>(d_->ambient() + 1);
    std::uint32_t m = 0;
    for (std::size_t k = 0; k < width; ++k)
      if (cov_[t * width + k]) m |= 1u << k;
    return m;
  }

  const LineScanData* d_;
  bool gf2_;
  std::vector<Scalar> cov_;
  std::size_t chunks_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

inline bool has_singular_line(const AlternatingForm& form) {
  if (form.is_zero()) throw Error("zero form");
  FormScanner s(LineScanData::get(form.field(), form.ambient()));
  s.load(form);
  return s.first_singular().has_value();
}

enum class SearchMode { Exhaustive, Random };

inline const char* to_string(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "random"; }

struct SearchConfig {
  int n = 4;
  unsigned q = 2;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t budget = 0;  // forms to sample in random mode
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t cap = std::uint64_t{1} << 24;  // largest exhaustive space
  std::size_t witness_limit = 8;
};

struct Witness {
  std::uint64_t worker = 0;
  std::uint64_t sequence = 0;  // enumeration index (exhaustive) or draw number
  std::string form;
};

// Outcome of the downstream checks run on a singular-free form.
struct HitCheck {
  std::string form;
  bool partition_ok = false;
  bool spreads_linear = false;
  bool spreads_non_geometric = false;
  std::string failure;
};

struct SearchReport {
  int n = 0;
  unsigned q = 0;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  unsigned workers = 1;
  std::uint64_t forms_tested = 0;
  std::uint64_t forms_without_singular_line = 0;
  std::uint64_t forms_whose_singular_lines_form_a_spread = 0;
  double elapsed_seconds = 0;
  std::vector<Witness> witnesses;         // singular-free forms
  std::vector<Witness> spread_witnesses;  // forms whose singular lines are a spread
  std::vector<HitCheck> hit_checks;

  // Component-wise merge; witnesses are concatenated and re-sorted.
  void merge(const SearchReport& o, std::size_t limit) {
    forms_tested += o.forms_tested;
    forms_without_singular_line += o.forms_without_singular_line;
    forms_whose_singular_lines_form_a_spread += o.forms_whose_singular_lines_form_a_spread;
    auto cat = [&](std::vector<Witness>& a, const std::vector<Witness>& b) {
      a.insert(a.end(), b.begin(), b.end());
      std::sort(a.begin(), a.end(), [](const Witness& x, const Witness& y) {
        return std::tie(x.worker, x.sequence) < std::tie(y.worker, y.sequence);
      });
      if (a.size() > limit) a.resize(limit);
    };
    cat(witnesses, o.witnesses);
    cat(spread_witnesses, o.spread_witnesses);
    hit_checks.insert(hit_checks.end(), o.hit_checks.begin(), o.hit_checks.end());
  }
};

// Checks that a singular-free complex of planes gives a linear partition
// whose spreads are linear with span dimension M-n and not geometric.
inline HitCheck check_singular_free_hit(const AlternatingForm& form) {
  HitCheck r;
  r.form = format_form(form);
  try {
    const LinearComplex k(form);
    const auto omega = partition_from_complex(k);
    r.partition_ok = true;
    r.spreads_linear = true;
    r.spreads_non_geometric = true;
    const int want = line_pluecker_ambient(k.ambient()) - k.ambient();
    for (const auto& cls : omega.classes()) {
      const LineSpread s(cls.hyperplane, cls.lines);
      const auto lin = is_linear(s);
      if (!lin.linear || lin.span_dim != want) r.spreads_linear = false;
      if (is_geometric(s)) r.spreads_non_geometric = false;
    }
    if (!r.spreads_linear) r.failure = "spread not linear with span dimension M-n";
    if (!r.spreads_non_geometric) r.failure = "spread is geometric";
  } catch (const std::exception& e) {
    r.failure = e.what();
  }
  return r;
}

namespace detail {

// Uniform integer in [0, bound) from raw engine output by rejection, so
// results do not depend on the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

inline std::mt19937_64 worker_rng(std::uint64_t seed, unsigned worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), 0x6c696e63u};
  return std::mt19937_64(seq);
}

}  // namespace detail

// A uniformly random nonzero form, normalized to first nonzero coefficient 1.
inline AlternatingForm random_form(const Field& f, int n, std::mt19937_64& rng) {
  AlternatingForm form(f, n, 3);
  do {
    for (auto& c : form.coeffs()) c = static_cast<Scalar>(detail::uniform_below(rng, f.order()));
  } while (form.is_zero());
  return form.normalize();
}

// Runs `body(worker, report)` on `workers` threads and merges the reports in
// worker order.
template <class Body>
SearchReport run_workers(const SearchConfig& cfg, Body body) {
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<SearchReport> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        body(w, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  SearchReport out;
  out.n = cfg.n;
  out.q = cfg.q;
  out.mode = cfg.mode;
  out.seed = cfg.seed;
  out.budget = cfg.budget;
  out.workers = workers;
  for (const auto& p : parts) out.merge(p, cfg.witness_limit);
  return out;
}

// Enumeration indices [begin, end) handled by worker w of `workers`.
inline std::pair<std::uint64_t, std::uint64_t> worker_range(std::uint64_t total, unsigned workers, unsigned w) {
  const std::uint64_t base = total / workers, extra = total % workers;
  const std::uint64_t begin = w * base + std::min<std::uint64_t>(w, extra);
  return {begin, begin + base + (w < extra ? 1 : 0)};
}

inline std::uint64_t worker_budget(std::uint64_t budget, unsigned workers, unsigned w) {
  return budget / workers + (w < budget % workers ? 1 : 0);
}

// Walks the forms selected by the config, calling visit(form, worker,
// sequence, report) for each.
template <class Visit>
SearchReport for_each_form(const SearchConfig& cfg, Visit visit) {
  const Field& f = Field::get(cfg.q);
  const unsigned workers = std::max(1u, cfg.workers);
  const auto start = std::chrono::steady_clock::now();
  SearchReport out;
  if (cfg.mode == SearchMode::Exhaustive) {
    const auto total = form_count(cfg.n, cfg.q);
    if (!total || *total > cfg.cap)
      throw BudgetExceeded("exhaustive search over PG(" + std::to_string(cfg.n) + "," + std::to_string(cfg.q) +
                           ") exceeds the cap of " + std::to_string(cfg.cap) + " forms");
    LineScanData::get(f, cfg.n);  // build shared tables before threads start
    out = run_workers(cfg, [&](unsigned w, SearchReport& rep) {
      const auto [begin, end] = worker_range(*total, workers, w);
      FormScanner scanner(LineScanData::get(f, cfg.n));
      for (std::uint64_t i = begin; i < end; ++i) visit(form_at(f, cfg.n, i), scanner, w, i, rep);
    });
  } else {
    LineScanData::get(f, cfg.n);
    out = run_workers(cfg, [&](unsigned w, SearchReport& rep) {
      auto rng = detail::worker_rng(cfg.seed, w);
      const auto count = worker_budget(cfg.budget, workers, w);
      FormScanner scanner(LineScanData::get(f, cfg.n));
      for (std::uint64_t i = 0; i < count; ++i) visit(random_form(f, cfg.n, rng), scanner, w, i, rep);
    });
  }
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Looks for forms without singular lines. Every hit is re-checked by the
// singular-locus computation and then by check_singular_free_hit.
inline SearchReport search_no_singular(const SearchConfig& cfg) {
  return for_each_form(cfg, [&](const AlternatingForm& form, FormScanner& scanner, unsigned w, std::uint64_t seq,
                                SearchReport& rep) {
    scanner.load(form);
    const auto scan = scanner.scan(false);
    ++rep.forms_tested;
    if (scan.forms_spread) {
      ++rep.forms_whose_singular_lines_form_a_spread;
      if (rep.spread_witnesses.size() < cfg.witness_limit) rep.spread_witnesses.push_back({w, seq, format_form(form)});
    }
    if (scan.singular_lines == 0) {
      if (!singular_locus(LinearComplex(form)).subspaces.empty())
        throw InternalInconsistency("fast scan reported no singular line for " + format_form(form));
      ++rep.forms_without_singular_line;
      if (rep.witnesses.size() < cfg.witness_limit) rep.witnesses.push_back({w, seq, format_form(form)});
      rep.hit_checks.push_back(check_singular_free_hit(form));
    }
  });
}

struct SpreadFormHit {
  std::uint64_t worker = 0;
  std::uint64_t sequence = 0;
  std::string form;
  bool geometric = false;
  bool linear = false;
  int span_dim = -1;
};

struct SpreadClassification {
  SearchReport report;
  std::vector<SpreadFormHit> hits;
  std::size_t cross_checked = 0;  // hits re-evaluated by the generic predicates
};

namespace detail {

// GF(2) bit versions of is_geometric / is_linear for a spread of PG(n,2) with
// n <= 5, given as line indices into the line table.
class Gf2SpreadPredicates {
 public:
  explicit Gf2SpreadPredicates(const LineScanData& d) : d_(&d) {
    const auto& lines = d.lines();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      unsigned a = 0, b = 0;
      for (int k = 0; k <= d.ambient(); ++k) {
        a |= static_cast<unsigned>(lines[i].row(0)[k]) << k;
        b |= static_cast<unsigned>(lines[i].row(1)[k]) << k;
      }
      rows_.push_back({a, b});
      point_mask_.push_back((std::uint64_t{1} << a) | (std::uint64_t{1} << b) | (std::uint64_t{1} << (a ^ b)));
    }
  }

  bool geometric(const std::vector<std::size_t>& s) const {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const unsigned g[4] = {rows_[s[i]][0], rows_[s[i]][1], rows_[s[j]][0], rows_[s[j]][1]};
        std::uint64_t solid = 0;
        for (unsigned c = 1; c < 16; ++c) {
          unsigned v = 0;
          for (unsigned b = 0; b < 4; ++b)
            if ((c >> b) & 1) v ^= g[b];
          solid |= std::uint64_t{1} << v;
        }
        std::uint64_t covered = 0;
        for (auto l : s)
          if ((point_mask_[l] & ~solid) == 0) covered |= point_mask_[l];
        if (covered != solid) return false;
      }
    return true;
  }

  std::pair<bool, int> linear(const std::vector<std::size_t>& s) const {
    std::vector<std::uint64_t> basis;  // echelon by highest bit
    auto reduce = [&](std::uint64_t x) {
      for (auto b : basis)
        if ((x ^ b) < x) x ^= b;
      return x;
    };
    for (auto l : s) {
      const auto x = reduce(d_->pluecker_mask(l));
      if (!x) continue;
      basis.push_back(x);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
    std::size_t inside = 0;
    for (std::size_t i = 0; i < d_->lines().size(); ++i) inside += reduce(d_->pluecker_mask(i)) == 0;
    return {inside == s.size(), static_cast<int>(basis.size()) - 1};
  }

 private:
  const LineScanData* d_;
  std::vector<std::array<unsigned, 2>> rows_;
  std::vector<std::uint64_t> point_mask_;
};

}  // namespace detail

// Forms on F_q^6 whose singular lines form a line spread of PG(5,q), with the
// geometric and linear flags of that spread. Over GF(2) the flags use a bit
// path; the first `cross_check` hits are also evaluated by the generic
// predicates and must agree.
inline SpreadClassification classify_spread_forms(SearchConfig cfg, bool allow_large_exhaustive = false,
                                                  std::size_t cross_check = 16) {
  cfg.n = 5;
  if (cfg.q != 2 && cfg.q != 3) throw Error("spread classification needs q in {2,3}");
  if (cfg.mode == SearchMode::Exhaustive && cfg.q != 2 && !allow_large_exhaustive)
    throw BudgetExceeded("exhaustive spread classification over GF(3) needs an explicit override");
  if (allow_large_exhaustive) cfg.cap = UINT64_MAX;
  const Field& f = Field::get(cfg.q);
  const auto& data = LineScanData::get(f, 5);
  std::optional<detail::Gf2SpreadPredicates> fast;
  if (cfg.q == 2) fast.emplace(data);
  std::vector<std::vector<SpreadFormHit>> per_worker(std::max(1u, cfg.workers));
  SpreadClassification out;
  out.report = for_each_form(cfg, [&](const AlternatingForm& form, FormScanner& scanner, unsigned w, std::uint64_t seq,
                                      SearchReport& rep) {
    scanner.load(form);
    auto scan = scanner.scan(true);
    ++rep.forms_tested;
    if (scan.singular_lines == 0) {
      ++rep.forms_without_singular_line;
      if (rep.witnesses.size() < cfg.witness_limit) rep.witnesses.push_back({w, seq, format_form(form)});
    }
    if (!scan.forms_spread) return;
    ++rep.forms_whose_singular_lines_form_a_spread;
    if (rep.spread_witnesses.size() < cfg.witness_limit) rep.spread_witnesses.push_back({w, seq, format_form(form)});
    SpreadFormHit hit{w, seq, format_form(form)};
    if (fast) {
      hit.geometric = fast->geometric(scan.lines);
      std::tie(hit.linear, hit.span_dim) = fast->linear(scan.lines);
    } else {
      std::vector<Subspace> lines;
      for (auto l : scan.lines) lines.push_back(data.lines()[l]);
      const LineSpread s(Subspace::whole(f, 5), std::move(lines));
      hit.geometric = is_geometric(s);
      const auto lin = is_linear(s);
      hit.linear = lin.linear;
      hit.span_dim = lin.span_dim;
    }
    per_worker[w].push_back(std::move(hit));
  });
  for (auto& v : per_worker) out.hits.insert(out.hits.end(), v.begin(), v.end());
  // Generic predicates on the first hits, as a check of the bit path.
  for (std::size_t i = 0; i < out.hits.size() && i < cross_check; ++i) {
    const auto& hit = out.hits[i];
    const LinearComplex k = LinearComplex::parse(f, 5, 2, hit.form);
    auto locus = singular_locus(k);
    const LineSpread s(Subspace::whole(f, 5), std::move(locus.subspaces));
    const auto lin = is_linear(s);
    if (is_geometric(s) != hit.geometric || lin.linear != hit.linear || lin.span_dim != hit.span_dim)
      throw InternalInconsistency("fast spread predicates disagree with the generic ones on " + hit.form);
    ++out.cross_checked;
  }
  return out;
}

}  // namespace lincx
