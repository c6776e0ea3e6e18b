#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "lincx/search.hpp"
#include "oracles.hpp"

using namespace lincx;

namespace {

const Field& F2 = Field::get(2);

TEST(Forms, Counts) {
  EXPECT_EQ(form_count(4, 2), 1023u);
  EXPECT_EQ(form_count(5, 2), 1048575u);
  EXPECT_EQ(form_count(5, 3), (3486784401ull - 1) / 2);
  EXPECT_EQ(form_count(3, 2), 15u);
  EXPECT_FALSE(form_count(8, 2).has_value());
  EXPECT_THROW(form_count(2, 2), DimensionMismatch);
}

TEST(Forms, EnumerationCoversProjectivePoints) {
  for (const auto& [n, q] : {std::pair{4, 2u}, {3, 3u}, {3, 4u}, {4, 3u}}) {
    const Field& f = Field::get(q);
    const auto count = *form_count(n, q);
    std::set<Vec> seen;
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto form = form_at(f, n, i);
      ASSERT_EQ(form.normalized(), form);
      seen.insert(form.coeffs());
    }
    EXPECT_EQ(seen.size(), count);
    EXPECT_THROW(form_at(f, n, count), Error);
  }
  EXPECT_EQ(format_form(form_at(F2, 4, 0)), "012");
}

TEST(Scan, ExampleWitness) {
  const auto form = parse_form(F2, 3, 3, "012");
  EXPECT_TRUE(has_singular_line(form));
  const auto& data = LineScanData::get(F2, 3);
  FormScanner s(data);
  s.load(form);
  const auto w = data.lines().index_of(parse_subspace(F2, "1000;0001", 3));
  EXPECT_TRUE(s.singular(w));
  EXPECT_THROW(has_singular_line(AlternatingForm(F2, 3, 3)), Error);
}

// Fast scan agrees with the singular locus and with brute contraction.
void check_scan(const Field& f, int n, int forms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& data = LineScanData::get(f, n);
  FormScanner fast(data), slow(data, false);
  for (int trial = 0; trial < forms; ++trial) {
    const auto form = random_form(f, n, rng);
    fast.load(form);
    slow.load(form);
    const auto a = fast.scan(true);
    const auto b = slow.scan(true);
    ASSERT_EQ(a.lines, b.lines);
    ASSERT_EQ(a.forms_spread, b.forms_spread);
    const auto loc = singular_locus(LinearComplex(form));
    ASSERT_EQ(a.singular_lines, loc.subspaces.size()) << format_form(form);
    ASSERT_EQ(has_singular_line(form), !loc.subspaces.empty());
    for (std::size_t i = 0; i < a.lines.size(); ++i) ASSERT_EQ(data.lines()[a.lines[i]], loc.subspaces[i]);
    const bool spread = loc.subspaces.size() * (f.order() + 1) == data.point_count() &&
                        is_spread(loc.subspaces, Subspace::whole(f, n));
    ASSERT_EQ(a.forms_spread, spread);
  }
}

TEST(Scan, FastPathMatchesSingularLocus) {
  check_scan(F2, 3, 2000, 1);
  check_scan(F2, 4, 10000, 2);
  check_scan(F2, 5, 10000, 3);
  check_scan(Field::get(3), 4, 2000, 4);
  check_scan(Field::get(3), 5, 200, 5);
  check_scan(Field::get(4), 4, 500, 6);
}

TEST(Scan, FastPathMatchesAtLargerN) {
  check_scan(F2, 6, 1000, 7);
  check_scan(F2, 8, 20, 8);
}

TEST(Scan, CovectorsMatchContraction) {
  std::mt19937_64 rng(9);
  for (unsigned q : {2u, 3u, 5u}) {
    const Field& f = Field::get(q);
    const auto& data = LineScanData::get(f, 4);
    FormScanner s(data);
    for (int trial = 0; trial < 50; ++trial) {
      const auto form = random_form(f, 4, rng);
      s.load(form);
      for (std::size_t i = 0; i < data.lines().size(); ++i) {
        const auto& l = data.lines()[i];
        ASSERT_EQ(s.singular(i), is_zero(contract(form, pluecker(l))));
        // brute: f(b0, b1, e_k) = 0 for every k
        bool zero = true;
        for (int k = 0; k <= 4; ++k) {
          Vec e(5, 0);
          e[k] = 1;
          zero = zero && oracle::evaluate(form, {l.rows()[0], l.rows()[1], e}) == 0;
        }
        ASSERT_EQ(s.singular(i), zero);
      }
    }
  }
}

TEST(Search, ExhaustivePG42HasNoHits) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.q = 2;
  const auto r = search_no_singular(cfg);
  EXPECT_EQ(r.forms_tested, 1023u);
  EXPECT_EQ(r.forms_without_singular_line, 0u);
  EXPECT_TRUE(r.witnesses.empty());
  cfg.workers = 3;
  const auto r3 = search_no_singular(cfg);
  EXPECT_EQ(r3.forms_tested, 1023u);
  EXPECT_EQ(r3.forms_whose_singular_lines_form_a_spread, r.forms_whose_singular_lines_form_a_spread);
}

TEST(Search, WorkerRangesPartitionTheEnumeration) {
  for (unsigned w : {1u, 2u, 3u, 7u, 64u}) {
    std::uint64_t next = 0;
    for (unsigned i = 0; i < w; ++i) {
      const auto [b, e] = worker_range(1000, w, i);
      EXPECT_EQ(b, next);
      next = e;
    }
    EXPECT_EQ(next, 1000u);
    std::uint64_t total = 0;
    for (unsigned i = 0; i < w; ++i) total += worker_budget(1001, w, i);
    EXPECT_EQ(total, 1001u);
  }
}

TEST(Search, RandomModeIsDeterministic) {
  SearchConfig cfg;
  cfg.n = 5;
  cfg.q = 3;
  cfg.mode = SearchMode::Random;
  cfg.budget = 300;
  cfg.seed = 42;
  cfg.workers = 3;
  const auto a = search_no_singular(cfg);
  const auto b = search_no_singular(cfg);
  EXPECT_EQ(a.forms_tested, 300u);
  EXPECT_EQ(a.forms_without_singular_line, b.forms_without_singular_line);
  EXPECT_EQ(a.forms_whose_singular_lines_form_a_spread, b.forms_whose_singular_lines_form_a_spread);
  ASSERT_EQ(a.spread_witnesses.size(), b.spread_witnesses.size());
  for (std::size_t i = 0; i < a.spread_witnesses.size(); ++i) EXPECT_EQ(a.spread_witnesses[i].form, b.spread_witnesses[i].form);
  std::mt19937_64 r1 = detail::worker_rng(1, 0), r2 = detail::worker_rng(1, 1);
  EXPECT_NE(r1(), r2());
}

TEST(Search, RandomSamplingIsUniformOverGF2) {
  std::mt19937_64 rng = detail::worker_rng(3, 0);
  std::vector<int> hist(16, 0);
  for (int i = 0; i < 16000; ++i) {
    const auto f = random_form(F2, 3, rng);
    unsigned code = 0;
    for (std::size_t t = 0; t < 4; ++t) code |= static_cast<unsigned>(f[t]) << t;
    ++hist[code];
  }
  EXPECT_EQ(hist[0], 0);
  for (unsigned c = 1; c < 16; ++c) EXPECT_NEAR(hist[c], 16000 / 15, 150);
}

TEST(Search, CapEnforced) {
  SearchConfig cfg;
  cfg.n = 6;
  cfg.q = 2;
  EXPECT_THROW(search_no_singular(cfg), BudgetExceeded);
  cfg.n = 8;
  EXPECT_THROW(search_no_singular(cfg), BudgetExceeded);
}

TEST(Search, PG62SampleHasNoHits) {
  SearchConfig cfg;
  cfg.n = 6;
  cfg.q = 2;
  cfg.mode = SearchMode::Random;
  cfg.budget = 2000;
  cfg.workers = 2;
  const auto r = search_no_singular(cfg);
  EXPECT_EQ(r.forms_tested, 2000u);
  EXPECT_EQ(r.forms_without_singular_line, 0u);
}

TEST(Search, HitCheckOnSingularComplexReportsFailure) {
  const auto r = check_singular_free_hit(parse_form(F2, 4, 3, "012+034"));
  EXPECT_FALSE(r.partition_ok);
  EXPECT_FALSE(r.failure.empty());
}

TEST(Classify, Preconditions) {
  SearchConfig cfg;
  cfg.q = 3;
  EXPECT_THROW(classify_spread_forms(cfg), BudgetExceeded);
  cfg.q = 4;
  EXPECT_THROW(classify_spread_forms(cfg), Error);
}

TEST(Classify, BitPredicatesMatchGeneric) {
  const auto& data = LineScanData::get(F2, 5);
  detail::Gf2SpreadPredicates fast(data);
  auto index_of = [&](const LineSpread& s) {
    std::vector<std::size_t> out;
    for (const auto& l : s.lines()) out.push_back(data.lines().index_of(l));
    return out;
  };
  const auto reg = field_reduction_spread(3, 2);
  const LineSpread bad(Subspace::whole(F2, 5), fixtures::lines("nongeometric_spread.txt", F2, 5));
  for (const auto* s : {&reg, &bad}) {
    const auto idx = index_of(*s);
    EXPECT_EQ(fast.geometric(idx), is_geometric(*s));
    const auto [lin, dim] = fast.linear(idx);
    const auto slow = is_linear(*s);
    EXPECT_EQ(lin, slow.linear);
    EXPECT_EQ(dim, slow.span_dim);
  }
}

TEST(Classify, RandomSampleAtQ2) {
  SearchConfig cfg;
  cfg.q = 2;
  cfg.mode = SearchMode::Random;
  cfg.budget = 20000;
  cfg.seed = 5;
  cfg.workers = 2;
  const auto c = classify_spread_forms(cfg);
  EXPECT_EQ(c.report.forms_tested, 20000u);
  EXPECT_EQ(c.hits.size(), c.report.forms_whose_singular_lines_form_a_spread);
  EXPECT_GT(c.hits.size(), 0u);
  EXPECT_EQ(c.cross_checked, std::min<std::size_t>(16, c.hits.size()));
  for (const auto& h : c.hits) EXPECT_TRUE(h.geometric) << h.form;
}

TEST(Classify, RandomSampleAtQ3) {
  SearchConfig cfg;
  cfg.q = 3;
  cfg.mode = SearchMode::Random;
  cfg.budget = 300;
  cfg.seed = 5;
  const auto c = classify_spread_forms(cfg);
  EXPECT_EQ(c.report.forms_tested, 300u);
  for (const auto& h : c.hits) EXPECT_TRUE(h.geometric) << h.form;
}

}  // namespace
