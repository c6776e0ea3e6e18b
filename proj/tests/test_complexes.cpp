#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lincx/complexes.hpp"
#include "oracles.hpp"

using namespace lincx;

namespace {

const Field& F2 = Field::get(2);

LinearComplex symplectic() { return LinearComplex::parse(F2, 3, 1, "01+23"); }

Subspace sub(const Field& f, int n, const char* lit) { return parse_subspace(f, lit, n); }

std::vector<LinearComplex> all_complexes(const Field& f, int n, int h) {
  std::vector<LinearComplex> out;
  const auto dim = binomial(n + 1, h + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= f.order();
  std::set<Vec> seen;
  for (std::uint64_t code = 1; code < total; ++code) {
    auto form = oracle::form_from_index(f, n, h + 1, code);
    form.normalize();
    if (seen.insert(form.coeffs()).second) out.emplace_back(form);
  }
  return out;
}

TEST(Complex, Membership) {
  const auto k = symplectic();
  EXPECT_EQ(member_count(k), 15u);
  std::size_t brute = 0;
  for (const auto& l : SubspaceTable::get(F2, 3, 1).all()) brute += oracle::member(k.form(), l);
  EXPECT_EQ(brute, 15u);
  const auto k2 = LinearComplex::parse(F2, 3, 2, "012");
  EXPECT_FALSE(k2.contains(sub(F2, 3, "1000;0100;0010")));
  EXPECT_THROW(k2.contains(sub(F2, 3, "1000;0100")), DimensionMismatch);
  EXPECT_THROW(LinearComplex(AlternatingForm(F2, 3, 2)), Error);
}

TEST(Complex, MembershipMatchesEvaluationAndScaling) {
  std::mt19937_64 rng(7);
  for (unsigned q : {2u, 3u, 4u}) {
    const Field& f = Field::get(q);
    for (int trial = 0; trial < 20; ++trial) {
      const auto form = oracle::random_nonzero(f, 4, 3, rng);
      const LinearComplex k(form);
      for (Scalar s = 1; s < q; ++s) EXPECT_EQ(member_mask(LinearComplex(form.scaled(s))), member_mask(k));
      for (const auto& x : SubspaceTable::get(f, 4, 2).all()) ASSERT_EQ(k.contains(x), oracle::member(form, x));
    }
  }
}

TEST(Prime, HyperplaneSectionsArePrime) {
  for (const auto& [n, h] : {std::pair{3, 1}, {3, 2}, {4, 1}}) {
    for (const auto& k : all_complexes(F2, n, h)) EXPECT_TRUE(is_prime(F2, n, h, member_mask(k)));
  }
  const Field& f3 = Field::get(3);
  for (const auto& k : all_complexes(f3, 3, 1)) EXPECT_TRUE(is_prime(f3, 3, 1, member_mask(k)));
}

TEST(Prime, NonPrimeSets) {
  const auto& lines = SubspaceTable::get(F2, 3, 1);
  EXPECT_FALSE(is_prime(F2, 3, 1, std::vector<bool>(lines.size(), true)));
  std::mt19937_64 rng(2);
  int rejected = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Subspace> set(lines.all());
    std::shuffle(set.begin(), set.end(), rng);
    set.erase(set.begin() + 10, set.end());
    rejected += !is_prime(set, F2, 3, 1);
  }
  EXPECT_EQ(rejected, 50);
  const auto check = check_prime(F2, 3, 1, std::vector<bool>(lines.size(), false));
  EXPECT_FALSE(check.prime);
  EXPECT_TRUE(check.failing_pencil.has_value());
}

TEST(Complex, FromMembersRecoversForm) {
  std::mt19937_64 rng(3);
  const Field& f = Field::get(3);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearComplex k(oracle::random_nonzero(f, 4, 3, rng));
    EXPECT_EQ(complex_from_members(f, 4, 2, member_mask(k)), k);
  }
}

TEST(Restrict, SymplecticAtAPoint) {
  const auto k = symplectic();
  for (const auto& p : SubspaceTable::get(F2, 3, 0).all()) {
    const auto r = restrict(k, p, Subspace::whole(F2, 3));
    ASSERT_TRUE(std::holds_alternative<LinearComplex>(r));
    const auto& kp = std::get<LinearComplex>(r);
    EXPECT_EQ(kp.h(), 0);
    EXPECT_EQ(kp.ambient(), 2);
    EXPECT_EQ(member_count(kp), 3u);
    const auto ic = interval_coords(p, Subspace::whole(F2, 3));
    for (const auto& pt : SubspaceTable::get(F2, 2, 0).all()) EXPECT_EQ(kp.contains(pt), k.contains(ic.from_coords(pt)));
  }
}

TEST(Restrict, SingularGivesAllAndErrors) {
  const auto k = LinearComplex::parse(F2, 3, 2, "012");
  const auto u = sub(F2, 3, "1000;0001");
  EXPECT_TRUE(std::holds_alternative<AllMembers>(restrict(k, u, Subspace::whole(F2, 3))));
  EXPECT_THROW(restrict(symplectic(), sub(F2, 3, "0100"), sub(F2, 3, "1000;0010;0001")), ContainmentError);
  EXPECT_THROW(restrict(k, sub(F2, 3, "0100"), sub(F2, 3, "1000;0100;0010")), DimensionMismatch);
}

TEST(Polar, Examples) {
  const auto k = LinearComplex::parse(F2, 3, 2, "012");
  const auto hp = polar_hyperplane(k, sub(F2, 3, "1000;0100"));
  ASSERT_TRUE(std::holds_alternative<Subspace>(hp));
  EXPECT_EQ(std::get<Subspace>(hp), hyperplane_from_covector(F2, Vec{0, 0, 1, 0}));
  EXPECT_TRUE(std::holds_alternative<Singular>(polar_hyperplane(k, sub(F2, 3, "1000;0001"))));
  const auto s = polar_hyperplane(symplectic(), sub(F2, 3, "1000"));
  EXPECT_EQ(std::get<Subspace>(s), hyperplane_from_covector(F2, Vec{0, 1, 0, 0}));
  EXPECT_THROW(polar_hyperplane(k, sub(F2, 3, "1000")), DimensionMismatch);
}

void check_polar_oracle(const LinearComplex& k) {
  for (const auto& u : SubspaceTable::get(k.field(), k.ambient(), k.h() - 1).all()) {
    const auto fast = polar_hyperplane(k, u);
    const auto slow = oracle::polar_by_union(k, u);
    ASSERT_EQ(std::holds_alternative<Singular>(fast), !slow.has_value()) << k.literal() << " at " << format_subspace(u);
    if (slow) {
      ASSERT_EQ(std::get<Subspace>(fast), *slow);
      ASSERT_TRUE(slow->contains(u));
    }
  }
}

TEST(Polar, ContractionMatchesUnionOracle) {
  for (const auto& [n, h] : {std::pair{3, 1}, {3, 2}}) {
    for (const auto& k : all_complexes(F2, n, h)) check_polar_oracle(k);
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) check_polar_oracle(LinearComplex(oracle::random_nonzero(F2, 4, 3, rng)));
  const Field& f3 = Field::get(3);
  for (int trial = 0; trial < 5; ++trial) check_polar_oracle(LinearComplex(oracle::random_nonzero(f3, 4, 3, rng)));
}

TEST(Singular, Examples) {
  const auto s = singular_locus(symplectic());
  EXPECT_TRUE(s.subspaces.empty());
  EXPECT_EQ(s.kernel.dim(), -1);
  const auto k = LinearComplex::parse(F2, 3, 2, "012");
  const auto loc = singular_locus(k);
  EXPECT_EQ(loc.kernel.dim(), 2);
  ASSERT_EQ(loc.subspaces.size(), 7u);
  const auto e3 = sub(F2, 3, "0001");
  for (const auto& l : loc.subspaces) EXPECT_TRUE(l.contains(e3));
  EXPECT_EQ(loc.subspaces, oracle::singular_brute(k));
}

void check_singular(const LinearComplex& k) {
  const auto loc = singular_locus(k);
  const int n = k.ambient(), h = k.h();
  const int big = static_cast<int>(binomial(n + 1, h));
  ASSERT_GE(loc.kernel.dim(), big - (n + 2));
  ASSERT_LE(loc.kernel.dim(), big - (h + 2));
  std::set<Subspace> sing(loc.subspaces.begin(), loc.subspaces.end());
  // pencil closure: two singular members of a pencil force the third
  const auto& inc = IncidenceTable::get(k.field(), n, h - 1);
  for (const auto& p : inc.pencils()) {
    std::size_t c = 0;
    for (auto m : p.members) c += sing.count(inc.members()[m]);
    ASSERT_TRUE(c <= 1 || c == p.members.size());
  }
}

TEST(Singular, BoundsAndPencilClosure) {
  for (const auto& k : all_complexes(F2, 4, 2)) check_singular(k);
  for (const auto& k : all_complexes(F2, 3, 1)) check_singular(k);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) check_singular(LinearComplex(oracle::random_nonzero(Field::get(3), 4, 3, rng)));
}

TEST(Singular, MatchesBruteForce) {
  for (const auto& k : all_complexes(F2, 3, 2)) EXPECT_EQ(singular_locus(k).subspaces, oracle::singular_brute(k));
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearComplex k(oracle::random_nonzero(F2, 4, 3, rng));
    EXPECT_EQ(singular_locus(k).subspaces, oracle::singular_brute(k));
  }
}

// Every (h-2)-subspace lies in a singular (h-1)-subspace when n-h is odd.
bool parity_holds(const LinearComplex& k) {
  const auto loc = singular_locus(k);
  for (const auto& w : SubspaceTable::get(k.field(), k.ambient(), k.h() - 2).all()) {
    bool found = false;
    for (const auto& u : loc.subspaces)
      if (u.contains(w)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

TEST(Parity, OddCodimensionExhaustive) {
  for (const auto& k : all_complexes(F2, 3, 2)) EXPECT_TRUE(parity_holds(k)) << k.literal();
  for (const auto& k : all_complexes(F2, 4, 3)) EXPECT_TRUE(parity_holds(k)) << k.literal();
  for (const auto& k : all_complexes(Field::get(3), 3, 2)) EXPECT_TRUE(parity_holds(k)) << k.literal();
}

TEST(Parity, OddCodimensionSampled) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const LinearComplex k(oracle::random_nonzero(F2, 5, 3, rng));
    EXPECT_TRUE(parity_holds(k)) << k.literal();
  }
}

TEST(Parity, EvenCodimensionCounterexample) {
  // n-h = 2: a point off every singular line exists
  const auto k = LinearComplex::parse(F2, 4, 2, "012+034");
  EXPECT_FALSE(parity_holds(k));
}

TEST(Pole, Examples) {
  const auto k = symplectic();
  const auto v = sub(F2, 3, "1000;0100;0010");
  const auto p = pole(k, v);
  ASSERT_TRUE(std::holds_alternative<Subspace>(p));
  EXPECT_EQ(std::get<Subspace>(p), sub(F2, 3, "0010"));
  EXPECT_TRUE(std::holds_alternative<Total>(pole(LinearComplex::parse(F2, 3, 1, "23"), v)));
  EXPECT_THROW(pole(k, sub(F2, 3, "1000;0100")), DimensionMismatch);
}

void check_pole(const LinearComplex& k) {
  for (const auto& v : SubspaceTable::get(k.field(), k.ambient(), k.h() + 1).all()) {
    const auto fast = pole(k, v);
    const auto slow = oracle::pole_brute(k, v);
    ASSERT_FALSE(std::holds_alternative<std::monostate>(slow));
    ASSERT_EQ(std::holds_alternative<Total>(fast), std::holds_alternative<Total>(slow));
    if (const auto* p = std::get_if<Subspace>(&fast)) {
      ASSERT_EQ(*p, std::get<Subspace>(slow));
      ASSERT_TRUE(v.contains(*p));
    }
  }
}

TEST(Pole, MatchesBruteForceAtQ3) {
  const Field& f3 = Field::get(3);
  for (const auto& k : all_complexes(f3, 3, 1)) check_pole(k);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) check_pole(LinearComplex(oracle::random_nonzero(f3, 4, 3, rng)));
  for (const auto& k : all_complexes(F2, 3, 0)) check_pole(k);
}

TEST(Total, Examples) {
  EXPECT_TRUE(total_subspaces(symplectic()).empty());
  const auto t = total_subspaces(LinearComplex::parse(F2, 3, 1, "23"));
  const std::set<Subspace> got(t.begin(), t.end());
  EXPECT_TRUE(got.count(hyperplane_from_covector(F2, Vec{0, 0, 0, 1})));
  EXPECT_TRUE(got.count(hyperplane_from_covector(F2, Vec{0, 0, 1, 0})));
}

std::vector<bool> as_flags(const ProductResult& r, const Field& f, int n, int h) {
  if (std::holds_alternative<AllMembers>(r)) return std::vector<bool>(SubspaceTable::get(f, n, h).size(), true);
  return member_mask(std::get<LinearComplex>(r));
}

void check_total_is_intersection(const LinearComplex& k) {
  const Field& f = k.field();
  const int n = k.ambient();
  const auto& table = SubspaceTable::get(f, n, k.h() + 1);
  std::vector<bool> meet_all(table.size(), true);
  for (int i = 0; i <= n; ++i) {
    Vec e(static_cast<std::size_t>(n + 1), 0);
    e[i] = 1;
    const auto flags = as_flags(product(k, hyperplane_from_covector(f, e)), f, n, k.h() + 1);
    for (std::size_t j = 0; j < flags.size(); ++j) meet_all[j] = meet_all[j] && flags[j];
  }
  std::vector<bool> total(table.size(), false);
  for (const auto& v : total_subspaces(k)) total[table.index_of(v)] = true;
  ASSERT_EQ(meet_all, total) << k.literal();
}

TEST(Product, PrimeAndTotalIntersection) {
  const auto k = symplectic();
  for (const auto& h : SubspaceTable::get(F2, 3, 2).all()) {
    const auto r = product(k, h);
    ASSERT_TRUE(std::holds_alternative<LinearComplex>(r));
    EXPECT_TRUE(is_prime(F2, 3, 2, member_mask(std::get<LinearComplex>(r))));
  }
  for (const auto& c : all_complexes(F2, 3, 1)) check_total_is_intersection(c);
  for (const auto& c : all_complexes(F2, 3, 0)) check_total_is_intersection(c);
  // h = 0: the planes... lines meeting H0 ∩ H
  const auto pc = LinearComplex::parse(F2, 3, 0, "0");
  const auto h = hyperplane_from_covector(F2, Vec{0, 1, 0, 0});
  const auto r = product(pc, h);
  const auto& kh = std::get<LinearComplex>(r);
  const auto axis = meet(h, hyperplane_from_covector(F2, Vec{1, 0, 0, 0}));
  for (const auto& l : SubspaceTable::get(F2, 3, 1).all()) EXPECT_EQ(kh.contains(l), meet(l, axis).dim() >= 0);
  // a total hyperplane gives ALL
  EXPECT_TRUE(std::holds_alternative<AllMembers>(product(pc, hyperplane_from_covector(F2, Vec{1, 0, 0, 0}))));
}

TEST(Polarity, RoundTrip) {
  for (const auto& lit : {"01+23", "01", "02+13+23"}) {
    const auto k = LinearComplex::parse(F2, 3, 1, lit);
    const auto chi = up_polarity(k);
    EXPECT_TRUE(verify_null_polarity(chi));
    EXPECT_EQ(from_polarity(chi), k);
  }
  const auto k = LinearComplex::parse(F2, 3, 2, "012");
  EXPECT_EQ(from_polarity(up_polarity(k)), k);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const LinearComplex r(oracle::random_nonzero(Field::get(3), 4, 3, rng));
    EXPECT_EQ(from_polarity(up_polarity(r)), r);
  }
}

TEST(Polarity, InvalidTables) {
  const auto hp = hyperplane_from_covector(F2, Vec{1, 0, 0, 0});
  PolarMap fixed{&F2, 3, 0, std::vector<PolarValue>(15, hp)};
  EXPECT_FALSE(verify_null_polarity(fixed));
  EXPECT_THROW(from_polarity(fixed), InvalidPolarity);

  auto chi = up_polarity(symplectic());
  chi.table[0] = Singular{};
  const auto r1 = check_null_polarity(chi);
  EXPECT_FALSE(r1.ok);
  EXPECT_TRUE(r1.witness_pencil.has_value());

  chi = up_polarity(symplectic());
  const auto& inc = IncidenceTable::get(F2, 3, 0);
  const auto& pen = inc.pencils().front();
  chi.table[pen.members[0]] = Singular{};
  chi.table[pen.members[1]] = Singular{};
  EXPECT_FALSE(verify_null_polarity(chi));

  PolarMap none{&F2, 3, 0, std::vector<PolarValue>(15, Singular{})};
  const auto r2 = check_null_polarity(none);
  EXPECT_FALSE(r2.domain_nonempty);
  EXPECT_THROW(from_polarity(none), InvalidPolarity);
}

TEST(Polarity, ImageSpan) {
  EXPECT_EQ(image_span_dim(symplectic()), 3);
  EXPECT_GE(image_span_dim(LinearComplex::parse(F2, 3, 2, "012")), 2);
  for (const auto& k : all_complexes(F2, 4, 2)) ASSERT_GE(image_span_dim(k), 2);
}

TEST(Projection, SingularLinesOfQuotientLift) {
  // complexes of solids in PG(5,2), restricted at a point
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const LinearComplex k(oracle::random_nonzero(F2, 5, 4, rng));
    const auto sing = singular_locus(k).subspaces;
    const std::set<Subspace> s(sing.begin(), sing.end());
    const auto whole = Subspace::whole(F2, 5);
    for (const auto& w : SubspaceTable::get(F2, 5, 0).all()) {
      const auto r = restrict(k, w, whole);
      if (std::holds_alternative<AllMembers>(r)) continue;
      const auto ic = interval_coords(w, whole);
      for (const auto& l : singular_locus(std::get<LinearComplex>(r)).subspaces) ASSERT_TRUE(s.count(ic.from_coords(l)));
    }
  }
}

}  // namespace
