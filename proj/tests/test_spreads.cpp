#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "lincx/spreads.hpp"
#include "oracles.hpp"

using namespace lincx;

namespace {

const Field& F2 = Field::get(2);

TEST(Spread, FieldReductionSizes) {
  for (int m : {2, 3})
    for (unsigned q : {2u, 3u}) {
      const auto s = field_reduction_spread(m, q);
      EXPECT_EQ(s.size(), gaussian_binomial(2 * m, 1, q) / (q + 1));
      EXPECT_TRUE(is_spread(s.lines(), s.carrier()));
    }
  EXPECT_EQ(field_reduction_spread(2, 2).size(), 5u);
  EXPECT_EQ(field_reduction_spread(3, 2).size(), 21u);
  EXPECT_THROW(field_reduction_spread(1, 2), Error);
  EXPECT_THROW(field_reduction_spread(4, 2), Error);
}

TEST(Spread, NonSpreads) {
  const auto whole = Subspace::whole(F2, 3);
  const auto p = parse_subspace(F2, "0001", 3);
  std::vector<Subspace> star;
  for (const auto& l : SubspaceTable::get(F2, 3, 1).all())
    if (l.contains(p)) star.push_back(l);
  ASSERT_EQ(star.size(), 7u);
  EXPECT_FALSE(is_spread(star, whole));
  const auto plane = parse_subspace(F2, "1000;0100;0010", 3);
  EXPECT_THROW(is_spread({parse_subspace(F2, "1000;0001", 3)}, plane), ContainmentError);
  EXPECT_THROW(LineSpread(whole, star), Error);
}

TEST(Spread, DisjointFiveCover) {
  // every set of 5 pairwise disjoint lines of PG(3,2) covers the 15 points
  const auto& lines = SubspaceTable::get(F2, 3, 1).all();
  std::size_t found = 0;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (pick.size() == 5) {
      std::vector<Subspace> s;
      for (auto i : pick) s.push_back(lines[i]);
      EXPECT_TRUE(is_spread(s, Subspace::whole(F2, 3)));
      ++found;
      return;
    }
    for (std::size_t i = from; i < lines.size(); ++i) {
      bool ok = true;
      for (auto j : pick) ok = ok && meet(lines[i], lines[j]).dim() == -1;
      if (!ok) continue;
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  EXPECT_EQ(found, 56u);
}

TEST(Spread, GeometricPredicate) {
  EXPECT_TRUE(is_geometric(field_reduction_spread(2, 2)));
  EXPECT_TRUE(is_geometric(field_reduction_spread(2, 3)));
  EXPECT_TRUE(is_geometric(field_reduction_spread(3, 2)));
  EXPECT_TRUE(is_geometric(field_reduction_spread(3, 3)));
  const LineSpread s(Subspace::whole(F2, 5), fixtures::lines("nongeometric_spread.txt", F2, 5));
  EXPECT_EQ(s.size(), 21u);
  EXPECT_FALSE(is_geometric(s));
}

void check_linear_against_oracle(const LineSpread& s) {
  const Field& f = s.carrier().field();
  const int n = s.carrier().ambient();
  std::vector<Vec> images;
  std::set<Vec> image_set;
  for (const auto& l : s.lines()) {
    images.push_back(pluecker(l).coeffs());
    image_set.insert(images.back());
  }
  const auto grass = oracle::grassmann_points_in_span(f, n, images);
  std::set<Vec> in_carrier;
  for (const auto& v : grass) {
    const auto l = unpluecker(MultiVector(f, n, 2, v));
    ASSERT_TRUE(l.has_value());
    if (s.carrier().contains(*l)) in_carrier.insert(v);
  }
  const auto r = is_linear(s);
  EXPECT_EQ(r.linear, in_carrier == image_set);
  EXPECT_EQ(r.span_dim, Subspace::span(f, line_pluecker_ambient(n), images).dim());
}

TEST(Spread, LinearPredicate) {
  const auto r = is_linear(field_reduction_spread(2, 2));
  EXPECT_TRUE(r.linear);
  EXPECT_EQ(r.span_dim, 3);
  EXPECT_TRUE(is_linear(field_reduction_spread(2, 3)).linear);
  check_linear_against_oracle(field_reduction_spread(2, 2));
  check_linear_against_oracle(field_reduction_spread(2, 3));
  check_linear_against_oracle(field_reduction_spread(3, 2));
  const LineSpread bad(Subspace::whole(F2, 5), fixtures::lines("nongeometric_spread.txt", F2, 5));
  check_linear_against_oracle(bad);
  EXPECT_FALSE(is_linear(bad).linear);
}

TEST(Spread, FieldReductionPG52Recorded) {
  const auto r = is_linear(field_reduction_spread(3, 2));
  EXPECT_TRUE(r.linear);
  EXPECT_EQ(r.span_dim, 8);
}

TEST(Spread, FromComplex) {
  const auto k = LinearComplex::parse(F2, 4, 2, "012+034");
  const auto h = hyperplane_from_covector(F2, Vec{0, 0, 0, 0, 1});
  const auto raw = spread_from_complex(k, h, false);
  EXPECT_FALSE(raw.is_spread);
  for (const auto& l : raw.lines) EXPECT_TRUE(h.contains(l));
  EXPECT_THROW(spread_from_complex(k, h, true), NotSingularFree);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const LinearComplex r(oracle::random_nonzero(F2, 4, 3, rng));
    EXPECT_THROW(spread_from_complex(r, h, true), NotSingularFree);
  }
}

TEST(Spread, PointsOf) {
  EXPECT_EQ(points_of(Subspace::whole(Field::get(3), 3)).size(), 40u);
  EXPECT_TRUE(points_of(Subspace::empty(F2, 3)).empty());
}

}  // namespace
