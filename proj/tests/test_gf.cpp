#include <gtest/gtest.h>

#include "lincx/gf.hpp"

using namespace lincx;

namespace {

const unsigned kOrders[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

TEST(Field, PrimeFieldIdentity) {
  const Field& f = Field::get(2);
  EXPECT_EQ(f.characteristic(), 2u);
  EXPECT_EQ(f.degree(), 1u);
  EXPECT_EQ(f.add(1, 1), 0);
  EXPECT_EQ(f.inv(1), 1);
}

TEST(Field, ModulusIsSmallestIrreducible) {
  EXPECT_EQ(Field::get(4).modulus(), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(Field::get(8).modulus(), (std::vector<unsigned>{1, 0, 1, 1}));
  EXPECT_EQ(Field::get(9).modulus(), (std::vector<unsigned>{1, 0, 1}));
}

TEST(Field, RejectsNonPrimePowers) {
  EXPECT_THROW(Field::create(6), NotPrimePower);
  EXPECT_THROW(Field::create(12), NotPrimePower);
  EXPECT_THROW(Field::create(1), NotPrimePower);
  EXPECT_THROW(Field::create(32), Error);
}

TEST(Field, SmallExamples) {
  const Field& f3 = Field::get(3);
  EXPECT_EQ(f3.add(2, 2), 1);
  EXPECT_EQ(f3.mul(2, 2), 1);
  EXPECT_EQ(f3.inv(2), 2);
  const Field& f4 = Field::get(4);
  const Scalar x = 2, x1 = 3;
  EXPECT_EQ(f4.add(x, x), 0);
  EXPECT_EQ(f4.mul(x, x), x1);
  for (unsigned q : kOrders) EXPECT_THROW(Field::get(q).inv(0), DivisionByZero);
}

TEST(Field, AxiomsExhaustive) {
  for (unsigned q : kOrders) {
    const Field& f = Field::get(q);
    for (unsigned a = 0; a < q; ++a) {
      EXPECT_EQ(f.mul(static_cast<Scalar>(a), 1), a);
      EXPECT_EQ(f.add(static_cast<Scalar>(a), f.neg(static_cast<Scalar>(a))), 0);
      if (a) EXPECT_EQ(f.mul(static_cast<Scalar>(a), f.inv(static_cast<Scalar>(a))), 1);
      for (unsigned b = 0; b < q; ++b) {
        const Scalar sa = static_cast<Scalar>(a), sb = static_cast<Scalar>(b);
        ASSERT_EQ(f.add(sa, sb), f.add(sb, sa));
        ASSERT_EQ(f.mul(sa, sb), f.mul(sb, sa));
        ASSERT_EQ(f.add(f.sub(sa, sb), sb), sa);
        for (unsigned c = 0; c < q; ++c) {
          const Scalar sc = static_cast<Scalar>(c);
          ASSERT_EQ(f.add(f.add(sa, sb), sc), f.add(sa, f.add(sb, sc)));
          ASSERT_EQ(f.mul(f.mul(sa, sb), sc), f.mul(sa, f.mul(sb, sc)));
          ASSERT_EQ(f.mul(sa, f.add(sb, sc)), f.add(f.mul(sa, sb), f.mul(sa, sc)));
        }
      }
    }
  }
}

TEST(Field, FrobeniusIsAdditive) {
  for (unsigned q : kOrders) {
    const Field& f = Field::get(q);
    const unsigned p = f.characteristic();
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        const Scalar sa = static_cast<Scalar>(a), sb = static_cast<Scalar>(b);
        ASSERT_EQ(f.pow(f.add(sa, sb), p), f.add(f.pow(sa, p), f.pow(sb, p)));
      }
  }
}

TEST(Field, LogAntilogRoundTrip) {
  for (unsigned q : kOrders) {
    const Field& f = Field::get(q);
    for (unsigned a = 1; a < q; ++a) EXPECT_EQ(f.antilog(f.log(static_cast<Scalar>(a))), a);
    // the primitive element generates the multiplicative group
    std::vector<bool> seen(q, false);
    Scalar g = 1;
    for (unsigned i = 0; i + 1 < q; ++i, g = f.mul(g, f.primitive_element())) seen[g] = true;
    for (unsigned a = 1; a < q; ++a) EXPECT_TRUE(seen[a]);
  }
}

TEST(Element, MixedFieldsRejected) {
  Element a(Field::get(3), 2), b(Field::get(9), 2);
  EXPECT_THROW(a + b, MixedFields);
  Element c(Field::get(3), 2);
  EXPECT_EQ((a * c).value(), 1);
  EXPECT_THROW(a / Element(Field::get(3), 0), DivisionByZero);
}

}  // namespace
