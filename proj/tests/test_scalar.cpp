#include <gtest/gtest.h>

#include "support.hpp"

using namespace hh;

TEST(Scalar, RationalCanonicalForm) {
  const Field q = Field::rationals();
  EXPECT_EQ(q.from_ratio(6, -4).to_string(), "-3/2");
  EXPECT_EQ(q.parse("10/4"), q.from_ratio(5, 2));
  EXPECT_EQ(q.parse("-0/7").to_string(), "0");
  EXPECT_EQ(q.from_int(7).to_string(), "7");
  EXPECT_EQ((q.from_ratio(1, 3) + q.from_ratio(1, 6)).to_string(), "1/2");
}

TEST(Scalar, PrimeFieldResidues) {
  const Field f5 = Field::prime(5);
  EXPECT_EQ(f5.from_int(-1).to_string(), "4");
  EXPECT_EQ(f5.from_int(2).inverse(), f5.from_int(3));
  EXPECT_EQ(f5.parse("1/2"), f5.from_int(3));
  EXPECT_EQ(f5.from_int(2).pow(4), f5.one());
  EXPECT_EQ(f5.from_int(2).pow(-1), f5.from_int(3));
  EXPECT_THROW(f5.parse("1/5"), std::invalid_argument);
  EXPECT_THROW(Field::prime(6), std::invalid_argument);
}

TEST(Scalar, DivisionByZeroAndFieldMismatch) {
  const Field q = Field::rationals();
  const Field f7 = Field::prime(7);
  EXPECT_THROW(q.zero().inverse(), std::domain_error);
  EXPECT_THROW(f7.one() + q.one(), std::domain_error);
  EXPECT_THROW(q.parse("1/0"), std::invalid_argument);
  EXPECT_THROW(q.parse("x"), std::invalid_argument);
}

TEST(Scalar, FromRationalReducesModP) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(f7.from_rational(mpq_class(3, 2)), f7.from_int(3) * f7.from_int(2).inverse());
  EXPECT_EQ(f7.from_rational(mpq_class(-1, 3)), f7.from_int(2));
}

TEST(Scalar, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-30, 30);
  for (const Field k : {Field::rationals(), Field::prime(3), Field::prime(101)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Scalar a = k.from_ratio(d(rng), d(rng) == 0 ? 1 : 11);
      const Scalar b = k.from_int(d(rng));
      const Scalar c = k.from_ratio(d(rng), 13);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a - a, k.zero());
      if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    }
  }
}

TEST(Scalar, KoszulSignParity) {
  const Field q = Field::rationals();
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const bool odd = ((a * b) % 2 + 2) % 2 == 1;
      EXPECT_EQ(koszul_sign(a, b, q), odd ? -q.one() : q.one());
      EXPECT_EQ(koszul_sign(a, b, q), koszul_sign(b, a, q));
    }
  EXPECT_EQ(sign_power(-3, q), -q.one());
}


// (g (x) h)(g' (x) h') = (-1)^{|h||g'|} (g g') (x) (h h')
TEST(Scalar, KoszulLawOnRandomGradedCompositions) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(-2, 2);
  for (const Field k : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::vector<int> v0{0, 1, 1, 2}, v1{-1, 0, 1, 2, 3}, w0{0, 1, 2}, w1{-2, -1, 0, 1, 2, 3, 4};
      const int dg1 = deg(rng), dh1 = deg(rng);
      const test::GradedMap g1 = test::random_map(dg1, v0, v1, k, rng);
      const test::GradedMap h1 = test::random_map(dh1, w0, w1, k, rng);
      const test::GradedMap g2 = test::random_map(deg(rng), v1, v1, k, rng);
      const test::GradedMap h2 = test::random_map(deg(rng), w1, w1, k, rng);
      const test::GradedMap lhs = test::compose(test::tensor(g2, h2, k), test::tensor(g1, h1, k), k);
      const test::GradedMap rhs = test::tensor(test::compose(g2, g1, k), test::compose(h2, h1, k), k);
      const Scalar s = koszul_sign(h2.degree, g1.degree, k);
      for (std::size_t c = 0; c < lhs.cols.size(); ++c)
        for (std::size_t r = 0; r < lhs.cols[c].size(); ++r) ASSERT_EQ(lhs.cols[c][r], s * rhs.cols[c][r]);
    }
  }
}
