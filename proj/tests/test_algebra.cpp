#include <gtest/gtest.h>

#include "hh/algebra.hpp"
#include "support.hpp"

using namespace hh;

TEST(Algebra, TruncatedPolynomialTable) {
  const Field q = Field::rationals();
  const auto a = truncated_polynomial(q, 3, "x");
  ASSERT_EQ(a->dim(), 3u);
  EXPECT_EQ(a->labels(), (std::vector<std::string>{"1", "x", "x^2"}));
  EXPECT_EQ(a->degree(2).to_string(), "[2]");
  EXPECT_TRUE(a->product(2, 1).empty());
  ASSERT_EQ(a->product(1, 1).size(), 1u);
  EXPECT_EQ(a->product(1, 1)[0].index, 2u);
  EXPECT_TRUE(validate(*a).ok());
  EXPECT_EQ(truncated_polynomial_order(*a), 3u);
}

TEST(Algebra, ElementArithmeticAndText) {
  const Field q = Field::rationals();
  const auto a = truncated_polynomial(q, 3, "x");
  const AlgebraElement x = AlgebraElement::basis(a, 1, q.one());
  const AlgebraElement e = AlgebraElement::unit(a) + x.scaled(q.from_ratio(-1, 3));
  EXPECT_EQ(e.to_string(), "1*1 + -1/3*x");
  EXPECT_EQ(multiply(e, e).to_string(), "1*1 + -2/3*x + 1/9*x^2");
  EXPECT_EQ(AlgebraElement(a).to_string(), "0");
}

TEST(Algebra, ElementDegrees) {
  const Field q = Field::rationals();
  const auto a = truncated_polynomial(q, 2, "x");
  const AlgebraElement x = AlgebraElement::basis(a, 1, q.one());
  const auto dx = element_degree(x);
  ASSERT_TRUE(dx.is_homogeneous());
  EXPECT_EQ(dx.degree.to_string(), "[1]");
  EXPECT_EQ(element_degree(AlgebraElement::unit(a) + x).kind, ElementDegree::Kind::inhomogeneous);
  EXPECT_EQ(element_degree(AlgebraElement(a)).kind, ElementDegree::Kind::zero);
}

TEST(Algebra, ValidateFindsBrokenTables) {
  const Field q = Field::rationals();
  const auto g = GradingGroup::make(1);
  // x*x = 1 with |x| = 1 is not graded
  test::DenseTable t(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2, q.zero())));
  t[0][0][0] = q.one();
  t[0][1][1] = q.one();
  t[1][0][1] = q.one();
  t[1][1][0] = q.one();
  const auto bad = test::from_dense(q, g, {"1", "x"}, {Degree(g, {0}), Degree(g, {1})}, 0, t);
  EXPECT_FALSE(validate(*bad).ok());
  // missing unit law
  t[1][1][0] = q.zero();
  t[1][0][1] = q.zero();
  const auto no_unit = test::from_dense(q, g, {"1", "x"}, {Degree(g, {0}), Degree(g, {1})}, 0, t);
  EXPECT_FALSE(validate(*no_unit).ok());
}

TEST(Algebra, ValidateFindsNonAssociativity) {
  const Field q = Field::rationals();
  const auto g = GradingGroup::make(0);
  const Degree z = Degree::zero(g);
  // basis 1, a, b with a a = b, a b = 0, b a = a: (a a) a = b a = a but a (a a) = a b = 0
  test::DenseTable t(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, q.zero())));
  for (std::size_t i = 0; i < 3; ++i) t[0][i][i] = t[i][0][i] = q.one();
  t[1][1][2] = q.one();
  t[2][1][1] = q.one();
  const auto a = test::from_dense(q, g, {"1", "a", "b"}, {z, z, z}, 0, t);
  EXPECT_FALSE(validate(*a).ok());
}

// t = 1 gives the plain tensor product (a (x) b)(a' (x) b') = aa' (x) bb'.
TEST(Algebra, TrivialTwistIsPlainTensorProduct) {
  const Field q = Field::rationals();
  const auto a = truncated_polynomial(q, 3, "x");
  const auto b = truncated_polynomial(q, 2, "y");
  const auto c = twisted_tensor_algebra(a, b, Bicharacter::trivial(a->group(), b->group(), q));
  const auto ta = test::to_dense(*a);
  const auto tb = test::to_dense(*b);
  const auto tc = test::to_dense(*c);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i2 = 0; i2 < 3; ++i2)
        for (std::size_t j2 = 0; j2 < 2; ++j2)
          for (std::size_t l = 0; l < 3; ++l)
            for (std::size_t m = 0; m < 2; ++m)
              ASSERT_EQ(tc[i * 2 + j][i2 * 2 + j2][l * 2 + m], ta[i][i2][l] * tb[j][j2][m]);
  EXPECT_EQ(c->label(3), "x.y");
  EXPECT_EQ(c->group()->signature(), "Z^2");
}

TEST(Algebra, TwistedProductSigns) {
  const Field q = Field::rationals();
  const auto a = truncated_polynomial(q, 2, "x");
  const auto b = truncated_polynomial(q, 2, "y");
  const auto c = twisted_tensor_algebra(a, b, Bicharacter::uniform(a->group(), b->group(), q.from_int(-1)));
  const AlgebraElement x = AlgebraElement::basis(c, 2, q.one());  // x.1
  const AlgebraElement y = AlgebraElement::basis(c, 1, q.one());  // 1.y
  // (1 (x) y)(x (x) 1) = t^<|x|,|y|> x (x) y = -x.y, (x (x) 1)(1 (x) y) = x.y
  EXPECT_EQ(multiply(y, x).to_string(), "-1*x.y");
  EXPECT_EQ(multiply(x, y).to_string(), "1*x.y");
  EXPECT_TRUE(validate(*c).ok());
}

// Random small twisted tensor products over F_p always validate and are graded.
TEST(Algebra, RandomTwistedTensorProductsValidate) {
  test::Rng rng(5);
  const Field f7 = Field::prime(7);
  const auto z = GradingGroup::make(1);
  const auto zc = GradingGroup::make(1, {2});
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = truncated_polynomial(f7, 2 + trial % 2, "x", Degree(z, {1 + trial % 3}));
    const auto b = truncated_polynomial(f7, 2 + (trial / 2) % 2, "y", Degree(zc, {trial % 2, 1}));
    // the value on (Z, Z/2) must square to 1
    const Scalar sign = rng() % 2 ? f7.from_int(-1) : f7.one();
    const auto c = twisted_tensor_algebra(a, b, Bicharacter(z, zc, f7, {{test::random_nonzero(f7, rng), sign}}));
    const auto rep = validate(*c);
    ASSERT_TRUE(rep.ok()) << rep.violations.front();
  }
}

TEST(Algebra, RandomBasisChangeKeepsTheAlgebraValid) {
  test::Rng rng(12);
  const Field f5 = Field::prime(5);
  for (const auto& [name, a] : test::catalog(f5)) {
    EXPECT_TRUE(validate(*a).ok()) << name;
    for (int trial = 0; trial < 5; ++trial) {
      const auto b = test::random_basis_change(a, rng);
      const auto rep = validate(*b);
      EXPECT_TRUE(rep.ok()) << name << ": " << (rep.ok() ? "" : rep.violations.front());
    }
  }
}
