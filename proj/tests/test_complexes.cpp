#include <gtest/gtest.h>

#include "hh/oracle.hpp"
#include "support.hpp"

using namespace hh;

namespace {

// dim HH^n(k[x]/(x^N)) from the closed form: N in degree 0, then N-1, or N
// when char k divides N.
std::size_t expected_hh(const Field& k, std::size_t n_order, std::size_t degree) {
  if (degree == 0) return n_order;
  const bool divides = k.characteristic() != 0 && n_order % k.characteristic() == 0;
  return divides ? n_order : n_order - 1;
}

// dim of the center, straight from the multiplication table.
std::size_t center_dim(const GradedAlgebra& a) {
  const std::size_t d = a.dim();
  const auto t = test::to_dense(a);
  // z = sum c_s b_s is central iff sum_s c_s (b_s b_j - b_j b_s) = 0 for all j
  Matrix m(a.field(), d * d, d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) m.at(j * d + l, s) = t[s][j][l] - t[j][s][l];
  return d - rank(m);
}

// Rank of the classes together with the coboundaries in coordinates.
std::size_t rank_modulo_coboundaries(const ComplexPtr& p, std::size_t n, const std::vector<Cochain>& classes) {
  const Field& k = p->algebra()->field();
  const std::size_t dim = p->rank(n) * p->algebra()->dim();
  std::vector<std::vector<Scalar>> cols;
  if (n >= 1) {
    const Matrix b = coboundary_matrix(*p, n - 1);
    for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(b.column(j));
  }
  Matrix base(k, dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) base.set_column(j, cols[j]);
  for (const auto& c : classes) cols.push_back(c.coordinates());
  Matrix all(k, dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) all.set_column(j, cols[j]);
  return rank(all) - rank(base);
}

}  // namespace

TEST(Complexes, PeriodicResolutionsAreExact) {
  for (const Field k : {Field::rationals(), Field::prime(5), Field::prime(2)})
    for (std::size_t n : {2, 3, 4}) {
      const auto p = periodic_truncated_resolution(k, n, 8);
      EXPECT_TRUE(check_complex(*p).ok());
      const auto rep = verify_exactness(*p, 7);
      EXPECT_TRUE(rep.exact) << k.to_string() << " N=" << n << ": " << rep.to_string();
      EXPECT_TRUE(rep.augmentation_onto);
    }
}

TEST(Complexes, ExactnessNeedsRoomAboveTheTopDegree) {
  const auto p = periodic_truncated_resolution(Field::rationals(), 2, 4);
  EXPECT_THROW(verify_exactness(*p, 4), std::invalid_argument);
  EXPECT_NO_THROW(verify_exactness(*p, 3));
}

TEST(Complexes, PeriodicGeneratorDegrees) {
  const auto g = GradingGroup::make(1);
  const auto a = truncated_polynomial(Field::rationals(), 3, "x", Degree(g, {2}));
  const auto p = periodic_truncated_resolution(a, 5);
  // |e_2j| = jN|x|, |e_2j+1| = (jN+1)|x|
  const std::vector<long> want{0, 2, 6, 8, 12, 14};
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(p->generator_degree(n, 0), Degree(g, {want[n]})) << n;
}

TEST(Complexes, HochschildDimensionsOfTruncatedPolynomials) {
  for (const Field k : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)})
    for (std::size_t n : {2, 3, 4}) {
      const auto p = periodic_truncated_resolution(k, n, 6);
      for (std::size_t deg = 0; deg <= 5; ++deg)
        EXPECT_EQ(cohomology_basis(p, deg).dimension(), expected_hh(k, n, deg))
            << k.to_string() << " N=" << n << " degree " << deg;
    }
}

TEST(Complexes, BasisClassesAreIndependentCocycles) {
  const auto p = periodic_truncated_resolution(Field::prime(3), 3, 6);
  for (std::size_t deg = 0; deg <= 5; ++deg) {
    const auto b = cohomology_basis(p, deg);
    for (const auto& c : b.classes) {
      EXPECT_TRUE(is_cocycle(c));
      EXPECT_TRUE(internal_degree(c).is_homogeneous()) << c.to_string();
    }
    EXPECT_EQ(rank_modulo_coboundaries(p, deg, b.classes), b.dimension());
  }
}

TEST(Complexes, InternalDegreeOfRepresentatives) {
  const auto g = GradingGroup::make(1);
  const auto a = truncated_polynomial(Field::rationals(), 2, "x", Degree(g, {1}));
  const auto p = periodic_truncated_resolution(a, 4);
  // HH^1 = <e1 -> x> of internal degree 0, HH^2 = <e2 -> 1> of internal degree 2
  const auto h1 = cohomology_basis(p, 1);
  ASSERT_EQ(h1.dimension(), 1u);
  EXPECT_EQ(h1.classes[0].to_string(), "e1 -> 1*x");
  EXPECT_EQ(internal_degree(h1.classes[0]).degree, Degree(g, {0}));
  const auto h2 = cohomology_basis(p, 2);
  ASSERT_EQ(h2.dimension(), 1u);
  EXPECT_EQ(internal_degree(h2.classes[0]).degree, Degree(g, {2}));
  Cochain mixed(p, 2, {AlgebraElement::unit(a) + AlgebraElement::basis(a, 1, a->field().one())});
  EXPECT_EQ(internal_degree(mixed).kind, ElementDegree::Kind::inhomogeneous);
  EXPECT_EQ(internal_degree(Cochain(p, 2)).kind, ElementDegree::Kind::zero);
}

// HH^0 is the center, computed here from the table alone; bar and basis
// changes must not move it, nor the higher dimensions.
TEST(Complexes, CenterAndBasisChangeInvariance) {
  test::Rng rng(3);
  for (const Field k : {Field::rationals(), Field::prime(3)})
    for (const auto& [name, a] : test::catalog(k)) {
      const auto bar = bar_resolution(a, 3);
      EXPECT_EQ(cohomology_basis(bar, 0).dimension(), center_dim(*a)) << name;
      const auto b = test::random_basis_change(a, rng);
      const auto bar2 = bar_resolution(b, 3);
      for (std::size_t deg = 0; deg <= 2; ++deg)
        EXPECT_EQ(cohomology_basis(bar2, deg).dimension(), cohomology_basis(bar, deg).dimension())
            << name << " degree " << deg;
    }
}

TEST(Complexes, PrintParseRoundTrip) {
  const auto g = GradingGroup::make(1);
  for (std::size_t n : {2, 3}) {
    const auto a = truncated_polynomial(Field::prime(5), n, "x", Degree(g, {1}));
    const auto p = periodic_truncated_resolution(a, 4);
    const std::string text = print_complex(*p);
    const auto back = parse_complex(a, text);
    EXPECT_EQ(print_complex(*back), text);
    EXPECT_TRUE(verify_exactness(*back, 3).exact);
  }
}

TEST(Complexes, ParseErrorsCarryLineNumbers) {
  const auto a = truncated_polynomial(Field::rationals(), 2, "x");
  const std::string text =
      "complex length 1\n"
      "degree 0 rank 1\n"
      "  gen e0 [0]\n"
      "  aug e0 : 1*1\n"
      "degree 1 rank 1\n"
      "  gen e1 [1]\n"
      "  d (0, 0) : 1*z|1\n"
      "end\n";
  try {
    parse_complex(a, text, 10);
    FAIL() << "accepted an unknown label";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 16u);
  }
}

TEST(Complexes, CheckComplexFindsNonzeroSquare) {
  const auto a = truncated_polynomial(Field::rationals(), 2, "x");
  std::string text = print_complex(*periodic_truncated_resolution(a, 2));
  // d2 = x e - e x makes d1 d2 = -2 x e x
  const std::string good = "d (0, 0) : 1*1|x + 1*x|1";
  text.replace(text.find(good), good.size(), "d (0, 0) : -1*1|x + 1*x|1");
  const auto bad = parse_complex(a, text);
  EXPECT_FALSE(check_complex(*bad).ok());
}

TEST(Complexes, CoboundarySquaresToZeroAndMatchesItsMatrix) {
  test::Rng rng(4);
  const auto p = periodic_truncated_resolution(Field::prime(7), 3, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = trial % 4;
    const Cochain f = test::random_cochain(p, n, rng);
    EXPECT_TRUE(coboundary(coboundary(f)).is_zero());
    EXPECT_EQ(coboundary_matrix(*p, n).apply(f.coordinates()), coboundary(f).coordinates());
    EXPECT_EQ(Cochain::from_coordinates(p, n, f.coordinates()), f);
    EXPECT_TRUE(is_coboundary(coboundary(f)));
  }
}

TEST(Complexes, CohomologousClasses) {
  test::Rng rng(6);
  const auto p = periodic_truncated_resolution(Field::rationals(), 3, 5);
  const auto b = cohomology_basis(p, 2);
  ASSERT_EQ(b.dimension(), 2u);
  const Cochain shifted = b.classes[0] + coboundary(test::random_cochain(p, 1, rng));
  EXPECT_TRUE(are_cohomologous(b.classes[0], shifted));
  EXPECT_FALSE(are_cohomologous(b.classes[0], b.classes[1]));
  // e1 -> 1 has coboundary e2 -> 3x^2
  const auto h1 = cohomology_basis(p, 1);
  EXPECT_THROW(are_cohomologous(h1.classes[0], Cochain(p, 1, {AlgebraElement::unit(p->algebra())})),
               std::invalid_argument);
}
