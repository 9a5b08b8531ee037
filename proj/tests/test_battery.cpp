#include <gtest/gtest.h>

#include "hh/oracle.hpp"
#include "support.hpp"

using namespace hh;

namespace {

class Battery : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(Battery, Invariants) {
  const auto c = test::random_case(GetParam());
  const auto& bar = c.bar;
  const Field& k = bar->algebra()->field();
  test::Rng rng(static_cast<std::uint64_t>(GetParam()) + 100);
  SCOPED_TRACE(c.name);

  ASSERT_TRUE(check_complex(*bar).ok());
  ASSERT_TRUE(verify_exactness(*bar, test::kRandomBarLength - 1).exact);

  // liftings on the bar resolution against the circle bracket
  const auto oracle = oracle_check(bar, 2);
  EXPECT_TRUE(oracle.all_pass()) << oracle.to_string();

  const TensorSquare ts(bar, test::kRandomBarLength);
  const ChainMap delta = diagonal(ts);
  ASSERT_EQ(first_chain_map_failure(delta), -1);
  const auto comp = std::make_shared<const ChainMap>(solve_companion(ts, delta, test::kRandomBarLength - 1));
  auto lift = [&](const Cochain& f) { return solve_homotopy_lifting(ts, delta, f, test::kRandomBarLength - 1, comp); };

  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 1; m + n <= 3; ++n) {
      const Cochain f = test::random_class(bar, m, rng);
      const Cochain g = test::random_class(bar, n, rng);
      const auto lf = lift(f);
      const auto lg = lift(g);
      const Cochain fg = bracket(f, lf.psi, g, lg.psi);
      const Cochain gf = bracket(g, lg.psi, f, lf.psi);
      EXPECT_TRUE(is_cocycle(fg));
      EXPECT_TRUE(are_cohomologous(fg, gf.scaled(-sign_power(static_cast<long>((m - 1) * (n - 1)), k))));
      // a different representative of f gives the same class
      const Cochain f2 = f + coboundary(test::random_cochain(bar, m - 1, rng));
      const auto lf2 = lift(f2);
      EXPECT_TRUE(are_cohomologous(fg, bracket(f2, lf2.psi, g, lg.psi)));
      EXPECT_TRUE(are_cohomologous(fg, circle_bracket(f, g)));
    }

  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; m + n <= 3; ++n) {
      const Cochain f = test::random_class(bar, m, rng);
      const Cochain g = test::random_class(bar, n, rng);
      EXPECT_TRUE(are_cohomologous(cup(ts, delta, f, g),
                                   cup(ts, delta, g, f).scaled(sign_power(static_cast<long>(m * n), k))));
    }
}

INSTANTIATE_TEST_SUITE_P(RandomPrimeFields, Battery, ::testing::Range(0, test::kRandomSeeds));
