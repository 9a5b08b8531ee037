// Acceptance run: one PASS/FAIL line per criterion with pinned time limits.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "cli/commands.hpp"
#include "hh/twist.hpp"
#include "support.hpp"

using namespace hh;

namespace {

// seconds
constexpr double kLimit1 = 5;
constexpr double kLimit2 = 30;
constexpr double kLimit3 = 120;
constexpr double kLimit4 = 180;
constexpr double kLimit5 = 120;
constexpr double kLimit6 = 120;
constexpr double kLimit7 = 120;

constexpr std::size_t kMaxTotalDegree = 4;

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
  std::string summary() const {
    std::string s = std::to_string(checks - failures.size()) + "/" + std::to_string(checks) + " checks";
    for (std::size_t i = 0; i < failures.size() && i < 4; ++i) s += "; " + failures[i];
    if (failures.size() > 4) s += "; ...";
    return s;
  }
};

std::size_t threads() { return std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 4); }

struct Suite {
  std::string name;
  FactorizationConfig config;
};

Suite make_suite(const std::string& name, const Field& k, long dx, long dy, const Scalar& value) {
  const auto z = GradingGroup::make(1);
  const auto a = truncated_polynomial(k, 2, "x", Degree(z, {dx}));
  const auto b = truncated_polynomial(k, 2, "y", Degree(z, {dy}));
  const std::size_t len = 2 * kMaxTotalDegree + 1;
  return {name, FactorizationConfig{periodic_truncated_resolution(a, len), periodic_truncated_resolution(b, len),
                                    Bicharacter::uniform(a->group(), b->group(), value), kMaxTotalDegree, threads(),
                                    false}};
}

struct SuiteResult {
  std::string name;
  FactorizationConfig config;
  FactorizationReport report;
};

std::vector<SuiteResult> g_suites;
std::string g_example_output;

void run_suite(Tally& t, const Suite& s) {
  auto rep = verify_factorization(s.config);
  std::size_t br = 0, cu = 0, li = 0;
  for (const auto& p : rep.pairs) {
    br += !p.bracket_ok;
    cu += !p.cup_ok;
    li += !p.lifting_ok;
  }
  t.expect(!rep.pairs.empty(), s.name + ": no pairs");
  t.expect(br == 0, s.name + ": " + std::to_string(br) + " bracket failures");
  t.expect(cu == 0, s.name + ": " + std::to_string(cu) + "/" + std::to_string(rep.pairs.size()) + " cup failures");
  t.expect(li == 0, s.name + ": " + std::to_string(li) + " lifting failures");
  g_suites.push_back({s.name, s.config, std::move(rep)});
}

bool has_line(const std::string& out, const std::string& prefix) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return true;
  return false;
}

// 1: the worked example over Q[x]/(x^2) (x) Q[y]/(y^2)
Tally criterion1() {
  Tally t;
  const char* argv[] = {"hhcomp", "example-paper"};
  std::ostringstream out, err;
  const int code = cli::hhcomp_main(2, argv, out, err);
  g_example_output = out.str();
  t.expect(code == cli::kExitPass, "example-paper exit " + std::to_string(code));
  for (const char* id : {"lifting:f", "lifting:g", "lifting:h", "lifting:f'", "lifting:h'", "psi_fg(e1.e2')",
                         "psi_ff'(e2.e3')", "psi_ff'(e3.e2')", "bracket(e2.e3')", "bracket(e3.e2')"})
    t.expect(has_line(g_example_output, std::string("PASS ") + id), id);
  t.expect(g_example_output.find("[f(x)f', h(x)h'](e2(x)e3') = 2*1.y") != std::string::npos, "value 2y");
  t.expect(g_example_output.find("[f(x)f', h(x)h'](e3(x)e2') = -2*x.1") != std::string::npos, "value -2x");
  return t;
}

// 2: exactness of the resolutions
Tally criterion2() {
  Tally t;
  for (const Field k : {Field::rationals(), Field::prime(5)})
    for (std::size_t n : {2, 3}) {
      const auto p = periodic_truncated_resolution(k, n, 6);
      t.expect(verify_exactness(*p, 5).exact, "periodic N=" + std::to_string(n) + " over " + k.to_string());
    }
  const Field q = Field::rationals();
  const auto z = GradingGroup::make(1);
  const auto a = truncated_polynomial(q, 2, "x", Degree(z, {1}));
  const auto b = truncated_polynomial(q, 2, "y", Degree(z, {1}));
  const auto p = periodic_truncated_resolution(a, 6);
  const auto r = periodic_truncated_resolution(b, 6);
  for (const long v : {-1L, 1L}) {
    const auto tot = twisted_tensor_resolution(p, r, Bicharacter::uniform(a->group(), b->group(), q.from_int(v)), 6);
    t.expect(check_complex(*tot->complex()).ok() && verify_exactness(*tot->complex(), 5).exact,
             "total complex q=" + std::to_string(v));
  }
  for (int s = 0; s < test::kRandomSeeds; ++s) {
    const auto c = test::random_case(s);
    t.expect(verify_exactness(*c.bar, test::kRandomBarLength - 1).exact, "bar of " + c.name);
  }
  return t;
}

// 3: untwisted factorization
Tally criterion3() {
  Tally t;
  const Field q = Field::rationals();
  run_suite(t, make_suite("untwisted", q, 1, 1, q.one()));
  return t;
}

// 4: twisted factorization, q = -1 and q = 2 over F_5
Tally criterion4() {
  Tally t;
  const Field q = Field::rationals();
  const Field f5 = Field::prime(5);
  run_suite(t, make_suite("q=-1", q, 1, 1, q.from_int(-1)));
  run_suite(t, make_suite("F5 q=2 |x|=2", f5, 2, 2, f5.from_int(2)));
  run_suite(t, make_suite("F5 q=2 |x|=1", f5, 1, 1, f5.from_int(2)));
  const auto& last = g_suites.back().report;
  t.expect(!last.rejected.empty(), "F5 q=2 |x|=1: no class rejected outside F'");
  return t;
}

// 5: liftings against the bar-complex circle bracket
Tally criterion5() {
  Tally t;
  for (const Field k : {Field::rationals(), Field::prime(5)})
    for (std::size_t n : {2, 3}) {
      const auto rep = oracle_check(periodic_truncated_resolution(k, n, 5), 3, threads());
      t.expect(rep.comparison_certified && !rep.pairs.empty() && rep.all_pass(),
               "N=" + std::to_string(n) + " over " + k.to_string());
    }
  for (int s = 0; s < test::kRandomSeeds; ++s) {
    const auto c = test::random_case(s);
    const auto rep = oracle_check(c.bar, 2);
    t.expect(rep.comparison_certified && rep.all_pass(), c.name);
  }
  return t;
}

// 6: brackets do not depend on the lifting or the representative
Tally criterion6() {
  Tally t;
  for (const auto& s : g_suites)
    for (const auto& p : s.report.pairs) {
      std::ostringstream id;
      id << s.name << " pair (" << p.i << ',' << p.j << ',' << p.u << ',' << p.v << ')';
      t.expect(p.choice_independent, id.str());
    }
  t.expect(has_line(g_example_output, "PASS choice-independence"), "closed-form liftings of the worked example");

  test::Rng rng(606);
  for (const Field k : {Field::rationals(), Field::prime(5)})
    for (std::size_t n : {2, 3}) {
      const auto p = periodic_truncated_resolution(k, n, 7);
      const TensorSquare ts(p, 7);
      const ChainMap delta = diagonal(ts);
      const auto comp = std::make_shared<const ChainMap>(solve_companion(ts, delta, 6));
      for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t l = 1; m + l <= 4; ++l)
          for (const auto& f : cohomology_basis(p, m).classes)
            for (const auto& g : cohomology_basis(p, l).classes) {
              const auto lf = solve_homotopy_lifting(ts, delta, f, 6, comp);
              const auto lg = solve_homotopy_lifting(ts, delta, g, 6, comp);
              const Cochain base = bracket(f, lf.psi, g, lg.psi);
              const Cochain other = bracket(f, test::perturb(lf.psi, m, rng), g, test::perturb(lg.psi, l, rng));
              const Cochain f2 = f + coboundary(test::random_cochain(p, m - 1, rng));
              const auto lf2 = solve_homotopy_lifting(ts, delta, f2, 6, comp);
              t.expect(are_cohomologous(base, other) && are_cohomologous(base, bracket(f2, lf2.psi, g, lg.psi)),
                       "N=" + std::to_string(n) + " " + f.to_string() + " | " + g.to_string());
            }
    }
  for (int s = 0; s < test::kRandomSeeds; ++s) {
    const auto c = test::random_case(s);
    const TensorSquare ts(c.bar, test::kRandomBarLength);
    const ChainMap delta = diagonal(ts);
    const auto comp = std::make_shared<const ChainMap>(solve_companion(ts, delta, test::kRandomBarLength - 1));
    const Cochain f = test::random_class(c.bar, 1, rng);
    const Cochain g = test::random_class(c.bar, 2, rng);
    const auto lf = solve_homotopy_lifting(ts, delta, f, test::kRandomBarLength - 1, comp);
    const auto lg = solve_homotopy_lifting(ts, delta, g, test::kRandomBarLength - 1, comp);
    const Cochain f2 = f + coboundary(test::random_cochain(c.bar, 0, rng));
    const auto lf2 = solve_homotopy_lifting(ts, delta, f2, test::kRandomBarLength - 1, comp);
    t.expect(are_cohomologous(bracket(f, lf.psi, g, lg.psi), bracket(f2, lf2.psi, g, lg.psi)), c.name);
  }
  return t;
}

// 7: invariant batteries
Tally criterion7() {
  Tally t;
  test::Rng rng(707);
  std::uniform_int_distribution<int> deg(-2, 2);
  for (const Field k : {Field::rationals(), Field::prime(5)})
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<int> v0{0, 1, 1, 2}, v1{-1, 0, 1, 2, 3}, w0{0, 1, 2}, w1{-2, -1, 0, 1, 2, 3, 4};
      const auto g1 = test::random_map(deg(rng), v0, v1, k, rng);
      const auto h1 = test::random_map(deg(rng), w0, w1, k, rng);
      const auto g2 = test::random_map(deg(rng), v1, v1, k, rng);
      const auto h2 = test::random_map(deg(rng), w1, w1, k, rng);
      const auto lhs = test::compose(test::tensor(g2, h2, k), test::tensor(g1, h1, k), k);
      const auto rhs = test::tensor(test::compose(g2, g1, k), test::compose(h2, h1, k), k);
      const Scalar s = koszul_sign(h2.degree, g1.degree, k);
      bool ok = true;
      for (std::size_t c = 0; c < lhs.cols.size(); ++c)
        for (std::size_t r = 0; r < lhs.cols[c].size(); ++r) ok = ok && lhs.cols[c][r] == s * rhs.cols[c][r];
      t.expect(ok, "Koszul law trial " + std::to_string(trial));
    }

  for (const auto& s : g_suites) {
    t.expect(s.report.identities_ok, s.name + ": t-identities");
    for (const auto& c : s.report.classes_a)
      t.expect(satisfies_f_prime_identity(s.config.t, c.cochain), s.name + ": F' identity " + c.cochain.to_string());
    for (const auto& c : s.report.classes_b)
      t.expect(satisfies_g_prime_identity(s.config.t, c.cochain), s.name + ": G' identity " + c.cochain.to_string());
    // sigma o sigma^{-1} = id on a shorter truncation
    const std::size_t len = 5;
    const auto p = periodic_truncated_resolution(s.config.p->algebra(), len);
    const auto q = periodic_truncated_resolution(s.config.q->algebra(), len);
    const auto tsp = std::make_shared<const TensorSquare>(p, len);
    const auto tsq = std::make_shared<const TensorSquare>(q, len);
    const TwistedDiagonal diag(twisted_tensor_resolution(p, q, s.config.t, len), tsp,
                               std::make_shared<const ChainMap>(diagonal(*tsp)), tsq,
                               std::make_shared<const ChainMap>(diagonal(*tsq)));
    const auto& S = *diag.square().complex();
    const auto& W = *diag.factor_square().complex();
    bool inverse = true;
    for (std::size_t n = 0; n <= S.length(); ++n)
      for (std::size_t g = 0; g < S.rank(n); ++g) {
        inverse = inverse && diag.sigma_inv(n, diag.sigma(n, S.generator(g))) == S.generator(g);
        inverse = inverse && diag.sigma(n, diag.sigma_inv(n, W.generator(g))) == W.generator(g);
      }
    t.expect(inverse, s.name + ": sigma o sigma^-1");
  }

  auto class_laws = [&](const ComplexPtr& p, std::size_t len, std::size_t top, const std::string& name) {
    const Field& k = p->algebra()->field();
    const TensorSquare ts(p, len);
    const ChainMap delta = diagonal(ts);
    const auto comp = std::make_shared<const ChainMap>(solve_companion(ts, delta, len - 1));
    for (std::size_t m = 0; m <= top; ++m)
      for (std::size_t n = 0; m + n <= top; ++n) {
        const Cochain f = test::random_class(p, m, rng);
        const Cochain g = test::random_class(p, n, rng);
        const Scalar s = sign_power(static_cast<long>(m * n), k);
        t.expect(are_cohomologous(cup(ts, delta, f, g), cup(ts, delta, g, f).scaled(s)),
                 name + ": commutativity " + std::to_string(m) + "," + std::to_string(n));
        if (m == 0 || n == 0 || m + n - 1 > top) continue;
        const auto lf = solve_homotopy_lifting(ts, delta, f, len - 1, comp);
        const auto lg = solve_homotopy_lifting(ts, delta, g, len - 1, comp);
        const Scalar a = -sign_power(static_cast<long>((m - 1) * (n - 1)), k);
        t.expect(are_cohomologous(bracket(f, lf.psi, g, lg.psi), bracket(g, lg.psi, f, lf.psi).scaled(a)),
                 name + ": antisymmetry " + std::to_string(m) + "," + std::to_string(n));
      }
  };
  for (const Field k : {Field::rationals(), Field::prime(5)})
    for (std::size_t n : {2, 3}) class_laws(periodic_truncated_resolution(k, n, 7), 7, 4, "N=" + std::to_string(n));
  for (int s = 0; s < test::kRandomSeeds; ++s) {
    const auto c = test::random_case(s);
    class_laws(c.bar, test::kRandomBarLength, 3, c.name);
  }
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Tally()> run;
  };
  const Criterion criteria[] = {
      {1, "worked example", kLimit1, criterion1},
      {2, "resolution exactness", kLimit2, criterion2},
      {3, "untwisted bracket and cup factorization", kLimit3, criterion3},
      {4, "twisted bracket and cup factorization", kLimit4, criterion4},
      {5, "oracle equivalence with the bar complex", kLimit5, criterion5},
      {6, "lifting choice independence", kLimit6, criterion6},
      {7, "invariant batteries", kLimit7, criterion7},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit;
    const bool pass = error.empty() && t.pass() && in_time;
    failed += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit);
    std::cout << "criterion " << c.id << ' ' << (pass ? "PASS" : "FAIL") << " [" << timing << "] " << c.title << ": "
              << (error.empty() ? t.summary() : "exception: " + error) << (in_time ? "" : "; over time limit")
              << std::endl;
  }
  std::cout << "acceptance: " << (7 - failed) << "/7 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
