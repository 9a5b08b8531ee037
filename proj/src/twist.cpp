#include "hh/twist.hpp"

#include <sstream>

#include "hh/parallel.hpp"

namespace hh {

namespace {

bool resolution_shaped(const FreeBimoduleComplex& p) {
  if (p.rank(0) != 1 || !p.generator_degree(0, 0).is_zero()) return false;
  return p.augmentation(0) == AlgebraElement::unit(p.algebra());
}

Degree unit_degree(const GradingGroupPtr& group, std::size_t factor) {
  std::vector<std::int64_t> coords(group->num_factors(), 0);
  coords[factor] = 1;
  return Degree(group, std::move(coords));
}

// v with |f(e)| = |e| - v; zero for the zero cochain.
Degree cochain_shift(const Cochain& f, const GradingGroupPtr& group, const char* name) {
  const ElementDegree d = internal_degree(f);
  if (d.kind == ElementDegree::Kind::inhomogeneous)
    throw std::invalid_argument(std::string("cochain ") + name + " is not homogeneous");
  if (d.kind == ElementDegree::Kind::zero) return Degree::zero(group);
  return d.degree;
}

}  // namespace

TwistedTotalComplex::TwistedTotalComplex(ComplexPtr p, ComplexPtr q, Bicharacter t, std::size_t length,
                                         bool resolution_shape)
    : p_(std::move(p)), q_(std::move(q)), t_(std::move(t)) {
  const auto& a = *p_->algebra();
  const auto& b = *q_->algebra();
  if (!(a.field() == b.field()) || !(t_.field() == a.field()))
    throw std::invalid_argument("factors and twisting live over different fields");
  if (!(*t_.left() == *a.group()) || !(*t_.right() == *b.group()))
    throw std::invalid_argument("twisting is not defined on the grading groups of the factors");
  if (length > p_->length() || length > q_->length())
    throw std::invalid_argument("total complex longer than its factors");
  if (resolution_shape && (!resolution_shaped(*p_) || !resolution_shaped(*q_)))
    throw std::invalid_argument("factors need P_0 = A (x) A with generator degree 0 and augmentation 1");

  const AlgebraPtr c = twisted_tensor_algebra(p_->algebra(), q_->algebra(), t_);
  const GradingGroupPtr& group = c->group();
  gens_.resize(length + 1);
  offsets_.resize(length + 1);
  std::vector<std::vector<Degree>> degrees(length + 1);
  std::vector<std::vector<std::string>> labels(length + 1);
  for (std::size_t n = 0; n <= length; ++n) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      offsets_[n].push_back(offset);
      const std::size_t j = n - i;
      for (std::size_t g = 0; g < p_->rank(i); ++g)
        for (std::size_t h = 0; h < q_->rank(j); ++h) {
          gens_[n].push_back({i, g, h});
          degrees[n].push_back(direct_sum_degree(group, p_->generator_degree(i, g), q_->generator_degree(j, h)));
          labels[n].push_back(p_->generator_label(i, g) + "." + q_->generator_label(j, h) + "'");
        }
      offset += p_->rank(i) * q_->rank(j);
    }
  }

  // pure_tensor only needs p_, q_, t_, the offsets and the algebra dimensions.
  std::vector<std::vector<SparseVector>> diff(length + 1);
  const Field& k = a.field();
  for (std::size_t n = 1; n <= length; ++n)
    for (const auto& gen : gens_[n]) {
      const std::size_t i = gen.left_degree;
      const std::size_t j = n - i;
      SparseVector out;
      if (i >= 1) out.add_scaled(pure_tensor(i - 1, p_->differential(i, gen.left), j, q_->generator(gen.right)), k.one());
      if (j >= 1)
        out.add_scaled(pure_tensor(i, p_->generator(gen.left), j - 1, q_->differential(j, gen.right)),
                       sign_power(static_cast<std::int64_t>(i), k));
      diff[n].push_back(std::move(out));
    }

  std::vector<AlgebraElement> aug;
  for (const auto& gen : gens_[0]) {
    const auto& x = p_->augmentation(gen.left);
    const auto& y = q_->augmentation(gen.right);
    AlgebraElement e(c);
    for (std::size_t s = 0; s < a.dim(); ++s)
      for (std::size_t r = 0; r < b.dim(); ++r)
        if (!x[s].is_zero() && !y[r].is_zero()) e.add(s * b.dim() + r, x[s] * y[r]);
    aug.push_back(std::move(e));
  }
  auto cx = std::make_shared<FreeBimoduleComplex>(c, std::move(degrees), std::move(diff), std::move(aug), std::move(labels));
  cx->set_kind(FreeBimoduleComplex::Kind::twisted_total, 0);
  complex_ = std::move(cx);
}

std::size_t TwistedTotalComplex::index(std::size_t n, std::size_t i, std::size_t g, std::size_t gp) const {
  return offsets_.at(n).at(i) + g * q_->rank(n - i) + gp;
}

Scalar TwistedTotalComplex::conversion_scalar(const Degree& e, std::size_t a_t, const Degree& ep, std::size_t b_p) const {
  const Degree& at = p_->algebra()->degree(a_t);
  const Degree& bp = q_->algebra()->degree(b_p);
  return (t_.evaluate(e, bp) * t_.evaluate(at, ep) * t_.evaluate(at, bp)).inverse();
}

SparseVector TwistedTotalComplex::pure_tensor(std::size_t i, const SparseVector& x, std::size_t j,
                                              const SparseVector& y) const {
  const std::size_t da = p_->algebra()->dim();
  const std::size_t db = q_->algebra()->dim();
  const std::size_t dc = da * db;
  const std::size_t n = i + j;
  SparseVector out;
  for (const auto& [xi, cx] : x) {
    const auto [g, s, t] = decode_free_index(da, xi);
    const Degree& eg = p_->generator_degree(i, g);
    for (const auto& [yi, cy] : y) {
      const auto [h, p, q] = decode_free_index(db, yi);
      const Scalar lambda = conversion_scalar(eg, t, q_->generator_degree(j, h), p);
      out.add(free_index(dc, index(n, i, g, h), s * db + p, t * db + q), lambda * cx * cy);
    }
  }
  return out;
}

std::shared_ptr<const TwistedTotalComplex> twisted_tensor_resolution(const ComplexPtr& p, const ComplexPtr& q,
                                                                     const Bicharacter& t, std::size_t length) {
  return std::make_shared<const TwistedTotalComplex>(p, q, t, length, true);
}

Scalar sigma_scalar(const Bicharacter& t, std::size_t j, std::size_t u, const Degree& xp, const Degree& y) {
  return sign_power(static_cast<std::int64_t>(j * u), t.field()) * t.evaluate(xp, y);
}

Scalar sigma_inv_scalar(const Bicharacter& t, std::size_t j, std::size_t u, const Degree& xp, const Degree& y) {
  return sigma_scalar(t, j, u, xp, y).inverse();
}

TwistedDiagonal::TwistedDiagonal(std::shared_ptr<const TwistedTotalComplex> total, std::shared_ptr<const TensorSquare> ts_p,
                                 std::shared_ptr<const ChainMap> delta_p, std::shared_ptr<const TensorSquare> ts_q,
                                 std::shared_ptr<const ChainMap> delta_q)
    : total_(std::move(total)),
      ts_p_(std::move(ts_p)),
      delta_p_(std::move(delta_p)),
      ts_q_(std::move(ts_q)),
      delta_q_(std::move(delta_q)) {
  const auto& T = *total_;
  const std::size_t L = T.length();
  if (ts_p_->base() != T.left() || ts_q_->base() != T.right())
    throw std::invalid_argument("tensor squares do not belong to the factors of the total complex");
  if (ts_p_->length() < L || ts_q_->length() < L || !delta_p_->defined(L) || !delta_q_->defined(L))
    throw std::invalid_argument("factor diagonals are shorter than the total complex");

  ts_t_ = std::make_shared<const TensorSquare>(T.complex(), L);
  w_ = std::make_shared<const TwistedTotalComplex>(ts_p_->complex(), ts_q_->complex(), T.twist(), L, false);

  const auto& a = *T.left()->algebra();
  const auto& b = *T.right()->algebra();
  const std::size_t db = b.dim();
  const Bicharacter& t = T.twist();
  forward_.resize(L + 1);
  backward_.resize(L + 1);
  for (std::size_t n = 0; n <= L; ++n) {
    const auto& s_gens = ts_t_->complex();
    forward_[n].reserve(s_gens->rank(n));
    backward_[n].assign(w_->complex()->rank(n), Target{static_cast<std::size_t>(-1), a.field().zero()});
    for (std::size_t idx = 0; idx < s_gens->rank(n); ++idx) {
      const auto& sg = ts_t_->generator(n, idx);
      const auto& g1 = T.generator(sg.left_degree, sg.left);
      const auto& g2 = T.generator(n - sg.left_degree, sg.right);
      const std::size_t i = g1.left_degree;
      const std::size_t j = sg.left_degree - i;
      const std::size_t u = g2.left_degree;
      const std::size_t v = n - sg.left_degree - u;
      const std::size_t ct = sg.middle / db;
      const std::size_t ctp = sg.middle % db;
      const Degree& eh1 = T.left()->generator_degree(u, g2.left);
      const Degree& eg2 = T.right()->generator_degree(j, g1.right);
      // c e_{G2} = t^<|e_h1|,|b_ct'|> (a_ct e_h1) (x) (b_ct' e'_h2)
      const Scalar scalar = t.evaluate(eh1, b.degree(ctp)) * sigma_scalar(t, j, u, a.degree(ct) + eh1, eg2);
      const std::size_t gp = ts_p_->index(i + u, i, g1.left, ct, g2.left);
      const std::size_t gq = ts_q_->index(j + v, j, g1.right, ctp, g2.right);
      const std::size_t widx = w_->index(n, i + u, gp, gq);
      forward_[n].push_back({widx, scalar});
      if (backward_[n][widx].index != static_cast<std::size_t>(-1))
        throw std::logic_error("sigma is not injective on generators");
      backward_[n][widx] = {idx, scalar.inverse()};
    }
    for (const auto& target : backward_[n])
      if (target.index == static_cast<std::size_t>(-1)) throw std::logic_error("sigma is not onto on generators");
  }

  auto delta = std::make_shared<ChainMap>(T.complex(), ts_t_->complex(), 0);
  for (std::size_t n = 0; n <= L; ++n) {
    std::vector<SparseVector> imgs;
    for (std::size_t g = 0; g < T.complex()->rank(n); ++g) {
      const auto& gen = T.generator(n, g);
      const std::size_t i = gen.left_degree;
      const std::size_t j = n - i;
      imgs.push_back(sigma_inv(n, w_->pure_tensor(i, delta_p_->image(i, gen.left), j, delta_q_->image(j, gen.right))));
    }
    delta->push_degree(std::move(imgs));
  }
  delta_ = std::move(delta);
}

SparseVector TwistedDiagonal::sigma(std::size_t n, const SparseVector& x) const {
  const std::size_t dc = total_->algebra()->dim();
  SparseVector out;
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(dc, idx);
    const auto& target = forward_.at(n).at(g);
    out.add(free_index(dc, target.index, s, t), c * target.scalar);
  }
  return out;
}

SparseVector TwistedDiagonal::sigma_inv(std::size_t n, const SparseVector& x) const {
  const std::size_t dc = total_->algebra()->dim();
  SparseVector out;
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(dc, idx);
    const auto& target = backward_.at(n).at(g);
    out.add(free_index(dc, target.index, s, t), c * target.scalar);
  }
  return out;
}

Cochain tensor_cochain(const TwistedTotalComplex& total, const Cochain& f, const Cochain& g) {
  if (f.complex() != total.left() || g.complex() != total.right())
    throw std::invalid_argument("factor cochains do not live on the factors of the total complex");
  const Bicharacter& t = total.twist();
  const Degree vf = cochain_shift(f, t.left(), "f");
  const Degree ug = cochain_shift(g, t.right(), "g");
  if (!t.in_f_prime(vf)) {
    for (std::size_t k = 0; k < t.right()->num_factors(); ++k) {
      const Scalar s = t.evaluate(vf, unit_degree(t.right(), k));
      if (!s.is_one())
        throw TwistRejection("internal degree " + vf.to_string() + " of f is not in F': pairing with generator " +
                             std::to_string(k) + " of G is " + s.to_string());
    }
  }
  if (!t.in_g_prime(ug)) {
    for (std::size_t k = 0; k < t.left()->num_factors(); ++k) {
      const Scalar s = t.evaluate(unit_degree(t.left(), k), ug);
      if (!s.is_one())
        throw TwistRejection("internal degree " + ug.to_string() + " of g is not in G': pairing with generator " +
                             std::to_string(k) + " of F is " + s.to_string());
    }
  }
  const std::size_t m = f.degree();
  const std::size_t n = g.degree();
  if (m + n > total.length()) throw std::invalid_argument("tensor cochain beyond the truncation");
  const auto& p = *total.left();
  const std::size_t db = total.right()->algebra()->dim();
  const Scalar sign = sign_power(static_cast<std::int64_t>(m * n), t.field());
  Cochain out(total.complex(), m + n);
  for (std::size_t e = 0; e < total.complex()->rank(m + n); ++e) {
    const auto& gen = total.generator(m + n, e);
    if (gen.left_degree != m) continue;
    const auto& x = f.value(gen.left);
    const auto& y = g.value(gen.right);
    if (x.is_zero() || y.is_zero()) continue;
    const Scalar c = sign * t.evaluate(p.generator_degree(m, gen.left), ug).inverse();
    AlgebraElement v(total.algebra());
    for (std::size_t s = 0; s < x.coeffs().size(); ++s)
      for (std::size_t r = 0; r < db; ++r)
        if (!x[s].is_zero() && !y[r].is_zero()) v.add(s * db + r, c * x[s] * y[r]);
    out.set_value(e, std::move(v));
  }
  return out;
}

bool satisfies_f_prime_identity(const Bicharacter& t, const Cochain& f) {
  const auto& p = *f.complex();
  for (std::size_t e = 0; e < p.rank(f.degree()); ++e) {
    const ElementDegree d = element_degree(f.value(e));
    if (d.kind == ElementDegree::Kind::zero) continue;
    if (d.kind == ElementDegree::Kind::inhomogeneous) return false;
    const Degree shift = d.degree - p.generator_degree(f.degree(), e);
    for (std::size_t k = 0; k < t.right()->num_factors(); ++k)
      if (!t.evaluate(shift, unit_degree(t.right(), k)).is_one()) return false;
  }
  return true;
}

bool satisfies_g_prime_identity(const Bicharacter& t, const Cochain& g) {
  const auto& q = *g.complex();
  for (std::size_t e = 0; e < q.rank(g.degree()); ++e) {
    const ElementDegree d = element_degree(g.value(e));
    if (d.kind == ElementDegree::Kind::zero) continue;
    if (d.kind == ElementDegree::Kind::inhomogeneous) return false;
    const Degree shift = d.degree - q.generator_degree(g.degree(), e);
    for (std::size_t k = 0; k < t.left()->num_factors(); ++k)
      if (!t.evaluate(unit_degree(t.left(), k), shift).is_one()) return false;
  }
  return true;
}

HomotopyLifting tensor_homotopy_lifting(const TwistedDiagonal& diag, const HomotopyLifting& lf,
                                        const HomotopyLifting& lg, std::size_t up_to) {
  const auto& T = diag.total();
  const auto& tsp = diag.factor_square_p();
  const auto& tsq = diag.factor_square_q();
  const auto& dp = diag.delta_p();
  const auto& dq = diag.delta_q();
  const Cochain& f = lf.f;
  const Cochain& g = lg.f;
  const std::size_t m = f.degree();
  const std::size_t n = g.degree();
  const std::size_t M = m + n;
  if (up_to > T.length()) throw std::invalid_argument("tensor lifting beyond the truncation");
  if (!lf.psi.defined(up_to) || !lg.psi.defined(up_to))
    throw std::invalid_argument("factor liftings not defined up to the requested degree");
  const Field& k = T.algebra()->field();
  Cochain F = tensor_cochain(T, f, g);
  const Cochain mu_p = augmentation_cochain(T.left());
  const Cochain mu_q = augmentation_cochain(T.right());

  ChainMap psi(T.complex(), T.complex(), 1 - static_cast<int>(M));
  for (std::size_t N = 0; N <= up_to; ++N) {
    std::vector<SparseVector> imgs;
    for (std::size_t e = 0; e < T.complex()->rank(N); ++e) {
      SparseVector out;
      if (N + 1 >= M) {
        const auto& gen = T.generator(N, e);
        const std::size_t i = gen.left_degree;
        const std::size_t j = N - i;
        if (i + 1 >= m && j >= n) {
          SparseVector y = apply_cochain_right(tsq, j, dq.image(j, gen.right), g);
          out.add_scaled(T.pure_tensor(i + 1 - m, lf.psi.image(i, gen.left), j - n, y),
                         sign_power(static_cast<std::int64_t>(n * i), k));
        }
        if (i >= m && j + 1 >= n) {
          SparseVector x = apply_cochain_left(tsp, i, dp.image(i, gen.left), f);
          out.add_scaled(T.pure_tensor(i - m, x, j + 1 - n, lg.psi.image(j, gen.right)),
                         sign_power(static_cast<std::int64_t>(m + (n - 1) * i), k));
        }
      }
      imgs.push_back(std::move(out));
    }
    psi.push_degree(std::move(imgs));
  }

  auto companion = std::make_shared<ChainMap>(T.complex(), T.complex(), 1);
  const auto& cp = *lf.companion;
  const auto& cq = *lg.companion;
  for (std::size_t N = 0; N <= up_to && N + 1 <= T.length(); ++N) {
    if (!cp.defined(N) || !cq.defined(N)) break;
    std::vector<SparseVector> imgs;
    for (std::size_t e = 0; e < T.complex()->rank(N); ++e) {
      const auto& gen = T.generator(N, e);
      const std::size_t i = gen.left_degree;
      const std::size_t j = N - i;
      SparseVector y = apply_cochain_left(tsq, j, dq.image(j, gen.right), mu_q);
      SparseVector out = T.pure_tensor(i + 1, cp.image(i, gen.left), j, y);
      SparseVector x = apply_cochain_right(tsp, i, dp.image(i, gen.left), mu_p);
      out.add_scaled(T.pure_tensor(i, x, j + 1, cq.image(j, gen.right)), sign_power(static_cast<std::int64_t>(i), k));
      imgs.push_back(std::move(out));
    }
    companion->push_degree(std::move(imgs));
  }
  return {std::move(F), std::move(psi), std::move(companion)};
}

Cochain graded_tensor_cup(const TwistedTotalComplex& total, const Cochain& f_cup_fp, const Cochain& g_cup_gp,
                          std::size_t m_prime, std::size_t n) {
  return tensor_cochain(total, f_cup_fp, g_cup_gp)
      .scaled(sign_power(static_cast<std::int64_t>(m_prime * n), total.algebra()->field()));
}

Cochain graded_tensor_bracket(const TwistedTotalComplex& total, const Cochain& bracket_a, const Cochain& f_cup_fp,
                              const Cochain& g_cup_gp, const Cochain& bracket_b, std::size_t m_prime, std::size_t n,
                              bool drop_first_sign) {
  const Field& k = total.algebra()->field();
  const auto mp = static_cast<std::int64_t>(m_prime);
  const auto nn = static_cast<std::int64_t>(n);
  const Scalar first = drop_first_sign ? k.one() : sign_power((mp - 1) * nn, k);
  return tensor_cochain(total, bracket_a, g_cup_gp).scaled(first) +
         tensor_cochain(total, f_cup_fp, bracket_b).scaled(sign_power(mp * (nn - 1), k));
}

bool FactorizationReport::all_pass() const {
  if (!identities_ok) return false;
  for (const auto& p : pairs)
    if (!p.pass()) return false;
  return true;
}

std::string FactorizationReport::to_string() const {
  std::ostringstream os;
  for (const auto& p : pairs) {
    os << (p.pass() ? "PASS" : "FAIL") << " pair=(" << p.i << ',' << p.j << ',' << p.u << ',' << p.v << ')';
    if (!p.pass()) os << ' ' << p.witness;
    os << '\n';
  }
  return os.str();
}

namespace {

struct TensorClass {
  std::size_t ia;
  std::size_t ib;
  Cochain cochain;
  std::optional<HomotopyLifting> direct;
  std::optional<HomotopyLifting> formula;
  bool lifting_ok = false;
  std::string problem;
};

std::string describe(const char* what, const Cochain& lhs, const Cochain& rhs) {
  return std::string(what) + ": direct " + lhs.to_string() + " vs formula " + rhs.to_string();
}

}  // namespace

FactorizationReport verify_factorization(const FactorizationConfig& config) {
  const std::size_t D = config.max_total_degree;
  if (D < 2) throw std::invalid_argument("max total degree must be at least 2");
  const std::size_t L = 2 * D + 1;
  if (config.p->length() < L || config.q->length() < L)
    throw std::invalid_argument("factor resolutions need length at least " + std::to_string(L));

  const auto ts_p = std::make_shared<const TensorSquare>(config.p, L);
  const auto ts_q = std::make_shared<const TensorSquare>(config.q, L);
  const auto dp = std::make_shared<const ChainMap>(diagonal(*ts_p));
  const auto dq = std::make_shared<const ChainMap>(diagonal(*ts_q));
  const auto total = twisted_tensor_resolution(config.p, config.q, config.t, L);
  const TwistedDiagonal diag(total, ts_p, dp, ts_q, dq);
  const TensorSquare& ts_t = diag.square();
  const ChainMap& dt = diag.delta();

  const auto comp_p = std::make_shared<const ChainMap>(solve_companion(*ts_p, *dp, L - 1));
  const auto comp_q = std::make_shared<const ChainMap>(solve_companion(*ts_q, *dq, L - 1));
  const auto comp_t = std::make_shared<const ChainMap>(solve_companion(ts_t, dt, D - 1));

  FactorizationReport report;
  std::vector<HomotopyLifting> lifts_a;
  std::vector<HomotopyLifting> lifts_b;
  for (std::size_t m = 1; m < D; ++m)
    for (const auto& f : cohomology_basis(config.p, m).classes) {
      const Degree v = cochain_shift(f, config.t.left(), "f");
      if (!config.t.in_f_prime(v)) {
        report.rejected.push_back("A class " + f.to_string() + " of internal degree " + v.to_string() + " is not in F'");
        continue;
      }
      if (!satisfies_f_prime_identity(config.t, f)) report.identities_ok = false;
      report.classes_a.push_back({m, v, f});
      lifts_a.push_back(solve_homotopy_lifting(*ts_p, *dp, f, L - 2, comp_p));
    }
  for (std::size_t n = 1; n < D; ++n)
    for (const auto& g : cohomology_basis(config.q, n).classes) {
      const Degree u = cochain_shift(g, config.t.right(), "g");
      if (!config.t.in_g_prime(u)) {
        report.rejected.push_back("B class " + g.to_string() + " of internal degree " + u.to_string() + " is not in G'");
        continue;
      }
      if (!satisfies_g_prime_identity(config.t, g)) report.identities_ok = false;
      report.classes_b.push_back({n, u, g});
      lifts_b.push_back(solve_homotopy_lifting(*ts_q, *dq, g, L - 2, comp_q));
    }

  std::vector<TensorClass> classes;
  for (std::size_t ia = 0; ia < report.classes_a.size(); ++ia)
    for (std::size_t ib = 0; ib < report.classes_b.size(); ++ib)
      if (report.classes_a[ia].degree + report.classes_b[ib].degree <= D)
        classes.push_back({ia, ib, tensor_cochain(*total, report.classes_a[ia].cochain, report.classes_b[ib].cochain),
                           std::nullopt, std::nullopt, false, {}});

  parallel_for(classes.size(), config.threads, [&](std::size_t c) {
    auto& tc = classes[c];
    try {
      tc.direct = solve_homotopy_lifting(ts_t, dt, tc.cochain, L - 2, comp_t);
      tc.formula = tensor_homotopy_lifting(diag, lifts_a[tc.ia], lifts_b[tc.ib], L - 2);
      const auto rep = verify_homotopy_lifting(ts_t, dt, tc.formula->f, tc.formula->psi, *tc.formula->companion);
      tc.lifting_ok = rep.ok();
      if (!tc.lifting_ok && !rep.residuals.empty()) tc.problem = "tensor lifting: " + rep.residuals.front();
    } catch (const std::exception& e) {
      tc.problem = std::string("lifting error: ") + e.what();
    }
  });

  const std::size_t count = classes.size();
  report.pairs.resize(count * count);
  parallel_for(count * count, config.threads, [&](std::size_t idx) {
    const auto& X = classes[idx / count];
    const auto& Y = classes[idx % count];
    PairVerdict& pv = report.pairs[idx];
    pv.i = X.ia;
    pv.j = X.ib;
    pv.u = Y.ia;
    pv.v = Y.ib;
    std::vector<std::string> notes;
    try {
      if (!X.direct || !Y.direct || !X.formula || !Y.formula)
        throw std::runtime_error(X.problem.empty() ? Y.problem : X.problem);
      pv.lifting_ok = X.lifting_ok && Y.lifting_ok;
      if (!pv.lifting_ok) notes.push_back(X.lifting_ok ? Y.problem : X.problem);

      const auto& f = report.classes_a[X.ia].cochain;
      const auto& g = report.classes_b[X.ib].cochain;
      const auto& fp = report.classes_a[Y.ia].cochain;
      const auto& gp = report.classes_b[Y.ib].cochain;
      const std::size_t mp = fp.degree();
      const std::size_t n = g.degree();

      const Cochain cup_a = cup(*ts_p, *dp, f, fp);
      const Cochain cup_b = cup(*ts_q, *dq, g, gp);
      const Cochain br_a = bracket(f, lifts_a[X.ia].psi, fp, lifts_a[Y.ia].psi);
      const Cochain br_b = bracket(g, lifts_b[X.ib].psi, gp, lifts_b[Y.ib].psi);

      const Cochain direct = bracket(X.cochain, X.direct->psi, Y.cochain, Y.direct->psi);
      const Cochain formula =
          graded_tensor_bracket(*total, br_a, cup_a, cup_b, br_b, mp, n, config.drop_bracket_sign);
      pv.bracket_ok = is_cocycle(formula) && are_cohomologous(direct, formula);
      if (!pv.bracket_ok) notes.push_back(describe("bracket", direct, formula));

      const Cochain direct_cup = cup(ts_t, dt, X.cochain, Y.cochain);
      const Cochain formula_cup = graded_tensor_cup(*total, cup_a, cup_b, mp, n);
      pv.cup_ok = are_cohomologous(direct_cup, formula_cup);
      if (!pv.cup_ok) {
        notes.push_back(describe("cup", direct_cup, formula_cup));
        const std::size_t m = f.degree();
        const std::size_t np = gp.degree();
        const Cochain other = tensor_cochain(*total, cup_a, cup_b)
                                  .scaled(sign_power(static_cast<std::int64_t>(m * np), total->algebra()->field()));
        if (are_cohomologous(direct_cup, other)) notes.push_back("direct cup agrees with (-1)^(m n') (f cup f') (x) (g cup g')");
      }

      const Cochain via_formula = bracket(X.cochain, X.formula->psi, Y.cochain, Y.formula->psi);
      pv.choice_independent = are_cohomologous(direct, via_formula);
      if (!pv.choice_independent) notes.push_back(describe("lifting choice", direct, via_formula));
    } catch (const std::exception& e) {
      notes.push_back(std::string("error: ") + e.what());
    }
    for (std::size_t k = 0; k < notes.size(); ++k) pv.witness += (k ? "; " : "") + notes[k];
  });
  return report;
}

}  // namespace hh
