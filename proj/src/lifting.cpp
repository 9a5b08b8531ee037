#include "hh/lifting.hpp"

#include <sstream>

namespace hh {

TensorSquare::TensorSquare(ComplexPtr base, std::size_t length) : base_(std::move(base)) {
  if (length > base_->length()) throw std::invalid_argument("tensor square longer than its base complex");
  const auto& p = *base_;
  const auto& alg = p.algebra();
  const auto& a = *alg;
  const std::size_t d = a.dim();
  const std::size_t unit = a.unit();

  gens_.resize(length + 1);
  offsets_.resize(length + 1);
  std::vector<std::vector<Degree>> degrees(length + 1);
  std::vector<std::vector<std::string>> labels(length + 1);
  for (std::size_t n = 0; n <= length; ++n) {
    std::size_t offset = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      offsets_[n].push_back(offset);
      const std::size_t l = n - j;
      for (std::size_t g = 0; g < p.rank(j); ++g)
        for (std::size_t t = 0; t < d; ++t)
          for (std::size_t h = 0; h < p.rank(l); ++h) {
            gens_[n].push_back({j, g, t, h});
            degrees[n].push_back(p.generator_degree(j, g) + a.degree(t) + p.generator_degree(l, h));
            labels[n].push_back(p.generator_label(j, g) + "|" + a.label(t) + "|" + p.generator_label(l, h));
          }
      offset += p.rank(j) * d * p.rank(l);
    }
  }

  std::vector<std::vector<SparseVector>> diff(length + 1);
  for (std::size_t n = 1; n <= length; ++n)
    for (const auto& gen : gens_[n]) {
      const std::size_t j = gen.left_degree;
      const std::size_t l = n - j;
      SparseVector e_left = p.generator(gen.left);
      SparseVector right;  // a_t e_h
      right.add(free_index(d, gen.right, gen.middle, unit), a.field().one());
      SparseVector out;
      if (j >= 1) out.add_scaled(tensor(j - 1, p.differential(j, gen.left), l, right), a.field().one());
      if (l >= 1)
        out.add_scaled(tensor(j, e_left, l - 1, act(a, gen.middle, p.differential(l, gen.right), unit)),
                       sign_power(static_cast<std::int64_t>(j), a.field()));
      diff[n].push_back(std::move(out));
    }

  std::vector<AlgebraElement> aug;
  for (const auto& gen : gens_[0]) {
    AlgebraElement left = p.augmentation(gen.left);
    AlgebraElement mid = AlgebraElement::basis(alg, gen.middle, a.field().one());
    aug.push_back(multiply(multiply(left, mid), p.augmentation(gen.right)));
  }
  auto c = std::make_shared<FreeBimoduleComplex>(alg, std::move(degrees), std::move(diff), std::move(aug), std::move(labels));
  c->set_kind(FreeBimoduleComplex::Kind::tensor_square, 0);
  complex_ = std::move(c);
}

std::size_t TensorSquare::index(std::size_t n, std::size_t j, std::size_t g, std::size_t t, std::size_t h) const {
  const std::size_t d = base_->algebra()->dim();
  return offsets_.at(n).at(j) + (g * d + t) * base_->rank(n - j) + h;
}

SparseVector TensorSquare::tensor(std::size_t j, const SparseVector& x, std::size_t l, const SparseVector& y) const {
  const auto& a = *base_->algebra();
  const std::size_t d = a.dim();
  const std::size_t n = j + l;
  SparseVector out;
  for (const auto& [xi, cx] : x) {
    const auto [g, s, t] = decode_free_index(d, xi);
    for (const auto& [yi, cy] : y) {
      const auto [h, p, q] = decode_free_index(d, yi);
      const Scalar c = cx * cy;
      for (const auto& w : a.product(t, p)) out.add(free_index(d, index(n, j, g, w.index, h), s, q), c * w.coeff);
    }
  }
  return out;
}

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  if (source_->algebra() != target_->algebra()) throw std::invalid_argument("chain map between complexes over different algebras");
}

void ChainMap::push_degree(std::vector<SparseVector> images) {
  const std::size_t n = images_.size();
  if (images.size() != source_->rank(n)) throw std::invalid_argument("chain map needs one image per generator");
  images_.push_back(std::move(images));
}

SparseVector ChainMap::apply(std::size_t n, const SparseVector& x) const {
  const auto& a = *source_->algebra();
  const std::size_t d = a.dim();
  SparseVector out;
  const auto& imgs = images_.at(n);
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(d, idx);
    out.add_scaled(act(a, s, imgs.at(g), t), c);
  }
  return out;
}

LiftError::LiftError(std::size_t degree_, const std::string& message)
    : std::runtime_error("degree " + std::to_string(degree_) + ": " + message), degree(degree_) {}

namespace {

SparseVector to_sparse(const std::vector<Scalar>& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.add(i, v[i]);
  return out;
}

// Solves d_k x_i = rhs_i in the complex p for every column.
std::vector<SparseVector> solve_in_degree(const FreeBimoduleComplex& p, std::size_t k, const std::vector<SparseVector>& rhs,
                                          std::size_t error_degree, const std::string& what) {
  if (rhs.empty()) return {};
  bool all_zero = true;
  for (const auto& r : rhs) all_zero = all_zero && r.empty();
  if (all_zero) return std::vector<SparseVector>(rhs.size());
  if (k > p.length()) throw LiftError(error_degree, what + ": needs degree " + std::to_string(k) + " beyond the truncation");
  const Matrix dk = differential_matrix(p, k);
  Matrix b(p.algebra()->field(), dk.rows(), rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b.set_column(i, rhs[i]);
  auto sols = solve_many(dk, b);
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (!sols[i]) throw LiftError(error_degree, what + ": no solution on generator " + p.generator_label(error_degree, i));
    out.push_back(to_sparse(*sols[i]));
  }
  return out;
}

// Solves mu x_i = target_i in P_0.
std::vector<SparseVector> solve_augmentation(const FreeBimoduleComplex& p, const std::vector<AlgebraElement>& targets,
                                             std::size_t error_degree, const std::string& what) {
  const Matrix mu = augmentation_matrix(p);
  Matrix b(p.algebra()->field(), mu.rows(), targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) b.set_column(i, targets[i].coeffs());
  auto sols = solve_many(mu, b);
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (!sols[i]) throw LiftError(error_degree, what + ": augmentation is not onto");
    out.push_back(to_sparse(*sols[i]));
  }
  return out;
}

}  // namespace

ChainMap lift_chain_map(const ComplexPtr& source, const ComplexPtr& target, std::vector<SparseVector> degree0,
                        std::size_t up_to) {
  if (up_to > source->length() || up_to > target->length())
    throw std::invalid_argument("lift beyond the truncation of source or target");
  ChainMap phi(source, target, 0);
  for (std::size_t g = 0; g < source->rank(0); ++g)
    if (!(target->apply_augmentation(degree0.at(g)) == source->augmentation(g)))
      throw LiftError(0, "degree-0 map does not commute with the augmentations on " + source->generator_label(0, g));
  phi.push_degree(std::move(degree0));
  for (std::size_t n = 1; n <= up_to; ++n) {
    std::vector<SparseVector> rhs;
    for (std::size_t g = 0; g < source->rank(n); ++g) rhs.push_back(phi.apply(n - 1, source->differential(n, g)));
    phi.push_degree(solve_in_degree(*target, n, rhs, n, "chain map lift"));
  }
  return phi;
}

ChainMap diagonal_periodic(const TensorSquare& ts) {
  const auto& p = *ts.base();
  if (p.kind() != FreeBimoduleComplex::Kind::periodic)
    throw std::invalid_argument("diagonal_periodic needs a periodic truncated resolution");
  if (p.kind_parameter() != 2) return lift_diagonal(ts);
  const auto& a = *p.algebra();
  ChainMap delta(ts.base(), ts.complex(), 0);
  for (std::size_t n = 0; n <= ts.length(); ++n) {
    SparseVector v;
    for (std::size_t j = 0; j <= n; ++j)
      v.add(free_index(a.dim(), ts.index(n, j, 0, a.unit(), 0), a.unit(), a.unit()), a.field().one());
    delta.push_degree({v});
  }
  return delta;
}

ChainMap lift_diagonal(const TensorSquare& ts) {
  const auto& p = *ts.base();
  const auto& a = *p.algebra();
  if (p.rank(0) != 1) throw std::invalid_argument("lift_diagonal needs rank P_0 = 1");
  SparseVector e00;
  e00.add(free_index(a.dim(), ts.index(0, 0, 0, a.unit(), 0), a.unit(), a.unit()), a.field().one());
  return lift_chain_map(ts.base(), ts.complex(), {e00}, ts.length());
}

namespace {

// e(r_1..r_n) in degree n has index sum r_i dim^{n-i}.
ChainMap bar_diagonal(const TensorSquare& ts) {
  const auto& p = *ts.base();
  const auto& a = *p.algebra();
  const std::size_t d = a.dim();
  ChainMap delta(ts.base(), ts.complex(), 0);
  for (std::size_t n = 0; n <= ts.length(); ++n) {
    std::vector<SparseVector> imgs;
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      SparseVector v;
      std::size_t pow = p.rank(n);  // d^n
      for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t right_size = pow;  // d^{n-j}
        v.add(free_index(d, ts.index(n, j, g / right_size, a.unit(), g % right_size), a.unit(), a.unit()), a.field().one());
        pow /= (j < n ? d : 1);
      }
      imgs.push_back(std::move(v));
    }
    delta.push_degree(std::move(imgs));
  }
  return delta;
}

}  // namespace

ChainMap diagonal(const TensorSquare& ts) {
  switch (ts.base()->kind()) {
    case FreeBimoduleComplex::Kind::periodic:
      return diagonal_periodic(ts);
    case FreeBimoduleComplex::Kind::bar:
      return bar_diagonal(ts);
    default:
      return lift_diagonal(ts);
  }
}

long first_chain_map_failure(const ChainMap& phi) {
  const auto& src = *phi.source();
  const auto& dst = *phi.target();
  for (std::size_t n = 0; n < phi.defined_degrees(); ++n) {
    const long k = phi.target_degree(n);
    for (std::size_t g = 0; g < src.rank(n); ++g) {
      if (k < 0) {
        if (!phi.image(n, g).empty()) return static_cast<long>(n);
        continue;
      }
      if (k == 0) {
        if (phi.shift() == 0 && !(dst.apply_augmentation(phi.image(n, g)) == src.augmentation(g))) return static_cast<long>(n);
        continue;
      }
      SparseVector lhs = dst.apply_differential(static_cast<std::size_t>(k), phi.image(n, g));
      SparseVector rhs = n >= 1 ? phi.apply(n - 1, src.differential(n, g)) : SparseVector();
      if (!(lhs == rhs)) return static_cast<long>(n);
    }
  }
  return -1;
}

SparseVector apply_cochain_left(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f) {
  const auto& a = *ts.base()->algebra();
  const std::size_t d = a.dim();
  const std::size_t m = f.degree();
  SparseVector out;
  if (m > n) return out;
  for (const auto& [idx, c] : x) {
    const auto [G, s, u] = decode_free_index(d, idx);
    const auto& gen = ts.generator(n, G);
    if (gen.left_degree != m) continue;
    const auto& v = f.value(gen.left);
    // a_s f(e_g) a_t e_h a_u
    for (std::size_t w = 0; w < d; ++w) {
      if (v[w].is_zero()) continue;
      for (const auto& x1 : a.product(s, w))
        for (const auto& x2 : a.product(x1.index, gen.middle))
          out.add(free_index(d, gen.right, x2.index, u), c * v[w] * x1.coeff * x2.coeff);
    }
  }
  return out;
}

SparseVector apply_cochain_right(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f) {
  const auto& a = *ts.base()->algebra();
  const std::size_t d = a.dim();
  const std::size_t m = f.degree();
  SparseVector out;
  if (m > n) return out;
  const std::size_t j = n - m;
  const Scalar sign = sign_power(static_cast<std::int64_t>(m * j), a.field());
  for (const auto& [idx, c] : x) {
    const auto [G, s, u] = decode_free_index(d, idx);
    const auto& gen = ts.generator(n, G);
    if (gen.left_degree != j) continue;
    const auto& v = f.value(gen.right);
    // a_s e_g a_t f(e_h) a_u
    for (std::size_t w = 0; w < d; ++w) {
      if (v[w].is_zero()) continue;
      for (const auto& x1 : a.product(gen.middle, w))
        for (const auto& x2 : a.product(x1.index, u))
          out.add(free_index(d, gen.left, s, x2.index), sign * c * v[w] * x1.coeff * x2.coeff);
    }
  }
  return out;
}

AlgebraElement apply_cochain_pair(const TensorSquare& ts, std::size_t n, const SparseVector& x, const Cochain& f,
                                  const Cochain& g) {
  const auto& alg = ts.base()->algebra();
  const auto& a = *alg;
  const std::size_t d = a.dim();
  AlgebraElement out(alg);
  if (f.degree() + g.degree() != n) throw std::invalid_argument("cochain pair degrees do not add up to the tensor degree");
  const std::size_t j = f.degree();
  const Scalar sign = koszul_sign(static_cast<std::int64_t>(g.degree()), static_cast<std::int64_t>(j), a.field());
  for (const auto& [idx, c] : x) {
    const auto [G, s, u] = decode_free_index(d, idx);
    const auto& gen = ts.generator(n, G);
    if (gen.left_degree != j) continue;
    // a_s f(e_g) a_t g(e_h) a_u
    AlgebraElement left = multiply(AlgebraElement::basis(alg, s, a.field().one()), f.value(gen.left));
    left = multiply(left, AlgebraElement::basis(alg, gen.middle, a.field().one()));
    AlgebraElement right = multiply(g.value(gen.right), AlgebraElement::basis(alg, u, a.field().one()));
    out += multiply(left, right).scaled(sign * c);
  }
  return out;
}

SparseVector lifting_rhs(const TensorSquare& ts, const ChainMap& delta, const Cochain& f, std::size_t n,
                         std::size_t gen) {
  const SparseVector& x = delta.image(n, gen);
  return apply_cochain_left(ts, n, x, f) - apply_cochain_right(ts, n, x, f);
}

ChainMap solve_companion(const TensorSquare& ts, const ChainMap& delta, std::size_t up_to) {
  const auto& base = ts.base();
  const auto& p = *base;
  if (!delta.defined(up_to)) throw std::invalid_argument("diagonal not defined up to the companion degree");
  const Cochain mu = augmentation_cochain(base);
  const Field& k = p.algebra()->field();
  ChainMap psi(base, base, 1);
  for (std::size_t n = 0; n <= up_to; ++n) {
    std::vector<SparseVector> rhs;
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      SparseVector r = lifting_rhs(ts, delta, mu, n, g);
      if (n >= 1) r.add_scaled(psi.apply(n - 1, p.differential(n, g)), -k.one());
      rhs.push_back(std::move(r));
    }
    psi.push_degree(solve_in_degree(p, n + 1, rhs, n, "companion lifting"));
  }
  return psi;
}

HomotopyLifting solve_homotopy_lifting(const TensorSquare& ts, const ChainMap& delta, const Cochain& f,
                                       std::size_t up_to, std::shared_ptr<const ChainMap> companion) {
  const auto& base = ts.base();
  const auto& p = *base;
  if (f.complex() != base) throw std::invalid_argument("cochain lives on a different complex");
  const std::size_t m = f.degree();
  if (m == 0) throw std::invalid_argument("homotopy liftings of degree-0 classes are not supported");
  if (!delta.defined(up_to)) throw std::invalid_argument("diagonal not defined up to the lifting degree");
  if (!companion) companion = std::make_shared<const ChainMap>(solve_companion(ts, delta, m - 1));
  if (!companion->defined(m - 1)) throw std::invalid_argument("companion lifting not defined in degree m-1");
  const Field& k = p.algebra()->field();
  const Scalar sign = sign_power(static_cast<std::int64_t>(m - 1), k);

  ChainMap psi(base, base, 1 - static_cast<int>(m));
  for (std::size_t n = 0; n <= up_to; ++n) {
    if (n + 1 < m) {
      psi.push_degree(std::vector<SparseVector>(p.rank(n)));
      continue;
    }
    if (n + 1 == m) {
      std::vector<AlgebraElement> targets;
      for (std::size_t g = 0; g < p.rank(n); ++g) targets.push_back(f.evaluate(companion->image(n, g)).scaled(sign));
      psi.push_degree(solve_augmentation(p, targets, n, "homotopy lifting"));
      continue;
    }
    std::vector<SparseVector> rhs;
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      SparseVector r = lifting_rhs(ts, delta, f, n, g);
      r.add_scaled(psi.apply(n - 1, p.differential(n, g)), sign);
      rhs.push_back(std::move(r));
    }
    psi.push_degree(solve_in_degree(p, n - m + 1, rhs, n, "homotopy lifting"));
  }
  return {f, std::move(psi), std::move(companion)};
}

LiftingReport verify_homotopy_lifting(const TensorSquare& ts, const ChainMap& delta, const Cochain& f,
                                      const ChainMap& psi, const ChainMap& companion, LiftingOptions options) {
  LiftingReport report;
  const auto& base = ts.base();
  const auto& p = *base;
  const Field& k = p.algebra()->field();
  const std::size_t m = f.degree();
  const Scalar sign = sign_power(static_cast<std::int64_t>(m) - 1, k);
  if (psi.source() != base || companion.source() != base || f.complex() != base)
    throw std::invalid_argument("lifting data live on different complexes");
  if (psi.shift() != 1 - static_cast<int>(m) || companion.shift() != 1)
    throw std::invalid_argument("lifting maps have the wrong homological shift");

  for (std::size_t n = m; n < psi.defined_degrees(); ++n) {
    if (!delta.defined(n)) break;
    const std::size_t tk = n - m + 1;
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      SparseVector lhs = p.apply_differential(tk, psi.image(n, g));
      lhs.add_scaled(psi.apply(n - 1, p.differential(n, g)), -sign);
      SparseVector residual = lhs - lifting_rhs(ts, delta, f, n, g);
      if (!residual.empty()) {
        report.condition1 = false;
        report.residuals.push_back("condition 1 fails in degree " + std::to_string(n) + " on " + p.generator_label(n, g) +
                                   ": residual " + print_element(p, tk - 1, residual));
      }
    }
  }

  const Cochain mu = augmentation_cochain(base);
  for (std::size_t n = 0; n < companion.defined_degrees(); ++n) {
    if (!delta.defined(n) || n + 1 > p.length()) break;
    for (std::size_t g = 0; g < p.rank(n); ++g) {
      SparseVector lhs = p.apply_differential(n + 1, companion.image(n, g));
      if (n >= 1) lhs.add_scaled(companion.apply(n - 1, p.differential(n, g)), k.one());
      if (!(lhs == lifting_rhs(ts, delta, mu, n, g))) {
        report.companion_ok = false;
        report.residuals.push_back("companion equation fails in degree " + std::to_string(n) + " on " +
                                   p.generator_label(n, g));
      }
    }
  }

  if (m == 0 || !psi.defined(m - 1) || !companion.defined(m - 1)) {
    report.condition2 = false;
    report.residuals.push_back("condition 2 needs psi and its companion in degree m-1");
  } else {
    Cochain c(base, m - 1);
    for (std::size_t g = 0; g < p.rank(m - 1); ++g)
      c.set_value(g, p.apply_augmentation(psi.image(m - 1, g)) - f.evaluate(companion.image(m - 1, g)).scaled(sign));
    if (!is_coboundary(c)) {
      report.condition2 = false;
      report.residuals.push_back("condition 2 fails: mu psi_f - (-1)^(m-1) f psi = " + c.to_string() +
                                 " is not a coboundary");
    }
  }
  if (!report.condition2 && options.koszul) report.warning = true;
  return report;
}

Cochain cup(const TensorSquare& ts, const ChainMap& delta, const Cochain& f, const Cochain& fp, bool* inputs_are_cocycles) {
  const auto& base = ts.base();
  if (f.complex() != base || fp.complex() != base) throw std::invalid_argument("cup of cochains on different complexes");
  const std::size_t n = f.degree() + fp.degree();
  if (!delta.defined(n)) throw std::invalid_argument("diagonal not defined in the cup degree");
  if (inputs_are_cocycles) *inputs_are_cocycles = is_cocycle(f) && is_cocycle(fp);
  Cochain out(base, n);
  for (std::size_t g = 0; g < base->rank(n); ++g) out.set_value(g, apply_cochain_pair(ts, n, delta.image(n, g), fp, f));
  return out;
}

Cochain bracket(const Cochain& f, const ChainMap& psi_f, const Cochain& g, const ChainMap& psi_g) {
  const auto& base = f.complex();
  if (g.complex() != base || psi_f.source() != base || psi_g.source() != base)
    throw std::invalid_argument("bracket of data on different complexes");
  const std::size_t m = f.degree();
  const std::size_t n = g.degree();
  if (m == 0 || n == 0) throw std::invalid_argument("brackets with degree-0 classes are not supported");
  const std::size_t top = m + n - 1;
  if (!psi_f.defined(top) || !psi_g.defined(top)) throw std::invalid_argument("liftings not defined in the bracket degree");
  const Scalar sign = sign_power(static_cast<std::int64_t>((m - 1) * (n - 1)), base->algebra()->field());
  Cochain out(base, top);
  for (std::size_t e = 0; e < base->rank(top); ++e)
    out.set_value(e, f.evaluate(psi_g.image(top, e)) - g.evaluate(psi_f.image(top, e)).scaled(sign));
  return out;
}

Cochain pull_back(const Cochain& f, const ChainMap& phi, std::size_t degree) {
  if (f.complex() != phi.target()) throw std::invalid_argument("cochain does not live on the target of the map");
  if (phi.target_degree(degree) != static_cast<long>(f.degree())) throw std::invalid_argument("degree mismatch in pull_back");
  Cochain out(phi.source(), degree);
  for (std::size_t g = 0; g < phi.source()->rank(degree); ++g) out.set_value(g, f.evaluate(phi.image(degree, g)));
  return out;
}

std::string print_element(const FreeBimoduleComplex& p, std::size_t n, const SparseVector& x) {
  if (x.empty()) return "0";
  const auto& a = *p.algebra();
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : x) {
    const auto [g, s, t] = decode_free_index(a.dim(), idx);
    if (!first) os << " + ";
    first = false;
    os << c.to_string() << '*' << a.label(s) << '|' << p.generator_label(n, g) << '|' << a.label(t);
  }
  return os.str();
}

std::string print_chain_map(const ChainMap& phi, std::size_t from, std::size_t to) {
  std::ostringstream os;
  const auto& src = *phi.source();
  for (std::size_t n = from; n <= to && phi.defined(n); ++n) {
    const long k = phi.target_degree(n);
    for (std::size_t g = 0; g < src.rank(n); ++g) {
      os << src.generator_label(n, g) << " -> ";
      if (k < 0)
        os << "0";
      else
        os << print_element(*phi.target(), static_cast<std::size_t>(k), phi.image(n, g));
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace hh
