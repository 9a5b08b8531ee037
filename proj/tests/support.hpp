#pragma once

#include <random>
#include <string>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/complexes.hpp"
#include "hh/grading.hpp"
#include "hh/lifting.hpp"
#include "hh/oracle.hpp"

namespace hh::test {

using Rng = std::mt19937_64;

inline Scalar random_scalar(const Field& k, Rng& rng, int bound = 4) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return k.from_int(d(rng));
}

inline Scalar random_nonzero(const Field& k, Rng& rng, int bound = 4) {
  while (true) {
    Scalar s = random_scalar(k, rng, bound);
    if (!s.is_zero()) return s;
  }
}

/// Dense table [i][j] -> coefficients of b_i b_j.
using DenseTable = std::vector<std::vector<std::vector<Scalar>>>;

inline AlgebraPtr from_dense(const Field& k, const GradingGroupPtr& group, std::vector<std::string> labels,
                             std::vector<Degree> degrees, std::size_t unit, const DenseTable& t) {
  const std::size_t d = labels.size();
  GradedAlgebra::Table table(d, std::vector<std::vector<Term>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        if (!t[i][j][l].is_zero()) table[i][j].push_back({l, t[i][j][l]});
  return std::make_shared<const GradedAlgebra>(k, group, std::move(labels), std::move(degrees), unit, std::move(table));
}

inline DenseTable to_dense(const GradedAlgebra& a) {
  const std::size_t d = a.dim();
  DenseTable t(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, a.field().zero())));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& term : a.product(i, j)) t[i][j][term.index] += term.coeff;
  return t;
}

/// Small algebras of dimension <= 3 with the trivial grading, unit first.
inline std::vector<std::pair<std::string, AlgebraPtr>> catalog(const Field& k) {
  const auto g = GradingGroup::from_orders({});
  const Degree z = Degree::zero(g);
  auto make = [&](std::vector<std::string> labels, auto&& mult) {
    const std::size_t d = labels.size();
    DenseTable t(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, k.zero())));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mult(i, j, t[i][j]);
    return from_dense(k, g, std::move(labels), std::vector<Degree>(d, z), 0, t);
  };
  std::vector<std::pair<std::string, AlgebraPtr>> out;
  out.emplace_back("k", make({"1"}, [&](auto, auto, auto& v) { v[0] = k.one(); }));
  // k[x]/(x^N): x^i x^j = x^{i+j}
  for (std::size_t n : {2, 3}) {
    std::vector<std::string> labels{"1", "x", "x2"};
    labels.resize(n);
    out.emplace_back("k[x]/(x^" + std::to_string(n) + ")", make(labels, [&](auto i, auto j, auto& v) {
                       if (i + j < n) v[i + j] = k.one();
                     }));
  }
  // k x k with idempotents: basis 1, e (e^2 = e)
  out.emplace_back("k x k", make({"1", "e"}, [&](auto i, auto j, auto& v) { v[(i || j) ? 1 : 0] = k.one(); }));
  // k x k x k: basis 1, e, f with e f = 0
  out.emplace_back("k x k x k", make({"1", "e", "f"}, [&](auto i, auto j, auto& v) {
                     if (i == 0) v[j] = k.one();
                     else if (j == 0) v[i] = k.one();
                     else if (i == j) v[i] = k.one();
                   }));
  // k[x,y]/(x,y)^2
  out.emplace_back("k[x,y]/(x,y)^2", make({"1", "x", "y"}, [&](auto i, auto j, auto& v) {
                     if (i == 0) v[j] = k.one();
                     else if (j == 0) v[i] = k.one();
                   }));
  // upper triangular 2x2 matrices: 1, e = E11, n = E12 with e n = n, n e = 0
  out.emplace_back("T2", make({"1", "e", "n"}, [&](auto i, auto j, auto& v) {
                     if (i == 0) v[j] = k.one();
                     else if (j == 0) v[i] = k.one();
                     else if (i == 1 && j == 1) v[1] = k.one();
                     else if (i == 1 && j == 2) v[2] = k.one();
                   }));
  return out;
}

/// Inverse of a square matrix by Gauss-Jordan elimination; empty if singular.
inline std::vector<std::vector<Scalar>> inverse(std::vector<std::vector<Scalar>> m, const Field& k) {
  const std::size_t n = m.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, k.zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return {};
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Scalar s = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Scalar f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// The same algebra on a random basis b'_0 = 1, b'_i = sum_j M_ij b_j.
inline AlgebraPtr random_basis_change(const AlgebraPtr& a, Rng& rng) {
  const Field& k = a->field();
  const std::size_t d = a->dim();
  std::vector<std::vector<Scalar>> m, minv;
  do {
    m.assign(d, std::vector<Scalar>(d, k.zero()));
    m[0][a->unit()] = k.one();
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] = random_scalar(k, rng, 3);
    minv = inverse(m, k);
  } while (minv.empty());
  const DenseTable old = to_dense(*a);
  DenseTable t(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, k.zero())));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Scalar> v(d, k.zero());
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t u = 0; u < d; ++u)
          for (std::size_t l = 0; l < d; ++l) v[l] += m[i][s] * m[j][u] * old[s][u][l];
      // row vector v in the old basis -> coordinates v M^{-1} in the new one
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t s = 0; s < d; ++s) t[i][j][l] += v[s] * minv[s][l];
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back(i == 0 ? "1" : "b" + std::to_string(i));
  return from_dense(k, a->group(), labels, std::vector<Degree>(d, Degree::zero(a->group())), 0, t);
}

/// Random cochain of degree n on p (values on the generators).
inline Cochain random_cochain(const ComplexPtr& p, std::size_t n, Rng& rng) {
  const auto& a = p->algebra();
  Cochain f(p, n);
  for (std::size_t g = 0; g < p->rank(n); ++g) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(random_scalar(a->field(), rng, 2));
    f.set_value(g, AlgebraElement(a, c));
  }
  return f;
}

/// Random linear combination of the HH^n basis classes plus a random coboundary.
inline Cochain random_class(const ComplexPtr& p, std::size_t n, Rng& rng) {
  const auto basis = cohomology_basis(p, n);
  const Field& k = p->algebra()->field();
  Cochain f(p, n);
  for (const auto& c : basis.classes) f = f + c.scaled(random_scalar(k, rng, 3));
  if (n >= 1) f = f + coboundary(random_cochain(p, n - 1, rng));
  return f;
}

// A graded map between graded spaces given on homogeneous basis vectors:
// basis vector i of degree deg[i] goes to a combination of target basis vectors.
struct GradedMap {
  int degree;
  std::vector<int> src_deg, dst_deg;
  std::vector<std::vector<Scalar>> cols;  // cols[i][j] = coefficient of target j in f(source i)
};

inline GradedMap random_map(int degree, const std::vector<int>& src, const std::vector<int>& dst, const Field& k,
                            Rng& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  GradedMap f{degree, src, dst, {}};
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<Scalar> col(dst.size(), k.zero());
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (dst[j] == src[i] + degree) col[j] = k.from_int(d(rng));
    f.cols.push_back(col);
  }
  return f;
}

inline GradedMap compose(const GradedMap& g, const GradedMap& f, const Field& k) {
  GradedMap h{g.degree + f.degree, f.src_deg, g.dst_deg, {}};
  for (const auto& col : f.cols) {
    std::vector<Scalar> out(g.dst_deg.size(), k.zero());
    for (std::size_t j = 0; j < col.size(); ++j)
      for (std::size_t l = 0; l < out.size(); ++l) out[l] += col[j] * g.cols[j][l];
    h.cols.push_back(out);
  }
  return h;
}

// (g (x) h)(v (x) w) = (-1)^{|h||v|} g(v) (x) h(w) on the product basis.
inline GradedMap tensor(const GradedMap& g, const GradedMap& h, const Field& k) {
  GradedMap t{g.degree + h.degree, {}, {}, {}};
  for (int a : g.src_deg)
    for (int b : h.src_deg) t.src_deg.push_back(a + b);
  for (int a : g.dst_deg)
    for (int b : h.dst_deg) t.dst_deg.push_back(a + b);
  for (std::size_t v = 0; v < g.src_deg.size(); ++v)
    for (std::size_t w = 0; w < h.src_deg.size(); ++w) {
      const Scalar s = koszul_sign(h.degree, g.src_deg[v], k);
      std::vector<Scalar> col(t.dst_deg.size(), k.zero());
      for (std::size_t a = 0; a < g.dst_deg.size(); ++a)
        for (std::size_t b = 0; b < h.dst_deg.size(); ++b)
          col[a * h.dst_deg.size() + b] = s * g.cols[v][a] * h.cols[w][b];
      t.cols.push_back(col);
    }
  return t;
}

// psi + d theta + (-1)^{m-1} theta d for a random theta: P_n -> P_{n-m+2}
// landing in degrees >= 1.
inline ChainMap perturb(const ChainMap& psi, std::size_t m, Rng& rng) {
  const ComplexPtr& p = psi.source();
  const Field& k = p->algebra()->field();
  const std::size_t dim = p->algebra()->dim();
  const std::size_t top = psi.defined_degrees();
  ChainMap theta(p, p, 2 - static_cast<int>(m));
  for (std::size_t n = 0; n < top; ++n) {
    std::vector<SparseVector> images(p->rank(n));
    const long t = theta.target_degree(n);
    if (t >= 1 && static_cast<std::size_t>(t) <= p->length())
      for (auto& v : images)
        for (std::size_t h = 0; h < p->rank(t); ++h)
          for (std::size_t s = 0; s < dim; ++s)
            for (std::size_t u = 0; u < dim; ++u)
              if (rng() % 3 == 0) v.add(free_index(dim, h, s, u), random_scalar(k, rng, 2));
    theta.push_degree(std::move(images));
  }
  const Scalar sign = m % 2 == 1 ? k.one() : -k.one();
  ChainMap out(p, p, psi.shift());
  for (std::size_t n = 0; n < top; ++n) {
    std::vector<SparseVector> images;
    const long t = theta.target_degree(n);
    for (std::size_t g = 0; g < p->rank(n); ++g) {
      SparseVector v = psi.image(n, g);
      if (t >= 1) v = v + p->apply_differential(t, theta.image(n, g));
      if (n >= 1) v = v + theta.apply(n - 1, p->apply_differential(n, p->generator(g))).scaled(sign);
      images.push_back(v);
    }
    out.push_degree(std::move(images));
  }
  return out;
}

inline constexpr int kRandomSeeds = 50;
inline constexpr std::size_t kRandomBarLength = 4;

struct RandomCase {
  std::string name;
  ComplexPtr bar;
};

/// Seed s: a catalog algebra of dimension 2 or 3 over a small F_p under a
/// random change of basis, with its bar resolution.
inline RandomCase random_case(int seed) {
  constexpr std::uint32_t primes[] = {2, 3, 5, 7, 11};
  Rng rng(static_cast<std::uint64_t>(seed) * 7919 + 1);
  const Field k = Field::prime(primes[seed % 5]);
  const auto cat = catalog(k);
  const auto& [name, a] = cat[1 + static_cast<std::size_t>(seed) % (cat.size() - 1)];
  const auto b = random_basis_change(a, rng);
  return {name + " over " + k.to_string() + " seed " + std::to_string(seed), bar_resolution(b, kRandomBarLength)};
}

}  // namespace hh::test
