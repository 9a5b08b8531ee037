#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hh/scalar.hpp"

namespace hh {

/// Finitely generated abelian group presented as a list of cyclic factors.
///
/// Factor order 0 means Z, order m >= 2 means Z/m. `GradingGroup(r, torsion)`
/// gives the canonical Z^r + (+) Z/m_i presentation; direct sums concatenate
/// the factor lists, so the coordinates of (f, g) in F (+) G are those of f
/// followed by those of g.
class GradingGroup {
 public:
  GradingGroup() = default;
  GradingGroup(std::size_t free_rank, std::vector<std::int64_t> torsion);

  static std::shared_ptr<const GradingGroup> make(std::size_t free_rank, std::vector<std::int64_t> torsion = {});
  static std::shared_ptr<const GradingGroup> from_orders(std::vector<std::int64_t> orders);
  static std::shared_ptr<const GradingGroup> direct_sum(const GradingGroup& f, const GradingGroup& g);

  std::size_t num_factors() const { return orders_.size(); }
  /// 0 for a free factor.
  std::int64_t order(std::size_t factor) const { return orders_[factor]; }
  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t free_rank() const;
  std::vector<std::int64_t> torsion() const;

  /// `0`, `Z`, `Z^2 x Z/4`, ... in factor order.
  std::string signature() const;

  bool operator==(const GradingGroup&) const = default;

 private:
  std::vector<std::int64_t> orders_;
};

using GradingGroupPtr = std::shared_ptr<const GradingGroup>;

/// Element of a GradingGroup; torsion coordinates are kept reduced.
class Degree {
 public:
  Degree() = default;
  Degree(GradingGroupPtr group, std::vector<std::int64_t> coords);

  static Degree zero(const GradingGroupPtr& group);

  const GradingGroupPtr& group_ptr() const { return group_; }
  const GradingGroup& group() const { return *group_; }
  std::span<const std::int64_t> coords() const { return coords_; }
  bool is_zero() const;

  Degree operator+(const Degree& rhs) const;
  Degree operator-(const Degree& rhs) const;
  Degree operator-() const;
  /// n-fold multiple.
  Degree times(std::int64_t n) const;

  bool same_group(const Degree& rhs) const;
  bool operator==(const Degree& rhs) const;

  /// `[a,b,...]`.
  std::string to_string() const;

 private:
  void require_same_group(const Degree& rhs) const;

  GradingGroupPtr group_;
  std::vector<std::int64_t> coords_;
};

/// Embeddings and projections for F (+) G.
Degree embed_left(const GradingGroupPtr& sum, const Degree& f);
Degree embed_right(const GradingGroupPtr& sum, const Degree& g);
Degree direct_sum_degree(const GradingGroupPtr& sum, const Degree& f, const Degree& g);

/// A twisting t: F (x)_Z G -> k^x given on pairs of cyclic generators.
class Bicharacter {
 public:
  /// `values[i][j]` is t(gen_i (x) gen_j). Throws std::invalid_argument when a
  /// value is zero or incompatible with a torsion order.
  Bicharacter(GradingGroupPtr left, GradingGroupPtr right, Field k, std::vector<std::vector<Scalar>> values);

  static Bicharacter trivial(GradingGroupPtr left, GradingGroupPtr right, Field k);
  /// Same value q on every generator pair.
  static Bicharacter uniform(GradingGroupPtr left, GradingGroupPtr right, Scalar q);

  const GradingGroupPtr& left() const { return left_; }
  const GradingGroupPtr& right() const { return right_; }
  const Field& field() const { return field_; }
  const Scalar& value(std::size_t i, std::size_t j) const { return values_[i][j]; }
  bool is_trivial() const;

  /// t^<f|g>; throws std::invalid_argument if f or g lies in the wrong group.
  Scalar evaluate(const Degree& f, const Degree& g) const;

  /// f lies in F' (pairs trivially with all of G).
  bool in_f_prime(const Degree& f) const;
  /// g lies in G' (pairs trivially with all of F).
  bool in_g_prime(const Degree& g) const;

 private:
  GradingGroupPtr left_;
  GradingGroupPtr right_;
  Field field_;
  std::vector<std::vector<Scalar>> values_;
};

}  // namespace hh
