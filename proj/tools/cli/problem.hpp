#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hh/complexes.hpp"
#include "hh/grading.hpp"

namespace hh::cli {

/// One `mult i j -> l c` line; operands are basis labels or indices as written.
struct ProductSpec {
  std::string left, right, result, coeff;
  std::size_t line = 0;
};

struct AlgebraSpec {
  std::string name;
  std::size_t line = 0;
  // `algebra NAME truncated N VAR [degree D] [group G]`
  bool truncated = false;
  std::size_t order = 0;
  std::string var;
  std::string degree;  // empty: |var| = 1 in Z
  // block form, and the group of the truncated form
  std::string group;
  std::vector<std::pair<std::string, std::string>> basis;  // label, degree text
  std::string unit;
  std::vector<ProductSpec> products;
};

struct TwistSpec {
  std::string left, right;
  std::size_t line = 0;
  bool uniform = false;
  std::vector<std::vector<std::string>> rows;  // uniform: one row with one entry
};

struct ResolutionSpec {
  enum class Kind { truncated, bar, inline_complex };
  std::string name;
  std::string algebra;
  std::size_t line = 0;
  Kind kind = Kind::truncated;
  std::size_t order = 0;  // truncated(N, length)
  std::size_t length = 0;
  std::string text;  // inline: the complex block, `complex` .. `end`
  std::size_t text_line = 0;
};

struct TaskSpec {
  std::vector<std::string> words;
  std::size_t line = 0;
};

struct ProblemFile {
  std::string field = "Q";
  std::vector<AlgebraSpec> algebras;
  std::optional<TwistSpec> twist;
  std::vector<ResolutionSpec> resolutions;
  std::vector<TaskSpec> tasks;
};

/// Throws hh::ParseError with 1-based line and column.
ProblemFile parse_problem(const std::string& text);
/// Canonical text; parse_problem(print_problem(p)) prints back identically.
std::string print_problem(const ProblemFile& p);

/// Field from `Q` or `F p`. Throws std::invalid_argument.
Field parse_field(const std::string& text);
/// `Z^2 x Z/4`, `0`. Throws std::invalid_argument.
GradingGroupPtr parse_group(const std::string& text);

/// The objects a problem file describes. Resolutions are built on demand so a
/// command can ask for the length it needs.
class Model {
 public:
  explicit Model(ProblemFile file);

  const ProblemFile& file() const { return file_; }
  const Field& field() const { return field_; }

  const std::vector<std::string>& algebra_names() const { return order_; }
  AlgebraPtr algebra(const std::string& name) const;
  const AlgebraSpec& algebra_spec(const std::string& name) const;

  bool has_twist() const { return file_.twist.has_value(); }
  /// The algebras of the twist block, or the first two declared (the first
  /// one twice when it is alone).
  std::pair<std::string, std::string> twist_pair() const;
  /// The twist block, or the uniform twist with value `q_override`.
  Bicharacter twist(const std::optional<std::string>& q_override = std::nullopt) const;

  /// The named resolution, or the first one declared on `algebra`, or a
  /// builtin one (periodic for k[x]/(x^N), bar otherwise) of length `min_length`.
  /// Throws std::invalid_argument when a declared resolution is shorter.
  ComplexPtr resolution(const std::string& algebra, std::size_t min_length,
                        const std::optional<std::string>& name = std::nullopt) const;
  ComplexPtr declared_resolution(const ResolutionSpec& spec) const;

 private:
  ProblemFile file_;
  Field field_;
  std::vector<std::string> order_;
  std::map<std::string, AlgebraPtr> algebras_;
};

}  // namespace hh::cli
