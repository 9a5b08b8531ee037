#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hh::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

struct Options {
  std::string command;
  std::string file;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> max_degree;
  std::optional<std::size_t> up_to;
  std::optional<std::size_t> length;
  std::optional<std::string> twist;
  std::optional<std::string> algebra;
  std::optional<std::string> resolution;
  std::optional<std::string> left;   // `m:i`, class i of the HH^m basis
  std::optional<std::string> right;
  std::optional<std::string> cls;
  std::size_t threads = 1;
  bool emit_records = false;
  bool drop_bracket_sign = false;  // mutation testing
};

/// Human report lines plus one record per check.
class Report {
 public:
  void text(const std::string& line);
  void check(const std::string& id, bool pass, const std::string& detail = "");
  bool all_pass() const;
  std::size_t checks() const { return records_.size(); }
  void write(std::ostream& out, bool records) const;

 private:
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, bool>> records_;
};

/// Thread count from HHCOMP_THREADS, 1 when unset. Throws std::invalid_argument.
std::size_t default_threads();

/// Runs one command; returns the exit code.
int run_command(const Options& options, std::ostream& out, std::ostream& err);

/// Command-line entry point of hhcomp.
int hhcomp_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hh::cli
