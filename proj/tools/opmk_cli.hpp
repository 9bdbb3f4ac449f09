#pragma once

// Command-line layer: instance files, generators, the self-test driver and
// the argument dispatcher used by the `opmk` executable.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opmk/matcher.hpp"

namespace opmk::cli {

inline constexpr int kExitFound = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitError = 2;

/// Signed decimal integers separated by whitespace and/or commas.
/// Throws std::invalid_argument on anything else.
IntSeq parse_int_list(std::string_view s);
std::string join(const IntSeq& values);
std::string join(const std::vector<std::size_t>& values);

struct InstanceFile {
  IntSeq text;
  IntSeq pattern;
  std::optional<std::size_t> k;
  std::optional<std::string> mode;  // "distinct", "general" or "auto"
  std::optional<std::vector<std::size_t>> planted;

  bool operator==(const InstanceFile&) const = default;
};

/// Lines of the form `key: value`; blank lines are skipped. Keys: text,
/// pattern (both required), k, mode, planted. Throws std::invalid_argument.
InstanceFile parse_instance(std::string_view contents);
std::string write_instance(const InstanceFile& inst);

struct GenOptions {
  std::size_t n = 1000;
  std::size_t m = 10;
  std::size_t k = 0;
  Mode mode = Mode::Distinct;
  std::uint64_t seed = 1;
  std::size_t plant = 0;
  Value alphabet = 5;  // general mode only
};

/// Random instance. Planted windows sit in distinct blocks of length m, are
/// order-isomorphic to the pattern, and then get at most k positions changed.
InstanceFile generate_instance(const GenOptions& options);

struct SelftestOptions {
  std::size_t iterations = 300;
  std::uint64_t seed = 1;
  std::size_t filter_factor = 3;
  std::size_t max_reports = 3;
};

/// Randomized cross-checks of every layer against its reference. Prints
/// counterexamples as instance files. Returns the number of violations.
std::size_t run_selftest(const SelftestOptions& options, std::ostream& out);

/// Entry point. `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace opmk::cli
