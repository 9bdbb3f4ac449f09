#pragma once

// Sequence utilities shared by every stage of the matcher: rank compression,
// stable sorting permutations and the distinct/general mode switch.
//
// Positions in all public contracts are 1-based. Per-position tables
// (RankInfo::rank etc.) are stored in std::vector with index 0 holding
// position 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace opmk {

using Value = std::int64_t;
using IntSeq = std::vector<Value>;

/// Distinct mode assumes pairwise-distinct elements; general mode allows repeats.
enum class Mode { Distinct, General };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view word);

struct RankInfo {
  /// Positions (1-based) in non-decreasing value order, ties by position.
  std::vector<std::size_t> sort_perm;
  /// Number of strictly smaller elements.
  std::vector<std::size_t> rank;
  /// Number of equal elements strictly to the left.
  std::vector<std::size_t> equal_rank;
  /// Total occurrences of the element's value.
  std::vector<std::size_t> rep_count;
};

struct Compressed {
  IntSeq values;  // over {1..d}, d = number of distinct values
  RankInfo info;
};

/// Stable sorting permutation: positions ordered by (value, position).
std::vector<std::size_t> sorting_permutation(std::span<const Value> s);

/// Counting-sort variant for keys known to lie in [0, universe).
std::vector<std::size_t> counting_sort_permutation(std::span<const std::size_t> keys,
                                                   std::size_t universe);

Compressed rank_compress(std::span<const Value> s);

/// Ranks every position by (value ascending, position descending), 1..n.
/// This is the order in which signatures link each element to its predecessor.
std::vector<std::size_t> descending_tie_keys(std::span<const Value> s);

bool has_duplicates(std::span<const Value> s);

/// General mode when either sequence repeats a value, distinct otherwise.
Mode detect_mode(std::span<const Value> text, std::span<const Value> pattern);

/// Throws std::invalid_argument naming `what` if `s` repeats a value.
void require_distinct(std::span<const Value> s, std::string_view what);

}  // namespace opmk
