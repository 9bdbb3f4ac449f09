#pragma once

// Increasing-subsequence solvers: LIS decision form, heaviest increasing
// subsequence (HIS) and heaviest chain of weighted planar points, plus
// exponential brute-force oracles for small instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "opmk/ordered_int_dict.hpp"
#include "opmk/seqcore.hpp"

namespace opmk {

using Weight = std::int64_t;

struct WeightedSeqItem {
  Value value;
  Weight weight = 1;
};

struct WeightedPoint {
  Value x;
  Value y;
  Weight weight = 1;
  bool operator==(const WeightedPoint&) const = default;
};

struct HisResult {
  Weight weight = 0;
  std::vector<std::size_t> witness;  // 1-based item positions, increasing
};

struct ChainResult {
  Weight weight = 0;
  std::vector<WeightedPoint> witness;  // collapsed points, increasing in both coordinates
};

/// Prefix-maximum structure over positions 0..max_position. Only a strictly
/// increasing staircase of (position, value) pairs is stored; entries that
/// are dominated by a smaller position with a value at least as large are
/// evicted since they can never be reported.
class MaxPrefixStructure {
 public:
  struct Entry {
    Weight value;
    std::size_t tag;
  };

  explicit MaxPrefixStructure(std::size_t max_position,
                              DictBackend backend = default_dict_backend());

  /// v_pos := max(v_pos, value). The tag travels with the value.
  void raise(std::size_t pos, Weight value, std::size_t tag);

  /// max(v_0..v_pos), or nullopt if none of them was ever set.
  std::optional<Entry> max_prefix(std::size_t pos) const;

  std::size_t stored() const { return dict_.size(); }

  /// True iff stored positions carry strictly increasing values.
  bool staircase_ok() const;

 private:
  OrderedIntDict<Entry> dict_;
};

/// Values must lie in a bounded universe [0, U) (typically ranks).
/// True iff a strictly increasing subsequence of length >= target exists.
bool lis_length_at_least(std::span<const std::size_t> values, std::size_t target,
                         DictBackend backend = default_dict_backend());

std::size_t lis_length(std::span<const std::size_t> values,
                       DictBackend backend = default_dict_backend());

/// Maximum total weight over strictly increasing subsequences. Values are
/// rank-normalized internally, so any integers are accepted.
HisResult heaviest_increasing_subsequence(std::span<const WeightedSeqItem> items,
                                          DictBackend backend = default_dict_backend());

/// Heaviest chain: points pairwise strictly dominating in both coordinates,
/// except that identical points may always be taken together.
ChainResult heaviest_chain(std::span<const WeightedPoint> points,
                           DictBackend backend = default_dict_backend());

inline constexpr std::size_t kBruteforceLimit = 20;

/// Exhaustive oracles. Throw std::invalid_argument above kBruteforceLimit items.
Weight his_bruteforce(std::span<const WeightedSeqItem> items);
Weight chain_bruteforce(std::span<const WeightedPoint> points);

/// True iff the two points may belong to one chain.
constexpr bool chain_compatible(const WeightedPoint& a, const WeightedPoint& b) {
  return (a.x < b.x && a.y < b.y) || (a.x > b.x && a.y > b.y) || (a.x == b.x && a.y == b.y);
}

}  // namespace opmk
