#pragma once

// Order-preserving pattern matching with k mismatches.
//
// A window of the text matches when, after deleting the same <= k positions
// from the window and the pattern, the two are order-isomorphic (same
// relative order, same equalities). The fast path slides the window
// signature across 2m-long text chunks, discards windows whose signature is
// more than 3k symbols away from the pattern's, and verifies the rest by a
// heaviest increasing subsequence (distinct mode) or heaviest chain
// (general mode) over at most 3(3k+1) weighted items.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "opmk/fragstring.hpp"
#include "opmk/ordered_int_dict.hpp"
#include "opmk/seqcore.hpp"
#include "opmk/signature.hpp"
#include "opmk/subsequence.hpp"

namespace opmk {

/// Immutable pattern preprocessing, shareable across threads.
class PatternIndex {
 public:
  /// Throws std::invalid_argument on an empty pattern or on repeats in distinct mode.
  PatternIndex(IntSeq pattern, Mode mode);

  std::size_t size() const { return pattern_.size(); }
  Mode mode() const { return mode_; }
  const IntSeq& values() const { return pattern_; }
  const RankInfo& ranks() const { return compressed_.info; }
  /// Dense value ranks 1..d (equal values share a rank).
  const IntSeq& dense() const { return compressed_.values; }
  const Signature& signature() const { return signature_; }
  const RefString& ref() const { return *ref_; }

  /// Position of a pattern element in (value asc, position desc) order, 1..m.
  std::size_t order_of(std::size_t pos) const { return order_[pos - 1]; }
  /// Inverse of order_of; position_at(0) is the virtual -infinity sentinel (0).
  std::size_t position_at(std::size_t ord) const { return at_order_[ord]; }
  /// Orders occupied by the value block of the element at `pos`.
  std::size_t block_first(std::size_t pos) const { return ranks().rank[pos - 1] + 1; }
  std::size_t block_last(std::size_t pos) const {
    return ranks().rank[pos - 1] + ranks().rep_count[pos - 1];
  }

 private:
  IntSeq pattern_;
  Mode mode_;
  Compressed compressed_;
  Signature signature_;
  std::unique_ptr<RefString> ref_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> at_order_;
};

enum class PartKind { Whole, Prefix, Middle, Suffix, Sentinel };

/// A run of positions linked by signature agreement, collapsed to one item.
struct PathPart {
  std::size_t start;   // first position (0 for the sentinel)
  PartKind kind;
  Weight weight;       // number of positions in the part
  Value text_key;      // rank of the window value among the parts (sentinel 0)
  Value pattern_key;   // dense pattern rank (sentinel 0)
};

struct DistinctReduction {
  std::vector<PathPart> parts;
  std::vector<WeightedSeqItem> items;  // parts ordered by window value
  Weight threshold;                    // accept iff HIS weight >= (m+1)-k
};

struct GeneralReduction {
  std::vector<PathPart> parts;
  std::vector<WeightedPoint> points;
  Weight threshold;                    // accept iff chain weight >= (m+1)-k
};

/// `mismatches`: every 1-based position where the signatures of `window` and
/// the pattern differ, increasing.
DistinctReduction reduce_distinct(std::span<const Value> window, const PatternIndex& pidx,
                                  std::span<const std::size_t> mismatches, std::size_t k);
GeneralReduction reduce_general(std::span<const Value> window, const PatternIndex& pidx,
                                std::span<const std::size_t> mismatches, std::size_t k);

/// Reduction followed by the matching solver.
bool verify_window(std::span<const Value> window, const PatternIndex& pidx,
                   std::span<const std::size_t> mismatches, std::size_t k,
                   DictBackend backend = default_dict_backend());

/// Ground truth by enumeration of removal sets; |a| = |b| <= kSubsetOracleLimit.
inline constexpr std::size_t kSubsetOracleLimit = 14;
bool k_isomorphic_subset_oracle(std::span<const Value> a, std::span<const Value> b, std::size_t k);

/// Single-alignment check: LIS (distinct) or heaviest chain (general) >= m - k.
bool k_isomorphic_check(std::span<const Value> a, std::span<const Value> b, std::size_t k, Mode mode,
                        DictBackend backend = default_dict_backend());

/// Largest set of positions (1-based, increasing) on which a and b are
/// order-isomorphic.
std::vector<std::size_t> k_isomorphic_witness(std::span<const Value> a, std::span<const Value> b,
                                              Mode mode, DictBackend backend = default_dict_backend());

struct MatchOptions {
  std::size_t threads = 1;
  DictBackend backend = default_dict_backend();
  /// Windows whose signatures differ in more than filter_factor*k positions
  /// are discarded. 3 is the sound bound; other values exist to test the filter.
  std::size_t filter_factor = 3;
  /// Shifts chunk boundaries left by this many positions (taken modulo m).
  /// Output must not depend on it.
  std::size_t chunk_phase = 0;
};

struct MatchStats {
  std::size_t windows = 0;    // window starts examined
  std::size_t filtered = 0;   // discarded by the signature filter
  std::size_t verified = 0;   // passed the filter and were verified
  std::size_t occurrences = 0;

  MatchStats& operator+=(const MatchStats& o) {
    windows += o.windows;
    filtered += o.filtered;
    verified += o.verified;
    occurrences += o.occurrences;
    return *this;
  }
  double pruning_rate() const {
    return windows == 0 ? 0.0 : static_cast<double>(filtered) / static_cast<double>(windows);
  }
};

/// Matches window starts 1..owned of a chunk (owned <= m, chunk length in
/// [m, 2m]). Returns chunk-relative 1-based starts.
std::vector<std::size_t> match_chunk(std::span<const Value> chunk, const PatternIndex& pidx,
                                     std::size_t k, std::size_t owned,
                                     const MatchOptions& options = {}, MatchStats* stats = nullptr);

/// All 1-based occurrence starts, increasing. Empty when m > n.
std::vector<std::size_t> match_all(std::span<const Value> text, std::span<const Value> pattern,
                                   std::size_t k, Mode mode, const MatchOptions& options = {},
                                   MatchStats* stats = nullptr);

/// Per-position k_isomorphic_check, used as the reference path.
std::vector<std::size_t> match_naive(std::span<const Value> text, std::span<const Value> pattern,
                                     std::size_t k, Mode mode,
                                     DictBackend backend = default_dict_backend());

}  // namespace opmk
