#pragma once

// Signatures: every position points to the position of its predecessor.
//
// Elements are ordered by (value ascending, position descending). Each
// position stores the offset pred(i) - i to the element just before it in
// that order, tagged Equal when both hold the same value and Less otherwise.
// The first element gets NoneMin. For pairwise-distinct input this is the
// plain "position of the next smaller value" signature. With repeats, a
// non-rightmost occurrence points to the next occurrence on its right, and
// a rightmost occurrence points to the leftmost occurrence of the next
// smaller value.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opmk/fragstring.hpp"
#include "opmk/ordered_int_dict.hpp"
#include "opmk/seqcore.hpp"

namespace opmk {

enum class Relation : std::uint8_t { Less, Equal, NoneMin, Pad };

struct SigSymbol {
  Relation relation = Relation::NoneMin;
  std::int32_t offset = 0;

  bool operator==(const SigSymbol&) const = default;

  static constexpr SigSymbol none_min() { return {Relation::NoneMin, 0}; }
  static constexpr SigSymbol pad() { return {Relation::Pad, 0}; }

  /// Injective integer encoding used as the DynString alphabet.
  constexpr Symbol code() const {
    return (static_cast<Symbol>(relation) << 32) |
           static_cast<Symbol>(static_cast<std::uint32_t>(offset));
  }
  static constexpr SigSymbol from_code(Symbol c) {
    return {static_cast<Relation>(c >> 32),
            static_cast<std::int32_t>(static_cast<std::uint32_t>(c & 0xffffffff))};
  }
};

using Signature = std::vector<SigSymbol>;

/// Throws std::invalid_argument for repeated values in distinct mode.
Signature compute_signature(std::span<const Value> s, Mode mode);

std::vector<Symbol> signature_codes(const Signature& sig);

struct HammingResult {
  std::size_t distance = 0;             // exact when !exceeds_cap
  bool exceeds_cap = false;
  std::vector<std::size_t> positions;   // 1-based, at most cap+1
};

/// Stops after cap+1 mismatches. Throws std::invalid_argument on length mismatch.
HammingResult signature_hamming(const Signature& a, const Signature& b, std::size_t cap);

/// NoneMin -> "0", Less -> signed offset, Equal -> "=d", Pad -> "$".
std::string format_symbol(SigSymbol s);
std::string format_signature(const Signature& sig);

/// Signature of a window sliding over a text chunk of length L (m <= L <= 2m),
/// stored in a DynString of length 2m aligned to chunk positions. Positions
/// after the first window start as Pad and are written as the window moves.
class SlidingSignature {
 public:
  /// `ref` (pattern signature codes, length m) must outlive this object.
  SlidingSignature(std::span<const Value> chunk, const RefString& ref, Mode mode,
                   DictBackend backend = default_dict_backend());

  std::size_t start() const { return start_; }
  std::size_t window_length() const { return m_; }
  std::size_t chunk_length() const { return chunk_.size(); }
  bool can_advance() const { return start_ + m_ <= chunk_.size(); }

  /// Moves the window one step right. Throws std::out_of_range at the chunk end.
  void advance();

  /// Up to limit+1 mismatches between the window signature and the reference.
  MismatchStream mismatches(std::size_t limit) { return storage_.first_mismatches(start_, limit); }

  Signature window_signature() const;
  const DynString& storage() const { return storage_; }

 private:
  SigSymbol symbol_at(std::size_t pos) const;
  void refresh(std::size_t pos) { storage_.replace(pos, symbol_at(pos).code()); }

  std::span<const Value> chunk_;
  std::size_t m_;
  std::size_t start_ = 1;
  std::vector<std::size_t> key_;     // chunk position -> order key (1-based)
  std::vector<std::size_t> pos_of_;  // order key -> chunk position
  KeySet window_keys_;
  DynString storage_;
};

}  // namespace opmk
