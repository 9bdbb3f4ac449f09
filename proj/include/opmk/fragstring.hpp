#pragma once

// A fixed reference string with constant-time LCP queries, and a dynamic
// string kept as a tiling of reference substrings and literal characters.
//
// The dynamic string supports single-character replacement and enumeration
// of the first mismatches of a window against the whole reference. Each
// enumeration step either reports a mismatch or jumps over a fragment with
// one LCP query, and runs of three or more fully matched fragments between
// mismatches are merged into a single reference substring.

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "opmk/ordered_int_dict.hpp"

namespace opmk {

using Symbol = std::int64_t;

class RefString {
 public:
  /// Throws std::invalid_argument on an empty reference.
  explicit RefString(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  /// 1-based access.
  Symbol at(std::size_t pos) const { return symbols_[pos - 1]; }

  /// Longest common prefix of the suffixes starting at 1-based i and j.
  std::size_t lcp(std::size_t i, std::size_t j) const;

  /// Some 1-based position holding `s`, or 0 if `s` is not in the alphabet.
  std::size_t occurrence_of(Symbol s) const {
    auto it = first_pos_.find(s);
    return it == first_pos_.end() ? 0 : it->second;
  }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, std::size_t> first_pos_;
  std::vector<std::uint32_t> suffix_rank_;  // inverse suffix array
  std::vector<std::vector<std::uint32_t>> lcp_table_;  // sparse table over the LCP array
};

struct Fragment {
  std::size_t start;   // 1-based, in the dynamic string
  std::size_t length;
  bool literal;        // single character absent from the reference
  std::size_t ref_start;  // 1-based start in the reference (non-literal)
  Symbol symbol;          // literal character (literal only)
  bool operator==(const Fragment&) const = default;
};

struct MismatchStream {
  std::vector<std::size_t> positions;  // 1-based within the window, increasing
  bool truncated = false;              // more than `limit` mismatches exist
};

class DynString {
 public:
  /// `ref` must outlive the DynString. Every character starts as its own fragment.
  DynString(const RefString& ref, std::span<const Symbol> initial,
            DictBackend backend = default_dict_backend());

  std::size_t size() const { return length_; }
  std::size_t fragment_count() const { return starts_.size(); }
  const RefString& ref() const { return *ref_; }

  /// Replace the character at 1-based x.
  void replace(std::size_t x, Symbol c);

  Symbol at(std::size_t x) const;
  std::vector<Symbol> materialize() const;
  std::vector<Symbol> window(std::size_t i, std::size_t len) const;
  std::vector<Fragment> fragments() const;

  /// Compares [i, i+m-1] against the whole reference (m = ref().size()).
  /// Reports up to limit+1 mismatches; truncated is set when the limit+1-th
  /// mismatch was reached. Requires 1 <= i <= size()-m+1.
  MismatchStream first_mismatches(std::size_t i, std::size_t limit);

  /// Fragments cover [1, size()] exactly, in order, without overlap.
  bool tiling_ok() const;

 private:
  void set_char(std::size_t start, Symbol c);
  void merge(const std::vector<std::size_t>& run, std::size_t ref_start);

  const RefString* ref_;
  std::size_t length_;
  KeySet starts_;
  std::vector<std::size_t> len_;
  std::vector<std::size_t> ref_start_;  // 0 marks a literal
  std::vector<Symbol> literal_;
};

}  // namespace opmk
