#include "opmk/fragstring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace opmk {

namespace {

// Prefix-doubling suffix array with counting-sort passes, O(n log n).
std::vector<std::uint32_t> build_suffix_array(const std::vector<std::uint32_t>& text,
                                              std::uint32_t alphabet) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> sa(n), rank(text), tmp(n), order(n);
  std::vector<std::size_t> count(std::max<std::size_t>(alphabet, n) + 2);

  std::fill(count.begin(), count.end(), 0);
  for (std::size_t i = 0; i < n; ++i) ++count[rank[i]];
  std::partial_sum(count.begin(), count.end(), count.begin());
  for (std::size_t i = n; i-- > 0;) sa[--count[rank[i]]] = static_cast<std::uint32_t>(i);

  std::size_t classes = alphabet;
  for (std::size_t k = 1; k < n; k <<= 1) {
    // Order by second key: suffixes without a second half come first.
    std::size_t w = 0;
    for (std::size_t i = n - k; i < n; ++i) order[w++] = static_cast<std::uint32_t>(i);
    for (std::size_t r = 0; r < n; ++r) {
      if (sa[r] >= k) order[w++] = static_cast<std::uint32_t>(sa[r] - k);
    }
    // Stable counting sort by first key.
    std::fill(count.begin(), count.begin() + classes + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i]];
    std::partial_sum(count.begin(), count.begin() + classes + 2, count.begin());
    for (std::size_t r = n; r-- > 0;) sa[--count[rank[order[r]]]] = order[r];

    auto second = [&](std::size_t i) -> std::uint32_t { return i + k < n ? rank[i + k] : 0; };
    tmp[sa[0]] = 1;
    for (std::size_t r = 1; r < n; ++r) {
      const bool same = rank[sa[r]] == rank[sa[r - 1]] && second(sa[r]) == second(sa[r - 1]);
      tmp[sa[r]] = tmp[sa[r - 1]] + (same ? 0 : 1);
    }
    rank.swap(tmp);
    classes = rank[sa[n - 1]];
    if (classes == n) break;
  }
  return sa;
}

}  // namespace

RefString::RefString(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  const std::size_t n = symbols_.size();
  if (n == 0) throw std::invalid_argument("RefString: empty reference");

  for (std::size_t i = 0; i < n; ++i) first_pos_.try_emplace(symbols_[i], i + 1);

  // Dense alphabet 1..sigma, order-preserving.
  std::vector<Symbol> alphabet(symbols_);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::uint32_t> text(n);
  for (std::size_t i = 0; i < n; ++i) {
    text[i] = static_cast<std::uint32_t>(
        std::lower_bound(alphabet.begin(), alphabet.end(), symbols_[i]) - alphabet.begin() + 1);
  }

  const std::vector<std::uint32_t> sa = build_suffix_array(text, static_cast<std::uint32_t>(alphabet.size()));
  suffix_rank_.resize(n);
  for (std::size_t r = 0; r < n; ++r) suffix_rank_[sa[r]] = static_cast<std::uint32_t>(r);

  // Kasai: lcp[r] = lcp(sa[r-1], sa[r]).
  std::vector<std::uint32_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = suffix_rank_[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[r - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[r] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }

  lcp_table_.push_back(std::move(lcp));
  for (std::size_t span = 2; span <= n; span <<= 1) {
    const auto& prev = lcp_table_.back();
    std::vector<std::uint32_t> level(n - span + 1);
    for (std::size_t r = 0; r + span <= n; ++r) {
      level[r] = std::min(prev[r], prev[r + span / 2]);
    }
    lcp_table_.push_back(std::move(level));
  }
}

std::size_t RefString::lcp(std::size_t i, std::size_t j) const {
  const std::size_t n = symbols_.size();
  if (i == j) return n - i + 1;
  std::size_t a = suffix_rank_[i - 1];
  std::size_t b = suffix_rank_[j - 1];
  if (a > b) std::swap(a, b);
  // min over lcp[a+1 .. b]
  const std::size_t len = b - a;
  const unsigned level = static_cast<unsigned>(std::bit_width(len) - 1);
  const auto& row = lcp_table_[level];
  return std::min(row[a + 1], row[b + 1 - (std::size_t{1} << level)]);
}

DynString::DynString(const RefString& ref, std::span<const Symbol> initial, DictBackend backend)
    : ref_(&ref),
      length_(initial.size()),
      starts_(initial.size() + 1, backend),
      len_(initial.size() + 1, 0),
      ref_start_(initial.size() + 1, 0),
      literal_(initial.size() + 1, 0) {
  if (length_ < ref.size()) throw std::invalid_argument("DynString: shorter than the reference");
  for (std::size_t x = 1; x <= length_; ++x) {
    starts_.insert(x);
    set_char(x, initial[x - 1]);
  }
}

void DynString::set_char(std::size_t start, Symbol c) {
  len_[start] = 1;
  ref_start_[start] = ref_->occurrence_of(c);
  literal_[start] = ref_start_[start] == 0 ? c : 0;
}

Symbol DynString::at(std::size_t x) const {
  if (x < 1 || x > length_) throw std::out_of_range("DynString::at: position out of range");
  const std::size_t s = *starts_.pred(x);
  return ref_start_[s] == 0 ? literal_[s] : ref_->at(ref_start_[s] + (x - s));
}

void DynString::replace(std::size_t x, Symbol c) {
  if (x < 1 || x > length_) throw std::out_of_range("DynString::replace: position out of range");
  const std::size_t s = *starts_.pred(x);
  const std::size_t len = len_[s];
  if (len == 1) {
    set_char(s, c);
    return;
  }
  const std::size_t rs = ref_start_[s];
  if (ref_->at(rs + (x - s)) == c) return;

  // Split w[s..] into left | x | right.
  const std::size_t left = x - s;
  const std::size_t right = len - left - 1;
  if (left > 0) {
    len_[s] = left;
    starts_.insert(x);
  }
  set_char(x, c);
  if (right > 0) {
    starts_.insert(x + 1);
    len_[x + 1] = right;
    ref_start_[x + 1] = rs + left + 1;
  }
}

void DynString::merge(const std::vector<std::size_t>& run, std::size_t ref_start) {
  const std::size_t head = run.front();
  const std::size_t total = run.back() + len_[run.back()] - head;
  for (std::size_t idx = 1; idx < run.size(); ++idx) starts_.erase(run[idx]);
  len_[head] = total;
  ref_start_[head] = ref_start;
}

MismatchStream DynString::first_mismatches(std::size_t i, std::size_t limit) {
  const std::size_t m = ref_->size();
  if (i < 1 || i + m - 1 > length_) {
    throw std::out_of_range("DynString::first_mismatches: window out of range");
  }
  MismatchStream out;
  std::vector<std::size_t> run;  // fully matched fragments since the last mismatch
  std::size_t run_ref = 0;        // reference position where the run starts

  auto close_gap = [&] {
    if (run.size() >= 3) merge(run, run_ref);
    run.clear();
  };

  std::size_t p = i;  // position in the dynamic string
  std::size_t q = 1;  // position in the reference
  std::size_t s = *starts_.pred(p);
  while (q <= m) {
    const std::size_t len = len_[s];
    const std::size_t offset = p - s;
    const std::size_t avail = std::min(len - offset, m - q + 1);
    std::size_t matched = 0;
    if (ref_start_[s] != 0) matched = std::min(avail, ref_->lcp(ref_start_[s] + offset, q));

    if (matched == avail) {
      if (offset == 0 && avail == len) {
        if (run.empty()) run_ref = q;
        run.push_back(s);
      }
      p += avail;
      q += avail;
    } else {
      p += matched + 1;
      q += matched;
      close_gap();
      out.positions.push_back(q);
      ++q;
      if (out.positions.size() > limit) {
        out.truncated = true;
        return out;
      }
    }
    if (p - s == len) s += len;
  }
  close_gap();
  return out;
}

std::vector<Symbol> DynString::materialize() const { return window(1, length_); }

std::vector<Symbol> DynString::window(std::size_t i, std::size_t len) const {
  if (i < 1 || i + len - 1 > length_) throw std::out_of_range("DynString::window: out of range");
  std::vector<Symbol> out;
  out.reserve(len);
  std::size_t s = *starts_.pred(i);
  std::size_t x = i;
  while (out.size() < len) {
    const Symbol c = ref_start_[s] == 0 ? literal_[s] : ref_->at(ref_start_[s] + (x - s));
    out.push_back(c);
    ++x;
    if (x - s == len_[s]) s = x;
  }
  return out;
}

std::vector<Fragment> DynString::fragments() const {
  std::vector<Fragment> out;
  for (auto s = starts_.min(); s; s = starts_.succ_above(*s)) {
    const bool lit = ref_start_[*s] == 0;
    out.push_back(Fragment{*s, len_[*s], lit, ref_start_[*s], lit ? literal_[*s] : 0});
  }
  return out;
}

bool DynString::tiling_ok() const {
  std::size_t expect = 1;
  for (const Fragment& f : fragments()) {
    if (f.start != expect || f.length == 0) return false;
    if (f.literal && f.length != 1) return false;
    if (!f.literal && f.ref_start + f.length - 1 > ref_->size()) return false;
    expect += f.length;
  }
  return expect == length_ + 1;
}

}  // namespace opmk
