#include "opmk/seqcore.hpp"

#include <algorithm>
#include <numeric>

namespace opmk {

std::string_view to_string(Mode mode) {
  return mode == Mode::Distinct ? "distinct" : "general";
}

std::optional<Mode> parse_mode(std::string_view word) {
  if (word == "distinct") return Mode::Distinct;
  if (word == "general") return Mode::General;
  return std::nullopt;
}

std::vector<std::size_t> sorting_permutation(std::span<const Value> s) {
  std::vector<std::size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return s[a - 1] < s[b - 1]; });
  return perm;
}

std::vector<std::size_t> counting_sort_permutation(std::span<const std::size_t> keys,
                                                   std::size_t universe) {
  std::vector<std::size_t> count(universe + 1, 0);
  for (std::size_t key : keys) {
    if (key >= universe) throw std::out_of_range("counting_sort_permutation: key outside universe");
    ++count[key + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::size_t> perm(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) perm[count[keys[i]]++] = i + 1;
  return perm;
}

Compressed rank_compress(std::span<const Value> s) {
  const std::size_t n = s.size();
  Compressed out;
  out.values.resize(n);
  RankInfo& info = out.info;
  info.sort_perm = sorting_permutation(s);
  info.rank.resize(n);
  info.equal_rank.resize(n);
  info.rep_count.resize(n);

  Value label = 0;
  std::size_t run_begin = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t pos = info.sort_perm[r] - 1;
    if (r == 0 || s[info.sort_perm[r - 1] - 1] != s[pos]) {
      ++label;
      run_begin = r;
    }
    out.values[pos] = label;
    info.rank[pos] = run_begin;
    info.equal_rank[pos] = r - run_begin;
  }
  // Second pass fills repetition counts once each run length is known.
  for (std::size_t r = 0; r < n;) {
    std::size_t e = r;
    const Value v = s[info.sort_perm[r] - 1];
    while (e < n && s[info.sort_perm[e] - 1] == v) ++e;
    for (std::size_t q = r; q < e; ++q) info.rep_count[info.sort_perm[q] - 1] = e - r;
    r = e;
  }
  return out;
}

std::vector<std::size_t> descending_tie_keys(std::span<const Value> s) {
  std::vector<std::size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return s[a] != s[b] ? s[a] < s[b] : a > b;
  });
  std::vector<std::size_t> key(s.size());
  for (std::size_t r = 0; r < perm.size(); ++r) key[perm[r]] = r + 1;
  return key;
}

bool has_duplicates(std::span<const Value> s) {
  std::vector<Value> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

Mode detect_mode(std::span<const Value> text, std::span<const Value> pattern) {
  return has_duplicates(text) || has_duplicates(pattern) ? Mode::General : Mode::Distinct;
}

void require_distinct(std::span<const Value> s, std::string_view what) {
  if (has_duplicates(s)) {
    throw std::invalid_argument(std::string(what) + " contains repeated values (distinct mode)");
  }
}

}  // namespace opmk
