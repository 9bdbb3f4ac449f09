#include "opmk/subsequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace opmk {

MaxPrefixStructure::MaxPrefixStructure(std::size_t max_position, DictBackend backend)
    : dict_(max_position + 1, backend) {}

void MaxPrefixStructure::raise(std::size_t pos, Weight value, std::size_t tag) {
  if (auto p = dict_.pred(pos); p && dict_.payload(*p).value >= value) return;
  dict_.insert(pos, Entry{value, tag});
  for (auto s = dict_.succ_above(pos); s && dict_.payload(*s).value <= value;
       s = dict_.succ_above(pos)) {
    dict_.erase(*s);
  }
}

std::optional<MaxPrefixStructure::Entry> MaxPrefixStructure::max_prefix(std::size_t pos) const {
  auto p = dict_.pred(pos);
  if (!p) return std::nullopt;
  return dict_.payload(*p);
}

bool MaxPrefixStructure::staircase_ok() const {
  std::optional<Weight> last;
  for (auto k = dict_.min(); k; k = dict_.succ_above(*k)) {
    const Weight v = dict_.payload(*k).value;
    if (last && v <= *last) return false;
    last = v;
  }
  return true;
}

namespace {

std::size_t universe_of(std::span<const std::size_t> values) {
  std::size_t u = 0;
  for (std::size_t v : values) u = std::max(u, v + 1);
  return u;
}

}  // namespace

bool lis_length_at_least(std::span<const std::size_t> values, std::size_t target,
                         DictBackend backend) {
  if (target == 0) return true;
  if (values.size() < target) return false;
  // Patience tails: the set holds, for every length, the smallest possible
  // last value. A new value replaces the smallest tail >= itself.
  KeySet tails(universe_of(values), backend);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (auto s = tails.succ(values[i])) tails.erase(*s);
    tails.insert(values[i]);
    if (tails.size() >= target) return true;
    if (tails.size() + (values.size() - i - 1) < target) return false;
  }
  return false;
}

std::size_t lis_length(std::span<const std::size_t> values, DictBackend backend) {
  KeySet tails(universe_of(values), backend);
  for (std::size_t v : values) {
    if (auto s = tails.succ(v)) tails.erase(*s);
    tails.insert(v);
  }
  return tails.size();
}

HisResult heaviest_increasing_subsequence(std::span<const WeightedSeqItem> items,
                                          DictBackend backend) {
  const std::size_t n = items.size();
  HisResult result;
  if (n == 0) return result;

  std::vector<Value> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (items[i].weight < 1) throw std::invalid_argument("heaviest_increasing_subsequence: weight < 1");
    raw[i] = items[i].value;
  }
  const Compressed ranks = rank_compress(raw);
  const std::size_t distinct = n == 0 ? 0 : static_cast<std::size_t>(
      *std::max_element(ranks.values.begin(), ranks.values.end()));

  // Position 0 is the virtual -infinity element with r_0 = 0 (tag 0).
  MaxPrefixStructure best(distinct, backend);
  best.raise(0, 0, 0);
  std::vector<std::size_t> back(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto a = static_cast<std::size_t>(ranks.values[i - 1]);
    const auto prev = best.max_prefix(a - 1);  // always present thanks to position 0
    const Weight r = items[i - 1].weight + prev->value;
    back[i] = prev->tag;
    best.raise(a, r, i);
  }

  const auto top = best.max_prefix(distinct);
  result.weight = top->value;
  for (std::size_t t = top->tag; t != 0; t = back[t]) result.witness.push_back(t);
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

ChainResult heaviest_chain(std::span<const WeightedPoint> points, DictBackend backend) {
  std::vector<WeightedPoint> pts(points.begin(), points.end());
  for (const auto& p : pts) {
    if (p.weight < 1) throw std::invalid_argument("heaviest_chain: weight < 1");
  }
  std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  std::vector<WeightedPoint> unique;
  for (const auto& p : pts) {
    if (!unique.empty() && unique.back().x == p.x && unique.back().y == p.y) {
      unique.back().weight += p.weight;
    } else {
      unique.push_back(p);
    }
  }
  // Points with equal x are ordered by decreasing y, so a strictly increasing
  // run of y values never takes two of them; equal y values are excluded by
  // strictness. What remains is exactly strict dominance in both coordinates.
  std::stable_sort(unique.begin(), unique.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y > b.y;
  });
  std::vector<WeightedSeqItem> items(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i) items[i] = {unique[i].y, unique[i].weight};

  const HisResult his = heaviest_increasing_subsequence(items, backend);
  ChainResult out;
  out.weight = his.weight;
  for (std::size_t idx : his.witness) out.witness.push_back(unique[idx - 1]);
  return out;
}

Weight his_bruteforce(std::span<const WeightedSeqItem> items) {
  const std::size_t n = items.size();
  if (n > kBruteforceLimit) throw std::invalid_argument("his_bruteforce: too many items");
  Weight best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Weight total = 0;
    bool ok = true;
    std::optional<Value> last;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (last && items[i].value <= *last) ok = false;
      last = items[i].value;
      total += items[i].weight;
    }
    if (ok) best = std::max(best, total);
  }
  return best;
}

Weight chain_bruteforce(std::span<const WeightedPoint> points) {
  const std::size_t n = points.size();
  if (n > kBruteforceLimit) throw std::invalid_argument("chain_bruteforce: too many points");
  Weight best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Weight total = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      total += points[i].weight;
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1u) && !chain_compatible(points[i], points[j])) ok = false;
      }
    }
    if (ok) best = std::max(best, total);
  }
  return best;
}

}  // namespace opmk
