#include <bit>

#include "opmk/ordered_int_dict.hpp"

namespace opmk {

namespace {

constexpr unsigned kLeafBits = 6;  // a leaf is one 64-bit word
constexpr Key kNone = ~Key{0};

unsigned bits_for(std::size_t universe) {
  unsigned bits = 1;
  while (bits < 63 && (Key{1} << bits) < universe) ++bits;
  return bits;
}

}  // namespace

// Classic vEB node: min is kept out of the clusters, max is cached.
// Clusters are allocated on first use and kept once allocated.
struct VebSet::Node {
  unsigned bits;
  unsigned low_bits = 0;
  std::uint64_t word = 0;  // leaf only
  Key lo = kNone;          // internal only
  Key hi = kNone;
  std::unique_ptr<Node> summary;
  std::vector<std::unique_ptr<Node>> clusters;

  explicit Node(unsigned b) : bits(b) {
    if (!leaf()) {
      low_bits = bits / 2;
      clusters.resize(std::size_t{1} << (bits - low_bits));
    }
  }

  bool leaf() const { return bits <= kLeafBits; }
  bool empty() const { return leaf() ? word == 0 : lo == kNone; }
  Key high(Key x) const { return x >> low_bits; }
  Key low(Key x) const { return x & ((Key{1} << low_bits) - 1); }
  Key index(Key h, Key l) const { return (h << low_bits) | l; }

  Key min() const {
    if (leaf()) return word ? static_cast<Key>(std::countr_zero(word)) : kNone;
    return lo;
  }
  Key max() const {
    if (leaf()) return word ? static_cast<Key>(63 - std::countl_zero(word)) : kNone;
    return hi;
  }

  Node& cluster(Key h) {
    auto& c = clusters[h];
    if (!c) c = std::make_unique<Node>(low_bits);
    return *c;
  }
  Node& summary_node() {
    if (!summary) summary = std::make_unique<Node>(bits - low_bits);
    return *summary;
  }
  bool cluster_empty(Key h) const { return !clusters[h] || clusters[h]->empty(); }

  bool contains(Key x) const {
    if (leaf()) return (word >> x) & 1u;
    if (x == lo || x == hi) return true;
    if (lo == kNone) return false;
    const Key h = high(x);
    return !cluster_empty(h) && clusters[h]->contains(low(x));
  }

  // Precondition: x not present.
  void insert(Key x) {
    if (leaf()) {
      word |= std::uint64_t{1} << x;
      return;
    }
    if (lo == kNone) {
      lo = hi = x;
      return;
    }
    if (x < lo) std::swap(x, lo);
    const Key h = high(x);
    Node& c = cluster(h);
    if (c.empty()) summary_node().insert(h);
    c.insert(low(x));
    if (x > hi) hi = x;
  }

  // Precondition: x present.
  void erase(Key x) {
    if (leaf()) {
      word &= ~(std::uint64_t{1} << x);
      return;
    }
    if (lo == hi) {
      lo = hi = kNone;
      return;
    }
    if (x == lo) {
      // Pull the smallest clustered element up to become the new min.
      const Key first = summary->min();
      x = index(first, clusters[first]->min());
      lo = x;
    }
    const Key h = high(x);
    clusters[h]->erase(low(x));
    if (clusters[h]->empty()) {
      summary->erase(h);
      if (x == hi) {
        const Key last = summary->max();
        hi = last == kNone ? lo : index(last, clusters[last]->max());
      }
    } else if (x == hi) {
      hi = index(h, clusters[h]->max());
    }
  }

  Key succ_above(Key x) const {
    if (leaf()) {
      if (x >= 63) return kNone;
      const std::uint64_t rest = word & (~std::uint64_t{0} << (x + 1));
      return rest ? static_cast<Key>(std::countr_zero(rest)) : kNone;
    }
    if (lo == kNone) return kNone;
    if (x < lo) return lo;
    const Key h = high(x);
    const Key l = low(x);
    if (!cluster_empty(h) && l < clusters[h]->max()) {
      return index(h, clusters[h]->succ_above(l));
    }
    if (!summary) return kNone;
    const Key next = summary->succ_above(h);
    return next == kNone ? kNone : index(next, clusters[next]->min());
  }

  Key pred_below(Key x) const {
    if (leaf()) {
      if (x == 0) return kNone;
      const std::uint64_t rest = x >= 64 ? word : word & ((std::uint64_t{1} << x) - 1);
      return rest ? static_cast<Key>(63 - std::countl_zero(rest)) : kNone;
    }
    if (lo == kNone) return kNone;
    if (x > hi) return hi;
    const Key h = high(x);
    const Key l = low(x);
    if (!cluster_empty(h) && l > clusters[h]->min()) {
      return index(h, clusters[h]->pred_below(l));
    }
    const Key prev = summary ? summary->pred_below(h) : kNone;
    if (prev == kNone) return x > lo ? lo : kNone;
    return index(prev, clusters[prev]->max());
  }
};

VebSet::VebSet(std::size_t universe) : root_(std::make_unique<Node>(bits_for(universe))) {}
VebSet::~VebSet() = default;
VebSet::VebSet(VebSet&&) noexcept = default;
VebSet& VebSet::operator=(VebSet&&) noexcept = default;

bool VebSet::insert(Key x) {
  if (root_->contains(x)) return false;
  root_->insert(x);
  ++size_;
  return true;
}

bool VebSet::erase(Key x) {
  if (!root_->contains(x)) return false;
  root_->erase(x);
  --size_;
  return true;
}

bool VebSet::contains(Key x) const { return root_->contains(x); }

std::optional<Key> VebSet::min() const {
  const Key k = root_->min();
  return k == kNone ? std::nullopt : std::optional<Key>(k);
}

std::optional<Key> VebSet::max() const {
  const Key k = root_->max();
  return k == kNone ? std::nullopt : std::optional<Key>(k);
}

std::optional<Key> VebSet::succ_above(Key x) const {
  const Key k = root_->succ_above(x);
  return k == kNone ? std::nullopt : std::optional<Key>(k);
}

std::optional<Key> VebSet::pred_below(Key x) const {
  const Key k = root_->pred_below(x);
  return k == kNone ? std::nullopt : std::optional<Key>(k);
}

}  // namespace opmk
