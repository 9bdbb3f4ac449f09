#pragma once

// Ordered dictionary over integer keys in a bounded universe [0, U).
//
// Two interchangeable backends sit behind one interface:
//   * VanEmdeBoas: recursive vEB layout with 64-bit word leaves,
//     O(log log U) per operation.
//   * OrderedTree: std::set, O(log n) per operation.
// The default comes from the build (OPMK_DICT_BACKEND) and can be overridden
// per instance.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace opmk {

using Key = std::size_t;

enum class DictBackend { VanEmdeBoas, OrderedTree };

constexpr DictBackend default_dict_backend() {
#if defined(OPMK_DEFAULT_DICT_TREE)
  return DictBackend::OrderedTree;
#else
  return DictBackend::VanEmdeBoas;
#endif
}

class VebSet {
 public:
  explicit VebSet(std::size_t universe);
  ~VebSet();
  VebSet(VebSet&&) noexcept;
  VebSet& operator=(VebSet&&) noexcept;
  VebSet(const VebSet&) = delete;
  VebSet& operator=(const VebSet&) = delete;

  bool insert(Key x);  // false if already present
  bool erase(Key x);   // false if absent
  bool contains(Key x) const;
  std::optional<Key> min() const;
  std::optional<Key> max() const;
  std::optional<Key> succ_above(Key x) const;  // smallest key > x
  std::optional<Key> pred_below(Key x) const;  // largest key < x
  std::size_t size() const { return size_; }

  struct Node;

 private:
  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
};

/// Key set with backend dispatch. Keys must lie in [0, universe).
class KeySet {
 public:
  explicit KeySet(std::size_t universe, DictBackend backend = default_dict_backend())
      : universe_(universe), backend_(backend) {
    if (backend_ == DictBackend::VanEmdeBoas) veb_ = std::make_unique<VebSet>(universe);
  }

  std::size_t universe() const { return universe_; }
  DictBackend backend() const { return backend_; }
  std::size_t size() const { return veb_ ? veb_->size() : tree_.size(); }
  bool empty() const { return size() == 0; }

  bool insert(Key x) {
    check(x);
    return veb_ ? veb_->insert(x) : tree_.insert(x).second;
  }
  bool erase(Key x) {
    if (x >= universe_) return false;
    return veb_ ? veb_->erase(x) : tree_.erase(x) > 0;
  }
  bool contains(Key x) const {
    if (x >= universe_) return false;
    return veb_ ? veb_->contains(x) : tree_.count(x) > 0;
  }

  /// Largest key <= x.
  std::optional<Key> pred(Key x) const {
    if (x >= universe_) return max();
    if (contains(x)) return x;
    return pred_below(x);
  }
  /// Smallest key >= x.
  std::optional<Key> succ(Key x) const {
    if (x >= universe_) return std::nullopt;
    if (contains(x)) return x;
    return succ_above(x);
  }

  std::optional<Key> pred_below(Key x) const {
    if (x >= universe_) return max();
    if (veb_) return veb_->pred_below(x);
    auto it = tree_.lower_bound(x);
    if (it == tree_.begin()) return std::nullopt;
    return *std::prev(it);
  }
  std::optional<Key> succ_above(Key x) const {
    if (x >= universe_) return std::nullopt;
    if (veb_) return veb_->succ_above(x);
    auto it = tree_.upper_bound(x);
    if (it == tree_.end()) return std::nullopt;
    return *it;
  }

  std::optional<Key> min() const {
    if (veb_) return veb_->min();
    if (tree_.empty()) return std::nullopt;
    return *tree_.begin();
  }
  std::optional<Key> max() const {
    if (veb_) return veb_->max();
    if (tree_.empty()) return std::nullopt;
    return *tree_.rbegin();
  }

 private:
  void check(Key x) const {
    if (x >= universe_) throw std::out_of_range("KeySet: key outside universe");
  }

  std::size_t universe_;
  DictBackend backend_;
  std::unique_ptr<VebSet> veb_;
  std::set<Key> tree_;
};

struct NoPayload {};

/// KeySet plus an optional payload per stored key.
template <class Payload = NoPayload>
class OrderedIntDict {
  static constexpr bool kHasPayload = !std::is_same_v<Payload, NoPayload>;

 public:
  explicit OrderedIntDict(std::size_t universe, DictBackend backend = default_dict_backend())
      : keys_(universe, backend) {
    if constexpr (kHasPayload) payload_.resize(universe);
  }

  /// Inserting an existing key replaces its payload. Returns true if new.
  bool insert(Key x, Payload p = {}) {
    const bool fresh = keys_.insert(x);
    if constexpr (kHasPayload) payload_[x] = std::move(p);
    return fresh;
  }
  /// False when the key was absent (no-op).
  bool erase(Key x) { return keys_.erase(x); }

  bool contains(Key x) const { return keys_.contains(x); }
  std::optional<Key> pred(Key x) const { return keys_.pred(x); }
  std::optional<Key> succ(Key x) const { return keys_.succ(x); }
  std::optional<Key> pred_below(Key x) const { return keys_.pred_below(x); }
  std::optional<Key> succ_above(Key x) const { return keys_.succ_above(x); }
  std::optional<Key> min() const { return keys_.min(); }
  std::optional<Key> max() const { return keys_.max(); }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  std::size_t universe() const { return keys_.universe(); }
  DictBackend backend() const { return keys_.backend(); }

  const Payload& payload(Key x) const
    requires kHasPayload
  {
    return payload_[x];
  }
  Payload& payload(Key x)
    requires kHasPayload
  {
    return payload_[x];
  }

 private:
  KeySet keys_;
  [[no_unique_address]] std::conditional_t<kHasPayload, std::vector<Payload>, NoPayload> payload_;
};

}  // namespace opmk
