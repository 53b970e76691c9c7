// Monotone integer priority queues with decrease-key.
//
// All three backends share one contract: items are dense integer ids in
// [0, id_capacity), keys are non-negative integers or kUnreached. Items keyed
// kUnreached sit in a side pool; they are never extracted and enter the
// ordered structure on their first finite decrease_key. The bucket backends
// additionally require a monotone workload: no finite key may drop below the
// last extracted minimum.

#ifndef SPAF_PQUEUE_HPP
#define SPAF_PQUEUE_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spaf {

using Key = std::int64_t;
using ItemId = std::int32_t;

inline constexpr Key kUnreached = std::numeric_limits<Key>::max();

struct QueueEntry {
  ItemId id;
  Key key;

  friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
};

/// Operation counters. slot_visits counts bucket inspections made while
/// searching for a minimum; the heap leaves it at zero.
struct QueueStats {
  std::uint64_t inserts = 0;
  std::uint64_t decrease_keys = 0;
  std::uint64_t delete_mins = 0;
  std::uint64_t slot_visits = 0;
  std::uint64_t cascades = 0;       // bucket redistributions
  std::uint64_t cascade_moves = 0;  // items moved by redistributions

  std::uint64_t operations() const noexcept { return inserts + decrease_keys + delete_mins; }
  QueueStats& operator+=(const QueueStats& other) noexcept;
};

class QueueError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class QueueBackend { kOneLevel, kCascading, kHeap };

std::string_view backend_name(QueueBackend backend) noexcept;
std::optional<QueueBackend> parse_backend(std::string_view name) noexcept;

template <class Q>
concept MinQueue = requires(Q q, const Q cq, ItemId id, Key key) {
  q.insert(id, key);
  q.decrease_key(id, key);
  { q.delete_min() } -> std::same_as<std::optional<QueueEntry>>;
  { cq.contains(id) } -> std::same_as<bool>;
  { cq.stats() } -> std::convertible_to<const QueueStats&>;
};

namespace detail {

/// Intrusive FIFO lists over a fixed id space; each id is in at most one bucket.
class BucketLists {
 public:
  static constexpr std::int32_t kNone = -1;

  BucketLists(std::size_t buckets, std::size_t ids);

  void push_back(std::int32_t bucket, ItemId id);
  void unlink(ItemId id);
  /// Empties the bucket and returns the head of its former chain; follow it
  /// with next() before relinking any of its members.
  ItemId detach(std::int32_t bucket);

  ItemId front(std::int32_t bucket) const { return head_[static_cast<std::size_t>(bucket)]; }
  bool empty(std::int32_t bucket) const { return front(bucket) == kNone; }
  ItemId next(ItemId id) const { return next_[static_cast<std::size_t>(id)]; }
  std::int32_t bucket_of(ItemId id) const { return where_[static_cast<std::size_t>(id)]; }
  std::size_t bucket_count() const noexcept { return head_.size(); }

 private:
  std::vector<ItemId> head_;
  std::vector<ItemId> tail_;
  std::vector<ItemId> next_;
  std::vector<ItemId> prev_;
  std::vector<std::int32_t> where_;
};

/// Per-item bookkeeping shared by every backend: key plus pool/live state.
class ItemTable {
 public:
  enum class State : std::uint8_t { kAbsent, kPooled, kQueued };

  explicit ItemTable(std::size_t ids) : key_(ids, kUnreached), state_(ids, State::kAbsent) {}

  std::size_t capacity() const noexcept { return key_.size(); }
  Key key(ItemId id) const { return key_[static_cast<std::size_t>(id)]; }
  State state(ItemId id) const { return state_[static_cast<std::size_t>(id)]; }
  void set(ItemId id, Key key, State state) {
    key_[static_cast<std::size_t>(id)] = key;
    state_[static_cast<std::size_t>(id)] = state;
  }

  void check_id(ItemId id) const;

 private:
  std::vector<Key> key_;
  std::vector<State> state_;
};

}  // namespace detail

/// Array of buckets indexed by key with a forward-only scan cursor.
class OneLevelBuckets {
 public:
  /// Finite keys must lie in [0, key_capacity).
  OneLevelBuckets(std::size_t id_capacity, Key key_capacity);

  void insert(ItemId id, Key key);
  void decrease_key(ItemId id, Key new_key);
  std::optional<QueueEntry> delete_min();

  bool contains(ItemId id) const;
  Key key_of(ItemId id) const;
  std::size_t size() const noexcept { return queued_ + pooled_; }
  std::size_t finite_size() const noexcept { return queued_; }
  std::size_t pooled_size() const noexcept { return pooled_; }
  Key key_capacity() const noexcept { return static_cast<Key>(lists_.bucket_count()); }
  Key scan_position() const noexcept { return cursor_; }
  const QueueStats& stats() const noexcept { return stats_; }

  /// Empty string when consistent, otherwise a description of the violation.
  std::string audit() const;
  void dump(std::ostream& out) const;

 private:
  void place(ItemId id, Key key);
  void check_finite(Key key) const;

  detail::ItemTable items_;
  detail::BucketLists lists_;
  Key cursor_ = 0;
  std::size_t queued_ = 0;
  std::size_t pooled_ = 0;
  QueueStats stats_;
};

/// k-level cascading bucket system with p buckets per level.
///
/// A key d lives at the highest level i where floor(d / p^i) differs from
/// floor(base / p^i), in bucket floor(d / p^i) mod p; keys agreeing with base
/// above digit 0 live at level 0. Below the top level the occupied buckets of
/// a level always sit above base's digit, so bucket order is key order. The
/// top level is circular: its buckets are ordered starting just after base's
/// top digit, which lets base advance without relocating anything. Finite
/// keys must satisfy base <= key < base + p^k at insertion time.
///
/// delete_min cascades when level 0 is empty: the first non-empty bucket of
/// the lowest non-empty level j is emptied, base moves to that bucket's lower
/// bound, and its items are redistributed into levels below j. This repeats
/// until level 0 holds an item.
class CascadingBuckets {
 public:
  CascadingBuckets(std::size_t id_capacity, int levels, Key buckets_per_level, Key base = 0);

  void insert(ItemId id, Key key);
  void decrease_key(ItemId id, Key new_key);
  std::optional<QueueEntry> delete_min();

  bool contains(ItemId id) const;
  Key key_of(ItemId id) const;
  std::size_t size() const noexcept { return queued_ + pooled_; }
  std::size_t finite_size() const noexcept { return queued_; }
  std::size_t pooled_size() const noexcept { return pooled_; }
  int levels() const noexcept { return k_; }
  Key buckets_per_level() const noexcept { return p_; }
  /// p^k: width of the admissible key range above base.
  Key key_window() const noexcept { return span_; }
  Key base() const noexcept { return base_; }
  /// Level an item currently occupies, or -1 if it is not in a bucket.
  int level_of(ItemId id) const;
  /// Bucket index (within its level) an item currently occupies, or -1.
  Key bucket_of(ItemId id) const;
  std::size_t level_size(int level) const { return level_count_[static_cast<std::size_t>(level)]; }
  /// a_i: lower bound (in level order) on the first non-empty bucket; p when empty.
  Key active(int level) const { return active_[static_cast<std::size_t>(level)]; }
  const std::vector<std::uint64_t>& cascades_by_level() const noexcept { return cascades_by_level_; }
  const QueueStats& stats() const noexcept { return stats_; }

  std::string audit() const;
  void dump(std::ostream& out) const;

 private:
  struct Slot {
    int level;
    Key bucket;
  };

  Slot slot_for(Key key) const;
  Key rank(int level, Key bucket) const;
  Key bucket_at(int level, Key rank) const;
  std::int32_t flat(int level, Key bucket) const {
    return static_cast<std::int32_t>(static_cast<Key>(level) * p_ + bucket);
  }
  void place(ItemId id, Key key);
  void remove_from_bucket(ItemId id);
  Key first_nonempty(int level);
  void cascade_once();
  void check_finite(Key key) const;

  int k_;
  Key p_;
  Key span_;
  std::vector<Key> pow_;  // p^0 .. p^(k-1)
  Key base_;
  Key last_extracted_;
  detail::ItemTable items_;
  detail::BucketLists lists_;
  std::vector<Key> active_;
  std::vector<std::size_t> level_count_;
  std::vector<std::uint64_t> cascades_by_level_;
  std::size_t queued_ = 0;
  std::size_t pooled_ = 0;
  QueueStats stats_;
};

/// Indexed binary min-heap; the reference backend for differential testing.
class BinaryHeapQueue {
 public:
  explicit BinaryHeapQueue(std::size_t id_capacity);

  void insert(ItemId id, Key key);
  void decrease_key(ItemId id, Key new_key);
  std::optional<QueueEntry> delete_min();

  bool contains(ItemId id) const;
  Key key_of(ItemId id) const;
  std::size_t size() const noexcept { return heap_.size() + pooled_; }
  std::size_t finite_size() const noexcept { return heap_.size(); }
  const QueueStats& stats() const noexcept { return stats_; }

  std::string audit() const;
  void dump(std::ostream& out) const;

 private:
  bool less(std::size_t a, std::size_t b) const;
  void sift_up(std::size_t i);
  void sift_down(std::size_t i);
  void swap_slots(std::size_t a, std::size_t b);

  detail::ItemTable items_;
  std::vector<ItemId> heap_;
  std::vector<std::uint64_t> order_;  // insertion stamp per id, breaks key ties
  std::vector<std::int64_t> pos_;
  std::uint64_t stamp_ = 0;
  std::size_t pooled_ = 0;
  QueueStats stats_;
};

static_assert(MinQueue<OneLevelBuckets>);
static_assert(MinQueue<CascadingBuckets>);
static_assert(MinQueue<BinaryHeapQueue>);

struct CbsParams {
  int levels;            // k
  Key buckets_per_level;  // p

  friend bool operator==(const CbsParams&, const CbsParams&) = default;
};

/// k = max(1, ceil(log2(key_span / item_count))), p = max(2, ceil(ratio^(1/k)))
/// raised until p^k >= ratio. `levels_override` replaces the computed k.
CbsParams choose_cbs_params(Key key_span, std::int64_t item_count,
                            std::optional<int> levels_override = std::nullopt);

/// Raises p until the structure admits every key in [mu, mu + window) where mu
/// is the last extracted minimum. A moving base lags mu by less than p when
/// k >= 2, so the requirement is p^k >= window + p - 1; with k = 1 the base
/// tracks mu exactly and p >= window suffices.
CbsParams fit_cbs_window(CbsParams params, Key window);

}  // namespace spaf

#endif  // SPAF_PQUEUE_HPP
