#include "spaf/pqueue.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace spaf {

QueueStats& QueueStats::operator+=(const QueueStats& other) noexcept {
  inserts += other.inserts;
  decrease_keys += other.decrease_keys;
  delete_mins += other.delete_mins;
  slot_visits += other.slot_visits;
  cascades += other.cascades;
  cascade_moves += other.cascade_moves;
  return *this;
}

std::string_view backend_name(QueueBackend backend) noexcept {
  switch (backend) {
    case QueueBackend::kOneLevel:
      return "one-level";
    case QueueBackend::kCascading:
      return "cascading";
    case QueueBackend::kHeap:
      return "heap";
  }
  return "unknown";
}

std::optional<QueueBackend> parse_backend(std::string_view name) noexcept {
  if (name == "one-level") return QueueBackend::kOneLevel;
  if (name == "cascading") return QueueBackend::kCascading;
  if (name == "heap" || name == "reference-heap") return QueueBackend::kHeap;
  return std::nullopt;
}

namespace detail {

BucketLists::BucketLists(std::size_t buckets, std::size_t ids)
    : head_(buckets, kNone),
      tail_(buckets, kNone),
      next_(ids, kNone),
      prev_(ids, kNone),
      where_(ids, kNone) {}

void BucketLists::push_back(std::int32_t bucket, ItemId id) {
  auto b = static_cast<std::size_t>(bucket);
  auto i = static_cast<std::size_t>(id);
  where_[i] = bucket;
  next_[i] = kNone;
  prev_[i] = tail_[b];
  if (tail_[b] == kNone) {
    head_[b] = id;
  } else {
    next_[static_cast<std::size_t>(tail_[b])] = id;
  }
  tail_[b] = id;
}

void BucketLists::unlink(ItemId id) {
  auto i = static_cast<std::size_t>(id);
  auto b = static_cast<std::size_t>(where_[i]);
  if (prev_[i] == kNone) {
    head_[b] = next_[i];
  } else {
    next_[static_cast<std::size_t>(prev_[i])] = next_[i];
  }
  if (next_[i] == kNone) {
    tail_[b] = prev_[i];
  } else {
    prev_[static_cast<std::size_t>(next_[i])] = prev_[i];
  }
  next_[i] = prev_[i] = kNone;
  where_[i] = kNone;
}

ItemId BucketLists::detach(std::int32_t bucket) {
  auto b = static_cast<std::size_t>(bucket);
  ItemId head = head_[b];
  head_[b] = tail_[b] = kNone;
  return head;
}

void ItemTable::check_id(ItemId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= key_.size()) {
    throw QueueError("item id " + std::to_string(id) + " outside the declared id space");
  }
}

}  // namespace detail

namespace {

using State = detail::ItemTable::State;

void check_insertable(const detail::ItemTable& items, ItemId id) {
  items.check_id(id);
  if (items.state(id) != State::kAbsent) {
    throw QueueError("item " + std::to_string(id) + " is already in the queue");
  }
}

void check_decreasable(const detail::ItemTable& items, ItemId id, Key new_key) {
  items.check_id(id);
  if (items.state(id) == State::kAbsent) {
    throw QueueError("decrease_key on unknown item " + std::to_string(id));
  }
  if (new_key == kUnreached || new_key >= items.key(id)) {
    throw QueueError("decrease_key must strictly lower the key of item " + std::to_string(id));
  }
  if (new_key < 0) throw QueueError("negative key");
}

}  // namespace

// ---------------------------------------------------------------------------
// OneLevelBuckets

OneLevelBuckets::OneLevelBuckets(std::size_t id_capacity, Key key_capacity)
    : items_(id_capacity), lists_(static_cast<std::size_t>(std::max<Key>(key_capacity, 0)), id_capacity) {
  if (key_capacity < 1) throw QueueError("key capacity must be positive");
}

void OneLevelBuckets::check_finite(Key key) const {
  if (key < 0 || key >= key_capacity()) {
    throw QueueError("key " + std::to_string(key) + " outside capacity [0," +
                     std::to_string(key_capacity()) + ")");
  }
  if (key < cursor_) {
    throw QueueError("key " + std::to_string(key) + " below scan position " +
                     std::to_string(cursor_));
  }
}

void OneLevelBuckets::place(ItemId id, Key key) {
  items_.set(id, key, State::kQueued);
  lists_.push_back(static_cast<std::int32_t>(key), id);
  ++queued_;
}

void OneLevelBuckets::insert(ItemId id, Key key) {
  check_insertable(items_, id);
  ++stats_.inserts;
  if (key == kUnreached) {
    items_.set(id, key, State::kPooled);
    ++pooled_;
    return;
  }
  check_finite(key);
  place(id, key);
}

void OneLevelBuckets::decrease_key(ItemId id, Key new_key) {
  check_decreasable(items_, id, new_key);
  check_finite(new_key);
  ++stats_.decrease_keys;
  if (items_.state(id) == State::kPooled) {
    --pooled_;
  } else {
    lists_.unlink(id);
    --queued_;
  }
  place(id, new_key);
}

std::optional<QueueEntry> OneLevelBuckets::delete_min() {
  ++stats_.delete_mins;
  if (queued_ == 0) return std::nullopt;
  while (true) {
    ++stats_.slot_visits;
    if (!lists_.empty(static_cast<std::int32_t>(cursor_))) break;
    ++cursor_;
  }
  ItemId id = lists_.front(static_cast<std::int32_t>(cursor_));
  lists_.unlink(id);
  --queued_;
  Key key = items_.key(id);
  items_.set(id, kUnreached, State::kAbsent);
  return QueueEntry{id, key};
}

bool OneLevelBuckets::contains(ItemId id) const {
  items_.check_id(id);
  return items_.state(id) != State::kAbsent;
}

Key OneLevelBuckets::key_of(ItemId id) const {
  if (!contains(id)) throw QueueError("item " + std::to_string(id) + " is not in the queue");
  return items_.key(id);
}

std::string OneLevelBuckets::audit() const {
  std::size_t queued = 0;
  std::size_t pooled = 0;
  for (ItemId id = 0; static_cast<std::size_t>(id) < items_.capacity(); ++id) {
    switch (items_.state(id)) {
      case State::kAbsent:
        if (lists_.bucket_of(id) != detail::BucketLists::kNone) return "absent item in a bucket";
        break;
      case State::kPooled:
        ++pooled;
        if (lists_.bucket_of(id) != detail::BucketLists::kNone) return "pooled item in a bucket";
        break;
      case State::kQueued:
        ++queued;
        if (lists_.bucket_of(id) != items_.key(id)) {
          return "item " + std::to_string(id) + " not in the bucket of its key";
        }
        if (items_.key(id) < cursor_) return "item below the scan cursor";
        break;
    }
  }
  if (queued != queued_ || pooled != pooled_) return "live counts out of sync";
  return {};
}

void OneLevelBuckets::dump(std::ostream& out) const {
  out << "one-level capacity=" << key_capacity() << " cursor=" << cursor_ << " live=" << size()
      << " pooled=" << pooled_ << '\n';
  out << "buckets";
  for (Key b = cursor_; b < key_capacity(); ++b) {
    ItemId id = lists_.front(static_cast<std::int32_t>(b));
    if (id == detail::BucketLists::kNone) continue;
    out << ' ' << b << ":[";
    for (bool first = true; id != detail::BucketLists::kNone; id = lists_.next(id), first = false) {
      out << (first ? "" : " ") << id;
    }
    out << ']';
  }
  out << '\n';
}

// ---------------------------------------------------------------------------
// CascadingBuckets

namespace {

constexpr Key kMaxSpan = Key{1} << 62;

// p^k, or -1 once it exceeds kMaxSpan.
Key checked_power(Key p, int k) {
  Key result = 1;
  for (int i = 0; i < k; ++i) {
    if (result > kMaxSpan / p) return -1;
    result *= p;
  }
  return result;
}

}  // namespace

CascadingBuckets::CascadingBuckets(std::size_t id_capacity, int levels, Key buckets_per_level,
                                   Key base)
    : k_(levels),
      p_(buckets_per_level),
      span_(0),
      base_(base),
      last_extracted_(base),
      items_(id_capacity),
      lists_(levels >= 1 && buckets_per_level >= 2
                 ? static_cast<std::size_t>(levels) * static_cast<std::size_t>(buckets_per_level)
                 : 0,
             id_capacity) {
  if (k_ < 1) throw QueueError("cascading buckets need at least one level");
  if (p_ < 2) throw QueueError("cascading buckets need at least two buckets per level");
  if (base_ < 0) throw QueueError("negative base");
  span_ = checked_power(p_, k_);
  if (span_ < 0) throw QueueError("p^k exceeds the supported key range");
  pow_.resize(static_cast<std::size_t>(k_));
  pow_[0] = 1;
  for (int i = 1; i < k_; ++i) pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i - 1)] * p_;
  active_.assign(static_cast<std::size_t>(k_), p_);
  level_count_.assign(static_cast<std::size_t>(k_), 0);
  cascades_by_level_.assign(static_cast<std::size_t>(k_), 0);
}

CascadingBuckets::Slot CascadingBuckets::slot_for(Key key) const {
  for (int i = k_ - 1; i >= 1; --i) {
    Key w = pow_[static_cast<std::size_t>(i)];
    if (key / w != base_ / w) return {i, (key / w) % p_};
  }
  return {0, key % p_};
}

// Position of a bucket in the level's key order.
Key CascadingBuckets::rank(int level, Key bucket) const {
  if (level != k_ - 1) return bucket;
  Key top = base_ / pow_[static_cast<std::size_t>(k_ - 1)];
  Key origin = (k_ == 1 ? top : top + 1) % p_;
  return (bucket - origin + p_) % p_;
}

Key CascadingBuckets::bucket_at(int level, Key r) const {
  if (level != k_ - 1) return r;
  Key top = base_ / pow_[static_cast<std::size_t>(k_ - 1)];
  Key origin = (k_ == 1 ? top : top + 1) % p_;
  return (origin + r) % p_;
}

void CascadingBuckets::check_finite(Key key) const {
  Key floor = std::max(base_, last_extracted_);
  if (key < floor) {
    throw QueueError("key " + std::to_string(key) + " below the last extracted minimum " +
                     std::to_string(floor));
  }
  if (key - base_ >= span_) {
    throw QueueError("key " + std::to_string(key) + " outside capacity [" + std::to_string(base_) +
                     "," + std::to_string(base_ + span_) + ")");
  }
}

void CascadingBuckets::place(ItemId id, Key key) {
  Slot s = slot_for(key);
  items_.set(id, key, State::kQueued);
  lists_.push_back(flat(s.level, s.bucket), id);
  auto lvl = static_cast<std::size_t>(s.level);
  ++level_count_[lvl];
  active_[lvl] = std::min(active_[lvl], rank(s.level, s.bucket));
  ++queued_;
}

void CascadingBuckets::remove_from_bucket(ItemId id) {
  auto lvl = static_cast<std::size_t>(lists_.bucket_of(id) / p_);
  lists_.unlink(id);
  if (--level_count_[lvl] == 0) active_[lvl] = p_;
  --queued_;
}

void CascadingBuckets::insert(ItemId id, Key key) {
  check_insertable(items_, id);
  ++stats_.inserts;
  if (key == kUnreached) {
    items_.set(id, key, State::kPooled);
    ++pooled_;
    return;
  }
  check_finite(key);
  place(id, key);
}

void CascadingBuckets::decrease_key(ItemId id, Key new_key) {
  check_decreasable(items_, id, new_key);
  check_finite(new_key);
  ++stats_.decrease_keys;
  if (items_.state(id) == State::kPooled) {
    --pooled_;
  } else {
    remove_from_bucket(id);
  }
  place(id, new_key);
}

Key CascadingBuckets::first_nonempty(int level) {
  auto lvl = static_cast<std::size_t>(level);
  while (true) {
    ++stats_.slot_visits;
    Key b = bucket_at(level, active_[lvl]);
    if (!lists_.empty(flat(level, b))) return b;
    ++active_[lvl];
  }
}

void CascadingBuckets::cascade_once() {
  int j = 1;
  while (level_count_[static_cast<std::size_t>(j)] == 0) ++j;
  auto lvl = static_cast<std::size_t>(j);
  Key b = first_nonempty(j);
  ItemId head = lists_.detach(flat(j, b));

  std::size_t moved = 0;
  for (ItemId id = head; id != detail::BucketLists::kNone; id = lists_.next(id)) ++moved;
  level_count_[lvl] -= moved;
  queued_ -= moved;

  Key w = pow_[lvl];
  base_ = (items_.key(head) / w) * w;
  if (j == k_ - 1) {
    // Top-level order is relative to base's top digit, which just changed.
    active_[lvl] = 0;
  }
  if (level_count_[lvl] == 0) active_[lvl] = p_;

  for (ItemId id = head; id != detail::BucketLists::kNone;) {
    ItemId next = lists_.next(id);
    place(id, items_.key(id));
    id = next;
  }
  ++stats_.cascades;
  stats_.cascade_moves += moved;
  ++cascades_by_level_[lvl];
}

std::optional<QueueEntry> CascadingBuckets::delete_min() {
  ++stats_.delete_mins;
  if (queued_ == 0) return std::nullopt;
  while (level_count_[0] == 0) cascade_once();

  Key b = first_nonempty(0);
  ItemId id = lists_.front(flat(0, b));
  remove_from_bucket(id);
  Key key = items_.key(id);
  items_.set(id, kUnreached, State::kAbsent);
  last_extracted_ = key;
  if (k_ == 1) {
    // A single circular level: base follows the minimum, shifting every
    // rank down by the extracted bucket's rank.
    base_ = key;
    if (level_count_[0] > 0) active_[0] = 0;
  }
  return QueueEntry{id, key};
}

bool CascadingBuckets::contains(ItemId id) const {
  items_.check_id(id);
  return items_.state(id) != State::kAbsent;
}

Key CascadingBuckets::key_of(ItemId id) const {
  if (!contains(id)) throw QueueError("item " + std::to_string(id) + " is not in the queue");
  return items_.key(id);
}

int CascadingBuckets::level_of(ItemId id) const {
  items_.check_id(id);
  std::int32_t where = lists_.bucket_of(id);
  return where == detail::BucketLists::kNone ? -1 : static_cast<int>(where / p_);
}

Key CascadingBuckets::bucket_of(ItemId id) const {
  items_.check_id(id);
  std::int32_t where = lists_.bucket_of(id);
  return where == detail::BucketLists::kNone ? -1 : where % p_;
}

std::string CascadingBuckets::audit() const {
  std::size_t queued = 0;
  std::size_t pooled = 0;
  std::vector<std::size_t> per_level(static_cast<std::size_t>(k_), 0);
  for (ItemId id = 0; static_cast<std::size_t>(id) < items_.capacity(); ++id) {
    State st = items_.state(id);
    if (st == State::kPooled) ++pooled;
    if (st != State::kQueued) {
      if (lists_.bucket_of(id) != detail::BucketLists::kNone) return "non-queued item in a bucket";
      continue;
    }
    ++queued;
    Key key = items_.key(id);
    if (key < base_ || key - base_ >= span_) {
      return "item " + std::to_string(id) + " key outside the window above base";
    }
    Slot want = slot_for(key);
    if (lists_.bucket_of(id) != flat(want.level, want.bucket)) {
      std::ostringstream msg;
      msg << "item " << id << " key " << key << " at level " << level_of(id) << " bucket "
          << bucket_of(id) << ", expected level " << want.level << " bucket " << want.bucket;
      return msg.str();
    }
    ++per_level[static_cast<std::size_t>(want.level)];
    if (rank(want.level, want.bucket) < active_[static_cast<std::size_t>(want.level)]) {
      return "active pointer of level " + std::to_string(want.level) + " skips a non-empty bucket";
    }
  }
  if (queued != queued_ || pooled != pooled_) return "live counts out of sync";
  if (per_level != level_count_) return "level counts out of sync";
  for (int i = 0; i < k_; ++i) {
    if (level_count_[static_cast<std::size_t>(i)] == 0 && active_[static_cast<std::size_t>(i)] != p_) {
      return "empty level " + std::to_string(i) + " without a_i = p";
    }
  }
  return {};
}

void CascadingBuckets::dump(std::ostream& out) const {
  out << "cascading k=" << k_ << " p=" << p_ << " base=" << base_ << " last=" << last_extracted_
      << " live=" << size() << " pooled=" << pooled_ << '\n';
  for (int i = 0; i < k_; ++i) {
    auto lvl = static_cast<std::size_t>(i);
    out << "level " << i << " active=" << active_[lvl] << " count=" << level_count_[lvl];
    for (Key r = 0; r < p_; ++r) {
      Key b = bucket_at(i, r);
      ItemId id = lists_.front(flat(i, b));
      if (id == detail::BucketLists::kNone) continue;
      out << ' ' << b << ":[";
      for (bool first = true; id != detail::BucketLists::kNone; id = lists_.next(id), first = false) {
        out << (first ? "" : " ") << items_.key(id);
      }
      out << ']';
    }
    out << '\n';
  }
  out << "cascades_by_level";
  for (auto c : cascades_by_level_) out << ' ' << c;
  out << '\n';
}

// ---------------------------------------------------------------------------
// BinaryHeapQueue

BinaryHeapQueue::BinaryHeapQueue(std::size_t id_capacity)
    : items_(id_capacity), order_(id_capacity, 0), pos_(id_capacity, -1) {}

bool BinaryHeapQueue::less(std::size_t a, std::size_t b) const {
  ItemId x = heap_[a];
  ItemId y = heap_[b];
  Key kx = items_.key(x);
  Key ky = items_.key(y);
  if (kx != ky) return kx < ky;
  return order_[static_cast<std::size_t>(x)] < order_[static_cast<std::size_t>(y)];
}

void BinaryHeapQueue::swap_slots(std::size_t a, std::size_t b) {
  std::swap(heap_[a], heap_[b]);
  pos_[static_cast<std::size_t>(heap_[a])] = static_cast<std::int64_t>(a);
  pos_[static_cast<std::size_t>(heap_[b])] = static_cast<std::int64_t>(b);
}

void BinaryHeapQueue::sift_up(std::size_t i) {
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!less(i, parent)) break;
    swap_slots(i, parent);
    i = parent;
  }
}

void BinaryHeapQueue::sift_down(std::size_t i) {
  while (true) {
    std::size_t smallest = i;
    std::size_t l = 2 * i + 1;
    std::size_t r = l + 1;
    if (l < heap_.size() && less(l, smallest)) smallest = l;
    if (r < heap_.size() && less(r, smallest)) smallest = r;
    if (smallest == i) return;
    swap_slots(i, smallest);
    i = smallest;
  }
}

void BinaryHeapQueue::insert(ItemId id, Key key) {
  check_insertable(items_, id);
  if (key != kUnreached && key < 0) throw QueueError("negative key");
  ++stats_.inserts;
  order_[static_cast<std::size_t>(id)] = stamp_++;
  if (key == kUnreached) {
    items_.set(id, key, State::kPooled);
    ++pooled_;
    return;
  }
  items_.set(id, key, State::kQueued);
  heap_.push_back(id);
  pos_[static_cast<std::size_t>(id)] = static_cast<std::int64_t>(heap_.size() - 1);
  sift_up(heap_.size() - 1);
}

void BinaryHeapQueue::decrease_key(ItemId id, Key new_key) {
  check_decreasable(items_, id, new_key);
  ++stats_.decrease_keys;
  if (items_.state(id) == State::kPooled) {
    --pooled_;
    items_.set(id, new_key, State::kQueued);
    heap_.push_back(id);
    pos_[static_cast<std::size_t>(id)] = static_cast<std::int64_t>(heap_.size() - 1);
  } else {
    items_.set(id, new_key, State::kQueued);
  }
  sift_up(static_cast<std::size_t>(pos_[static_cast<std::size_t>(id)]));
}

std::optional<QueueEntry> BinaryHeapQueue::delete_min() {
  ++stats_.delete_mins;
  if (heap_.empty()) return std::nullopt;
  ItemId id = heap_.front();
  swap_slots(0, heap_.size() - 1);
  heap_.pop_back();
  if (!heap_.empty()) sift_down(0);
  pos_[static_cast<std::size_t>(id)] = -1;
  Key key = items_.key(id);
  items_.set(id, kUnreached, State::kAbsent);
  return QueueEntry{id, key};
}

bool BinaryHeapQueue::contains(ItemId id) const {
  items_.check_id(id);
  return items_.state(id) != State::kAbsent;
}

Key BinaryHeapQueue::key_of(ItemId id) const {
  if (!contains(id)) throw QueueError("item " + std::to_string(id) + " is not in the queue");
  return items_.key(id);
}

std::string BinaryHeapQueue::audit() const {
  for (std::size_t i = 1; i < heap_.size(); ++i) {
    if (less(i, (i - 1) / 2)) return "heap order violated at slot " + std::to_string(i);
  }
  for (std::size_t i = 0; i < heap_.size(); ++i) {
    if (pos_[static_cast<std::size_t>(heap_[i])] != static_cast<std::int64_t>(i)) {
      return "position table out of sync";
    }
  }
  return {};
}

void BinaryHeapQueue::dump(std::ostream& out) const {
  out << "heap live=" << size() << " pooled=" << pooled_ << '\n';
}

// ---------------------------------------------------------------------------

CbsParams choose_cbs_params(Key key_span, std::int64_t item_count, std::optional<int> levels_override) {
  if (key_span < 1 || item_count < 1) {
    throw std::invalid_argument("choose_cbs_params needs positive key span and item count");
  }
  double ratio = static_cast<double>(key_span) / static_cast<double>(item_count);
  int k = 1;
  if (ratio > 1.0) k = std::max(1, static_cast<int>(std::ceil(std::log2(ratio))));
  if (levels_override) {
    if (*levels_override < 1) throw std::invalid_argument("level override must be >= 1");
    k = *levels_override;
  }
  Key p = 2;
  if (ratio > 1.0) {
    p = std::max<Key>(2, static_cast<Key>(std::ceil(std::pow(ratio, 1.0 / k))));
    // Repair floating-point shortfall so that p^k >= ratio.
    while (true) {
      Key cap = checked_power(p, k);
      if (cap < 0 || static_cast<double>(cap) >= ratio) break;
      ++p;
    }
  }
  return {k, p};
}

CbsParams fit_cbs_window(CbsParams params, Key window) {
  if (params.levels < 1 || params.buckets_per_level < 2) throw std::invalid_argument("invalid CBS params");
  window = std::max<Key>(window, 1);
  auto fits = [&](Key p) {
    Key cap = checked_power(p, params.levels);
    if (cap < 0) return true;
    Key need = params.levels == 1 ? window : window + p - 1;
    return cap >= need;
  };
  if (fits(params.buckets_per_level)) return params;
  // Smallest fitting p by doubling then bisection.
  Key lo = params.buckets_per_level;
  Key hi = lo;
  while (!fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Key mid = lo + (hi - lo) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  params.buckets_per_level = hi;
  return params;
}

}  // namespace spaf
