#pragma once

#include <cstdint>
#include <cstring>
#include <functional>
#include <set>
#include <type_traits>
#include <vector>

#include "diskpath/geometry.hpp"

namespace diskpath {

/// Machine-independent work counter: one oracle invocation or one
/// nearest-neighbor query/mutation is one unit.
struct CostMeter {
  std::uint64_t units = 0;
  void add(std::uint64_t n = 1) noexcept { units += n; }
};

/// LIFO journal of state mutations. Rolling back to a mark restores every
/// journaled location written after the mark. Inactive logs record nothing,
/// so unsimulated runs pay no journaling cost.
class UndoLog {
 public:
  using Mark = std::size_t;

  bool active() const noexcept { return active_; }
  void set_active(bool on) noexcept { active_ = on; }

  Mark mark() const noexcept { return entries_.size(); }
  std::size_t size() const noexcept { return entries_.size(); }

  void rollback(Mark m) {
    if (m > entries_.size()) throw InternalFault("undo log underflow");
    while (entries_.size() > m) {
      Entry e = entries_.back();
      entries_.pop_back();
      e.restore(e, *this);
    }
  }

  /// Makes everything journaled so far permanent.
  void commit() noexcept {
    entries_.clear();
    heavy_.clear();
  }

  /// Journals the current value of a small trivially copyable slot.
  template <class T>
  void save(T& slot) {
    static_assert(std::is_trivially_copyable_v<T> && sizeof(T) <= 16);
    if (!active_) return;
    Entry e{&restore_slot<T>, &slot, 0, 0};
    std::memcpy(&e.a, &slot, sizeof(T));
    entries_.push_back(e);
  }

  template <class T>
  void save_push(std::vector<T>& v) {
    if (!active_) return;
    entries_.push_back(Entry{&restore_pop<T>, &v, 0, 0});
  }

  template <class K>
  void save_insert(std::set<K>& s, const K& key) {
    static_assert(std::is_trivially_copyable_v<K> && sizeof(K) <= 16);
    if (!active_) return;
    Entry e{&restore_erase<K>, &s, 0, 0};
    std::memcpy(&e.a, &key, sizeof(K));
    entries_.push_back(e);
  }

  template <class K>
  void save_erase(std::set<K>& s, const K& key) {
    static_assert(std::is_trivially_copyable_v<K> && sizeof(K) <= 16);
    if (!active_) return;
    Entry e{&restore_insert<K>, &s, 0, 0};
    std::memcpy(&e.a, &key, sizeof(K));
    entries_.push_back(e);
  }

  /// Journals an arbitrary restore action (used for structure rebuilds).
  void save_action(std::function<void()> undo) {
    if (!active_) return;
    heavy_.push_back(std::move(undo));
    entries_.push_back(Entry{&restore_heavy, nullptr, 0, 0});
  }

 private:
  struct Entry {
    void (*restore)(Entry&, UndoLog&);
    void* target;
    std::uint64_t a;
    std::uint64_t b;
  };

  template <class T>
  static void restore_slot(Entry& e, UndoLog&) {
    std::memcpy(static_cast<void*>(static_cast<T*>(e.target)), &e.a, sizeof(T));
  }
  template <class T>
  static void restore_pop(Entry& e, UndoLog&) {
    static_cast<std::vector<T>*>(e.target)->pop_back();
  }
  template <class K>
  static void restore_erase(Entry& e, UndoLog&) {
    K key{};
    std::memcpy(static_cast<void*>(&key), &e.a, sizeof(K));
    static_cast<std::set<K>*>(e.target)->erase(key);
  }
  template <class K>
  static void restore_insert(Entry& e, UndoLog&) {
    K key{};
    std::memcpy(static_cast<void*>(&key), &e.a, sizeof(K));
    static_cast<std::set<K>*>(e.target)->insert(key);
  }
  static void restore_heavy(Entry&, UndoLog& log) {
    auto fn = std::move(log.heavy_.back());
    log.heavy_.pop_back();
    fn();
  }

  bool active_ = false;
  std::vector<Entry> entries_;
  std::vector<std::function<void()>> heavy_;
};

// Journaled mutation helpers; a null log means "not journaled".
namespace journal {

template <class T, class U>
inline void assign(UndoLog* log, T& slot, U&& value) {
  if (log) log->save(slot);
  slot = std::forward<U>(value);
}

template <class T, class U>
inline void push_back(UndoLog* log, std::vector<T>& v, U&& value) {
  if (log) log->save_push(v);
  v.push_back(std::forward<U>(value));
}

template <class K>
inline bool insert(UndoLog* log, std::set<K>& s, const K& key) {
  if (!s.insert(key).second) return false;
  if (log) log->save_insert(s, key);
  return true;
}

template <class K>
inline bool erase(UndoLog* log, std::set<K>& s, const K& key) {
  if (s.erase(key) == 0) return false;
  if (log) log->save_erase(s, key);
  return true;
}

/// Replaces a whole vector, journaling a copy of the previous contents.
template <class T>
inline void replace(UndoLog* log, std::vector<T>& v, std::vector<T> value) {
  if (log && log->active()) {
    log->save_action([&v, old = v]() mutable { v = std::move(old); });
  }
  v = std::move(value);
}

}  // namespace journal

}  // namespace diskpath
