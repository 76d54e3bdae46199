#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "diskpath/nn/weighted_nn.hpp"
#include "diskpath/undo_log.hpp"

namespace diskpath {

/// Deletion-only nearest-neighbor structure: tombstones in the inner kd-tree,
/// rebuilt from the survivors once half of the sites are gone. All mutations
/// can be journaled so a simulated decider can rewind them.
template <class Kernel>
class DeleteOnlyNN {
 public:
  static constexpr std::size_t kMinRebuild = 32;

  DeleteOnlyNN() : core_(std::make_shared<Core>()) {}

  explicit DeleteOnlyNN(std::vector<WeightedSite> sites, UndoLog* log = nullptr)
      : core_(make_core(std::move(sites))), log_(log) {
    live_ = core_->nn.size();
  }

  void set_log(UndoLog* log) noexcept { log_ = log; }

  std::size_t live_count() const noexcept { return live_; }
  bool empty() const noexcept { return live_ == 0; }

  bool contains(int id) const noexcept {
    auto slot = core_->slot_of(id);
    return slot && core_->nn.is_live(*slot);
  }

  std::optional<NNResult> query(const NNQuery& q) const { return core_->nn.query(q); }

  NNResult nearest(const NNQuery& q) const {
    auto r = query(q);
    if (!r) throw EmptyStructure("query on an empty deletion-only structure");
    return *r;
  }

  void erase(int id) {
    auto slot = core_->slot_of(id);
    if (!slot || !core_->nn.is_live(*slot)) {
      throw AlreadyDeleted("site " + std::to_string(id) + " is not live");
    }
    WeightedNN<Kernel>* inner = &core_->nn;
    inner->set_live(*slot, false);
    if (log_ && log_->active()) {
      const std::size_t s = *slot;
      log_->save_action([inner, s] { inner->set_live(s, true); });
    }
    journal::assign(log_, live_, live_ - 1);
    if (core_->nn.size() >= kMinRebuild && 2 * live_ <= core_->nn.size()) rebuild();
  }

  template <class Fn>
  void for_each_live(Fn&& fn) const {
    for (std::size_t i = 0; i < core_->nn.size(); ++i) {
      if (core_->nn.is_live(i)) fn(core_->nn.site(i));
    }
  }

 private:
  struct Core {
    WeightedNN<Kernel> nn;
    std::vector<std::pair<int, std::uint32_t>> slots;  // sorted by id

    std::optional<std::size_t> slot_of(int id) const noexcept {
      auto it = std::lower_bound(slots.begin(), slots.end(), std::pair<int, std::uint32_t>{id, 0});
      if (it == slots.end() || it->first != id) return std::nullopt;
      return it->second;
    }
  };

  static std::shared_ptr<Core> make_core(std::vector<WeightedSite> sites) {
    auto core = std::make_shared<Core>();
    core->nn = WeightedNN<Kernel>(std::move(sites));
    core->slots.reserve(core->nn.size());
    for (std::size_t i = 0; i < core->nn.size(); ++i) {
      core->slots.emplace_back(core->nn.site(i).id, static_cast<std::uint32_t>(i));
    }
    std::sort(core->slots.begin(), core->slots.end());
    return core;
  }

  void rebuild() {
    std::vector<WeightedSite> survivors;
    survivors.reserve(live_);
    for_each_live([&](const WeightedSite& s) { survivors.push_back(s); });
    auto fresh = make_core(std::move(survivors));
    if (log_ && log_->active()) {
      log_->save_action([this, old = core_] { core_ = old; });
    }
    core_ = std::move(fresh);
  }

  std::shared_ptr<Core> core_;
  UndoLog* log_ = nullptr;
  std::size_t live_ = 0;
};

}  // namespace diskpath
