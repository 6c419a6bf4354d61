#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace pinchlab::detail {

// Read-mostly memo. Two threads may both build a missing entry; the first
// insertion wins and the other result is discarded.
template <class Key, class Value>
class Memo {
 public:
  template <class Build>
  std::shared_ptr<const Value> get(const Key& key, Build&& build) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto built = std::make_shared<const Value>(build());
    std::unique_lock lock(mutex_);
    return map_.emplace(key, std::move(built)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> map_;
};

}  // namespace pinchlab::detail
