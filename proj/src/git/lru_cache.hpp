/*
 * Copyright (c) 2026 The stmine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <array>
#include <cstddef>
#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>

namespace stmine::git {

/// Sharded, byte-budgeted LRU cache. `Value` must be cheap to copy
/// (a shared_ptr in practice); the caller supplies each entry's cost.
template <class Key, class Value, class Hash = std::hash<Key>>
class LruCache {
 public:
  explicit LruCache(std::size_t budget_bytes)
      : shard_budget_(budget_bytes / kShards) {}

  std::optional<Value> get(const Key& key) {
    Shard& s = shard_for(key);
    std::lock_guard lock(s.mutex);
    auto it = s.index.find(key);
    if (it == s.index.end()) return std::nullopt;
    s.order.splice(s.order.begin(), s.order, it->second);
    return it->second->value;
  }

  void put(const Key& key, Value value, std::size_t cost) {
    Shard& s = shard_for(key);
    std::lock_guard lock(s.mutex);
    if (auto it = s.index.find(key); it != s.index.end()) return;
    if (cost > shard_budget_) return;
    s.order.push_front(Entry{key, std::move(value), cost});
    s.index.emplace(key, s.order.begin());
    s.bytes += cost;
    while (s.bytes > shard_budget_ && !s.order.empty()) {
      Entry& victim = s.order.back();
      s.bytes -= victim.cost;
      s.index.erase(victim.key);
      s.order.pop_back();
    }
  }

 private:
  static constexpr std::size_t kShards = 16;

  struct Entry {
    Key key;
    Value value;
    std::size_t cost;
  };
  struct Shard {
    std::mutex mutex;
    std::list<Entry> order;
    std::unordered_map<Key, typename std::list<Entry>::iterator, Hash> index;
    std::size_t bytes = 0;
  };

  Shard& shard_for(const Key& key) { return shards_[Hash{}(key) % kShards]; }

  std::size_t shard_budget_;
  std::array<Shard, kShards> shards_;
};

}  // namespace stmine::git
