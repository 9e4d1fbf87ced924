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

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "git/lru_cache.hpp"
#include "git/object_id.hpp"

namespace stmine::git {

enum class ObjectType { Commit = 1, Tree = 2, Blob = 3, Tag = 4 };

struct RawObject {
  ObjectType type;
  std::string data;
};

using ObjectPtr = std::shared_ptr<const RawObject>;

class PackFile;

/// Read-only view of a Git object database: loose objects, packfiles (idx v2)
/// and one level of alternates. Safe for concurrent readers.
class ObjectStore {
 public:
  explicit ObjectStore(const std::filesystem::path& objects_dir);
  ~ObjectStore();

  ObjectStore(const ObjectStore&) = delete;
  ObjectStore& operator=(const ObjectStore&) = delete;

  /// Throws Error(CorruptObject) when the object is missing or undecodable.
  ObjectPtr read(const ObjectId& id) const;
  /// Returns nullptr when the object is absent.
  ObjectPtr try_read(const ObjectId& id) const;

 private:
  ObjectPtr read_uncached(const ObjectId& id) const;
  ObjectPtr read_loose(const std::filesystem::path& dir, const ObjectId& id) const;

  std::vector<std::filesystem::path> loose_dirs_;
  std::vector<std::unique_ptr<PackFile>> packs_;
  mutable LruCache<ObjectId, ObjectPtr, ObjectIdHash> cache_;

  friend class PackFile;
};

/// Exposed for tests: applies a Git binary delta to `base`.
std::string apply_delta(std::string_view base, std::string_view delta);

}  // namespace stmine::git
