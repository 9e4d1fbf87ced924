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


#include "mappers/registry.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/json_io.hpp"

namespace stmine::mappers {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c); });
  return out;
}

AliasTable::AliasTable(const std::map<std::string, std::string>& aliases) {
  std::unordered_map<std::string, std::string> raw;
  for (const auto& [from, to] : aliases) {
    auto key = to_lower(from);
    auto value = to_lower(to);
    if (key != value) raw[key] = value;
  }
  for (const auto& [from, to] : raw) {
    // Follow the chain to its end; a cycle collapses onto its smallest member.
    std::set<std::string> seen{from};
    std::string cursor = to;
    while (true) {
      auto it = raw.find(cursor);
      if (it == raw.end()) break;
      if (!seen.insert(cursor).second) {
        cursor = *seen.begin();
        break;
      }
      cursor = it->second;
    }
    if (cursor != from) table_[from] = cursor;
  }
}

AliasTable AliasTable::load(const std::filesystem::path& path) {
  Json doc = read_json(path);
  if (!doc.is_object()) fail(ErrorCode::Schema, path.string() + ": aliases must be a JSON object");
  std::map<std::string, std::string> aliases;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_string()) fail(ErrorCode::Schema, path.string() + ": alias targets must be strings");
    aliases[it.key()] = it.value().get<std::string>();
  }
  return AliasTable(aliases);
}

std::string AliasTable::canonical(std::string_view identity) const {
  auto key = to_lower(identity);
  auto it = table_.find(key);
  return it == table_.end() ? key : it->second;
}

Id IdRegistry::add(std::string_view entity) {
  if (entity.empty()) fail(ErrorCode::EmptyEntity, "cannot register an empty entity");
  auto [it, inserted] = forward_.try_emplace(std::string(entity), static_cast<Id>(reverse_.size()));
  if (inserted) reverse_.push_back(it->first);
  return it->second;
}

std::optional<Id> IdRegistry::find(std::string_view entity) const {
  auto it = forward_.find(std::string(entity));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

Id IdRegistry::at(std::string_view entity) const {
  auto id = find(entity);
  if (!id) throw std::out_of_range("unregistered entity: " + std::string(entity));
  return *id;
}

std::string Registries::user_key(const git::CommitMeta& commit) const {
  const std::string& raw = commit.author_email.empty() ? commit.author_name : commit.author_email;
  return aliases.canonical(raw);
}

void save_mapping(const IdRegistry& registry, const std::filesystem::path& file) {
  Json doc = Json::object();
  for (Id id = 0; id < registry.size(); ++id) doc[std::to_string(id)] = registry.entity(id);
  write_json(file, doc);
}

void save_mappings(const Registries& registries, const std::filesystem::path& out_dir) {
  save_mapping(registries.commits, out_dir / kCommitMapFile);
  save_mapping(registries.files, out_dir / kFileMapFile);
  save_mapping(registries.users, out_dir / kUserMapFile);
}

IdRegistry load_mapping(EntityKind kind, const std::filesystem::path& file) {
  Json doc = read_json(file);
  if (!doc.is_object()) fail(ErrorCode::Schema, file.string() + ": expected an object");
  std::vector<std::pair<Id, std::string>> entries;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::size_t used = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(it.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it.key().size() || !it.value().is_string())
      fail(ErrorCode::Schema, file.string() + ": bad entry " + it.key());
    entries.emplace_back(static_cast<Id>(id), it.value().get<std::string>());
  }
  std::sort(entries.begin(), entries.end());
  IdRegistry registry(kind);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != i) fail(ErrorCode::Schema, file.string() + ": ids are not dense from 0");
    registry.add(entries[i].second);
  }
  return registry;
}

}  // namespace stmine::mappers
