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


#include "git/object_store.hpp"

#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace stmine::git {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kCacheBudget = 256u << 20;
constexpr std::size_t kDeltaBaseBudget = 64u << 20;

[[noreturn]] void corrupt(const std::string& what) {
  fail(ErrorCode::CorruptObject, what);
}

class MappedFile {
 public:
  explicit MappedFile(const fs::path& path) {
    int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) fail(ErrorCode::Io, "cannot open " + path.string());
    struct stat st {};
    if (::fstat(fd, &st) != 0) {
      ::close(fd);
      fail(ErrorCode::Io, "cannot stat " + path.string());
    }
    size_ = static_cast<std::size_t>(st.st_size);
    if (size_ > 0) {
      void* p = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd, 0);
      if (p == MAP_FAILED) {
        ::close(fd);
        fail(ErrorCode::Io, "cannot map " + path.string());
      }
      data_ = static_cast<const std::uint8_t*>(p);
    }
    ::close(fd);
  }
  ~MappedFile() {
    if (data_) ::munmap(const_cast<std::uint8_t*>(data_), size_);
  }
  MappedFile(const MappedFile&) = delete;
  MappedFile& operator=(const MappedFile&) = delete;

  const std::uint8_t* data() const noexcept { return data_; }
  std::size_t size() const noexcept { return size_; }

 private:
  const std::uint8_t* data_ = nullptr;
  std::size_t size_ = 0;
};

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

// Inflates a zlib stream of known decompressed size.
std::string inflate_exact(const std::uint8_t* src, std::size_t avail, std::size_t size) {
  std::string out(size, '\0');
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) corrupt("zlib init failed");
  zs.next_in = const_cast<Bytef*>(src);
  zs.avail_in = static_cast<uInt>(std::min<std::size_t>(avail, UINT32_MAX));
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(size);
  int rc = Z_OK;
  // An empty output buffer still needs one call to consume the stream end.
  std::uint8_t scratch = 0;
  if (size == 0) {
    zs.next_out = &scratch;
    zs.avail_out = 1;
  }
  rc = inflate(&zs, Z_FINISH);
  std::size_t produced = size == 0 ? 1 - zs.avail_out : size - zs.avail_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != size) corrupt("truncated or oversized zlib stream");
  return out;
}

std::string inflate_all(const std::string& compressed) {
  std::string out;
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) corrupt("zlib init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  char buf[16384];
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      corrupt("bad zlib stream in loose object");
    }
    out.append(buf, sizeof buf - zs.avail_out);
  } while (rc != Z_STREAM_END && zs.avail_in > 0);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) corrupt("truncated loose object");
  return out;
}

std::optional<ObjectType> type_from_name(std::string_view name) {
  if (name == "commit") return ObjectType::Commit;
  if (name == "tree") return ObjectType::Tree;
  if (name == "blob") return ObjectType::Blob;
  if (name == "tag") return ObjectType::Tag;
  return std::nullopt;
}

std::uint64_t delta_varint(std::string_view delta, std::size_t& pos) {
  std::uint64_t value = 0;
  int shift = 0;
  while (true) {
    if (pos >= delta.size()) corrupt("truncated delta header");
    auto c = static_cast<std::uint8_t>(delta[pos++]);
    value |= std::uint64_t{c & 0x7fu} << shift;
    shift += 7;
    if (!(c & 0x80)) break;
  }
  return value;
}

}  // namespace

std::string apply_delta(std::string_view base, std::string_view delta) {
  std::size_t pos = 0;
  auto base_size = delta_varint(delta, pos);
  auto result_size = delta_varint(delta, pos);
  if (base_size != base.size()) corrupt("delta base size mismatch");
  std::string out;
  out.reserve(result_size);
  while (pos < delta.size()) {
    auto cmd = static_cast<std::uint8_t>(delta[pos++]);
    if (cmd & 0x80) {
      std::uint64_t offset = 0, size = 0;
      for (int i = 0; i < 4; ++i)
        if (cmd & (1u << i)) {
          if (pos >= delta.size()) corrupt("truncated delta copy");
          offset |= std::uint64_t{static_cast<std::uint8_t>(delta[pos++])} << (8 * i);
        }
      for (int i = 0; i < 3; ++i)
        if (cmd & (0x10u << i)) {
          if (pos >= delta.size()) corrupt("truncated delta copy");
          size |= std::uint64_t{static_cast<std::uint8_t>(delta[pos++])} << (8 * i);
        }
      if (size == 0) size = 0x10000;
      if (offset + size > base.size()) corrupt("delta copy out of range");
      out.append(base.substr(offset, size));
    } else if (cmd != 0) {
      if (pos + cmd > delta.size()) corrupt("truncated delta insert");
      out.append(delta.substr(pos, cmd));
      pos += cmd;
    } else {
      corrupt("reserved delta opcode");
    }
  }
  if (out.size() != result_size) corrupt("delta result size mismatch");
  return out;
}

class PackFile {
 public:
  PackFile(const fs::path& idx_path, const fs::path& pack_path, const ObjectStore& store)
      : idx_(idx_path), pack_(pack_path), store_(store), bases_(kDeltaBaseBudget) {
    const std::uint8_t* p = idx_.data();
    if (idx_.size() < 8 + 256 * 4 || std::memcmp(p, "\377tOc", 4) != 0 || be32(p + 4) != 2)
      corrupt("unsupported pack index " + idx_path.string());
    fanout_ = p + 8;
    count_ = be32(fanout_ + 255 * 4);
    names_ = fanout_ + 256 * 4;
    offsets_ = names_ + std::size_t{count_} * 20 + std::size_t{count_} * 4;
    large_offsets_ = offsets_ + std::size_t{count_} * 4;
    if (idx_.size() < static_cast<std::size_t>(large_offsets_ - p) + 40)
      corrupt("truncated pack index " + idx_path.string());
    if (pack_.size() < 12 || std::memcmp(pack_.data(), "PACK", 4) != 0)
      corrupt("bad pack header " + pack_path.string());
  }

  std::optional<std::uint64_t> find(const ObjectId& id) const {
    const auto& raw = id.raw();
    std::uint32_t lo = raw[0] == 0 ? 0 : be32(fanout_ + (raw[0] - 1) * 4);
    std::uint32_t hi = be32(fanout_ + raw[0] * 4);
    while (lo < hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      int c = std::memcmp(names_ + std::size_t{mid} * 20, raw.data(), 20);
      if (c == 0) return offset_at(mid);
      if (c < 0) lo = mid + 1;
      else hi = mid;
    }
    return std::nullopt;
  }

  ObjectPtr read_at(std::uint64_t offset) const {
    if (auto hit = bases_.get(offset)) return *hit;

    std::vector<Entry> chain;
    ObjectPtr base;
    std::uint64_t cursor = offset;
    while (true) {
      if (!chain.empty()) {
        if (auto hit = bases_.get(cursor)) {
          base = *hit;
          break;
        }
      }
      Entry e = parse_header(cursor);
      if (e.type == kOfsDelta) {
        cursor = resolve_ofs_base(e);
        chain.push_back(e);
      } else if (e.type == kRefDelta) {
        chain.push_back(e);
        base = store_.read(*e.ref_base);
        break;
      } else {
        base = std::make_shared<RawObject>(RawObject{static_cast<ObjectType>(e.type), inflate_at(e)});
        bases_.put(cursor, base, base->data.size());
        break;
      }
      if (chain.size() > 10000) corrupt("delta chain too deep");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      std::string delta = inflate_at(*it);
      base = std::make_shared<RawObject>(RawObject{base->type, apply_delta(base->data, delta)});
      bases_.put(it->offset, base, base->data.size());
    }
    return base;
  }

 private:
  static constexpr int kOfsDelta = 6;
  static constexpr int kRefDelta = 7;

  struct Entry {
    int type;
    std::uint64_t offset;
    std::uint64_t size;
    std::size_t data_pos;
    std::optional<ObjectId> ref_base;
  };

  std::uint64_t offset_at(std::uint32_t index) const {
    std::uint32_t off = be32(offsets_ + std::size_t{index} * 4);
    if (!(off & 0x80000000u)) return off;
    const std::uint8_t* p = large_offsets_ + std::size_t{off & 0x7fffffffu} * 8;
    return (std::uint64_t{be32(p)} << 32) | be32(p + 4);
  }

  Entry parse_header(std::uint64_t offset) const {
    if (offset >= pack_.size()) corrupt("pack offset out of range");
    const std::uint8_t* p = pack_.data();
    std::size_t pos = offset;
    std::uint8_t c = p[pos++];
    int type = (c >> 4) & 7;
    std::uint64_t size = c & 15;
    int shift = 4;
    while (c & 0x80) {
      if (pos >= pack_.size()) corrupt("truncated pack entry");
      c = p[pos++];
      size |= std::uint64_t{c & 0x7fu} << shift;
      shift += 7;
    }
    Entry e{type, offset, size, pos, std::nullopt};
    if (type == kRefDelta) {
      if (pos + 20 > pack_.size()) corrupt("truncated ref delta");
      e.ref_base = ObjectId::from_raw(p + pos);
      e.data_pos = pos + 20;
    } else if (type == 0 || type == 5) {
      corrupt("invalid pack entry type");
    }
    return e;
  }

  // Decodes the negative base offset and advances data_pos past it.
  std::uint64_t resolve_ofs_base(Entry& e) const {
    const std::uint8_t* p = pack_.data();
    std::size_t pos = e.data_pos;
    std::uint8_t c = p[pos++];
    std::uint64_t rel = c & 127;
    while (c & 128) {
      if (pos >= pack_.size()) corrupt("truncated offset delta");
      ++rel;
      c = p[pos++];
      rel = (rel << 7) + (c & 127);
    }
    if (rel > e.offset) corrupt("offset delta before pack start");
    e.data_pos = pos;
    return e.offset - rel;
  }

  std::string inflate_at(const Entry& e) const {
    return inflate_exact(pack_.data() + e.data_pos, pack_.size() - e.data_pos, e.size);
  }

  MappedFile idx_;
  MappedFile pack_;
  const ObjectStore& store_;
  const std::uint8_t* fanout_ = nullptr;
  const std::uint8_t* names_ = nullptr;
  const std::uint8_t* offsets_ = nullptr;
  const std::uint8_t* large_offsets_ = nullptr;
  std::uint32_t count_ = 0;
  mutable LruCache<std::uint64_t, ObjectPtr> bases_;
};

ObjectStore::ObjectStore(const fs::path& objects_dir) : cache_(kCacheBudget) {
  std::vector<fs::path> dirs{objects_dir};
  std::ifstream alternates(objects_dir / "info" / "alternates");
  for (std::string line; std::getline(alternates, line);) {
    if (line.empty() || line[0] == '#') continue;
    fs::path alt(line);
    if (alt.is_relative()) alt = objects_dir / alt;
    if (fs::is_directory(alt)) dirs.push_back(alt);
  }
  for (const auto& dir : dirs) {
    loose_dirs_.push_back(dir);
    std::error_code ec;
    std::vector<fs::path> idx_files;
    for (const auto& entry : fs::directory_iterator(dir / "pack", ec))
      if (entry.path().extension() == ".idx") idx_files.push_back(entry.path());
    std::sort(idx_files.begin(), idx_files.end());
    for (const auto& idx : idx_files) {
      auto pack = idx;
      pack.replace_extension(".pack");
      if (fs::exists(pack)) packs_.push_back(std::make_unique<PackFile>(idx, pack, *this));
    }
  }
}

ObjectStore::~ObjectStore() = default;

ObjectPtr ObjectStore::read(const ObjectId& id) const {
  auto obj = try_read(id);
  if (!obj) corrupt("missing object " + id.hex());
  return obj;
}

ObjectPtr ObjectStore::try_read(const ObjectId& id) const {
  if (auto hit = cache_.get(id)) return *hit;
  auto obj = read_uncached(id);
  if (obj) cache_.put(id, obj, obj->data.size() + 64);
  return obj;
}

ObjectPtr ObjectStore::read_uncached(const ObjectId& id) const {
  for (const auto& pack : packs_)
    if (auto off = pack->find(id)) return pack->read_at(*off);
  for (const auto& dir : loose_dirs_)
    if (auto obj = read_loose(dir, id)) return obj;
  return nullptr;
}

ObjectPtr ObjectStore::read_loose(const fs::path& dir, const ObjectId& id) const {
  std::string hex = id.hex();
  fs::path path = dir / hex.substr(0, 2) / hex.substr(2);
  std::ifstream in(path, std::ios::binary);
  if (!in) return nullptr;
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string raw = inflate_all(ss.str());
  auto space = raw.find(' ');
  auto nul = raw.find('\0');
  if (space == std::string::npos || nul == std::string::npos || space > nul)
    corrupt("bad loose object header " + hex);
  auto type = type_from_name(std::string_view(raw).substr(0, space));
  if (!type) corrupt("unknown object type in " + hex);
  std::size_t declared = std::stoull(raw.substr(space + 1, nul - space - 1));
  if (declared != raw.size() - nul - 1) corrupt("loose object size mismatch " + hex);
  return std::make_shared<RawObject>(RawObject{*type, raw.substr(nul + 1)});
}

}  // namespace stmine::git
