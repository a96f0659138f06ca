#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace mirage {

using EpcType = uint32_t;  // object-type code (high 32 bits of a tag id)
using Serial = uint32_t;   // per-object identifier (low 32 bits)

// A shelf tag identity: 32-bit object-type code plus 32-bit serial,
// packed into one 64-bit value for the wire/scan representation.
struct TagId {
  EpcType epc_type = 0;
  Serial serial = 0;

  friend bool operator==(const TagId&, const TagId&) = default;
};

constexpr uint64_t pack_tag_id(EpcType epc_type, Serial serial) {
  return (static_cast<uint64_t>(epc_type) << 32) | static_cast<uint64_t>(serial);
}

constexpr uint64_t pack_tag_id(const TagId& id) {
  return pack_tag_id(id.epc_type, id.serial);
}

constexpr TagId unpack_tag_id(uint64_t packed) {
  return TagId{static_cast<EpcType>(packed >> 32),
               static_cast<Serial>(packed & 0xffffffffull)};
}

enum class TagKind : uint8_t { Real, Honeytoken };

// One physical tag on the shelf. `age` counts scan steps since placement
// or last reprogram; real tags are always active.
struct Tag {
  TagId id;
  TagKind kind = TagKind::Real;
  uint32_t age = 0;
  bool active = true;
};

struct ItemType {
  EpcType epc_type = 0;
  std::string label;
};

// Everything physically present on one shelf: the real item tags, the
// honeytokens currently carrying the protected type code, and the
// deactivated honeytokens (still present, carrying scrambled codes).
struct ShelfState {
  ItemType item_type;
  std::vector<Tag> real_tags;      // front = oldest (removed first on sales)
  std::vector<Tag> active_tokens;
  std::vector<Tag> inactive_pool;

  size_t total_tag_count() const {
    return real_tags.size() + active_tokens.size() + inactive_pool.size();
  }

  size_t honeytoken_count() const {
    return active_tokens.size() + inactive_pool.size();
  }

  // Global serial disjointness across all three sets.
  bool serials_distinct() const {
    std::unordered_set<Serial> seen;
    seen.reserve(total_tag_count());
    auto add_all = [&seen](const std::vector<Tag>& tags) {
      for (const Tag& t : tags) {
        if (!seen.insert(t.id.serial).second) return false;
      }
      return true;
    };
    return add_all(real_tags) && add_all(active_tokens) && add_all(inactive_pool);
  }
};

}  // namespace mirage
