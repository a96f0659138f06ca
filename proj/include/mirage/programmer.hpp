#pragma once

#include <cstdint>
#include <unordered_set>

#include "mirage/core.hpp"
#include "mirage/rng.hpp"

namespace mirage {

// Registry of every serial currently written on a shelved tag, real or
// honeytoken. New identities are drawn by rejection sampling so a fresh
// serial never collides with a live one. A deactivated token keeps its
// serial reserved until the tag is programmed again.
class IdRegistry {
 public:
  explicit IdRegistry(EpcType protected_epc,
                      uint64_t serial_space = uint64_t{1} << 32)
      : protected_epc_(protected_epc), serial_space_(serial_space) {
    excluded_epcs_.insert(protected_epc);
  }

  // Additional type codes a scrambled (deactivated) token must not take,
  // e.g. the codes of other simulated products.
  void exclude_epc(EpcType epc) { excluded_epcs_.insert(epc); }

  // Draws an unused serial and registers it. Throws when the space is full.
  Serial acquire(Rng& rng);

  // Marks a specific serial as used; false if already taken.
  bool reserve(Serial serial) { return used_serials_.insert(serial).second; }

  void release(Serial serial) { used_serials_.erase(serial); }
  bool contains(Serial serial) const { return used_serials_.count(serial) != 0; }
  size_t size() const { return used_serials_.size(); }
  uint64_t serial_space() const { return serial_space_; }
  EpcType protected_epc() const { return protected_epc_; }

  // A type code distinct from the protected item and from every excluded
  // code; what a deactivated token is rewritten with.
  EpcType random_decoy_epc(Rng& rng) const;

 private:
  std::unordered_set<Serial> used_serials_;
  std::unordered_set<EpcType> excluded_epcs_;
  EpcType protected_epc_;
  uint64_t serial_space_;
};

// Registers and returns a serial not assigned to any other tag.
Serial generate_unique_serial(IdRegistry& registry, Rng& rng);

// Pool token -> live token: protected type code, fresh serial, age zero.
Tag activate_token(const Tag& pool_tag, IdRegistry& registry, Rng& rng);

// Live token -> pool token: type code scrambled so scans no longer match
// the protected item; the serial stays reserved.
Tag deactivate_token(const Tag& tag, IdRegistry& registry, Rng& rng);

// Fresh identity for a live token (deactivate + activate on the same
// physical tag); age resets, the old serial is released.
Tag reprogram_token(const Tag& tag, IdRegistry& registry, Rng& rng);

}  // namespace mirage
