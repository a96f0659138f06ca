#include "mirage/programmer.hpp"

#include <stdexcept>

namespace mirage {

Serial IdRegistry::acquire(Rng& rng) {
  if (static_cast<uint64_t>(used_serials_.size()) >= serial_space_) {
    throw std::runtime_error("serial space exhausted");
  }
  for (;;) {
    Serial candidate = static_cast<Serial>(rng.uniform_u64(serial_space_));
    if (used_serials_.insert(candidate).second) {
      return candidate;
    }
  }
}

EpcType IdRegistry::random_decoy_epc(Rng& rng) const {
  for (;;) {
    EpcType candidate = static_cast<EpcType>(rng.next_u64());
    if (excluded_epcs_.count(candidate) == 0) {
      return candidate;
    }
  }
}

Serial generate_unique_serial(IdRegistry& registry, Rng& rng) {
  return registry.acquire(rng);
}

Tag activate_token(const Tag& pool_tag, IdRegistry& registry, Rng& rng) {
  if (pool_tag.kind != TagKind::Honeytoken || pool_tag.active) {
    throw std::invalid_argument("activate_token: expects an inactive honeytoken");
  }
  registry.release(pool_tag.id.serial);
  Tag result = pool_tag;
  result.id.epc_type = registry.protected_epc();
  result.id.serial = registry.acquire(rng);
  result.age = 0;
  result.active = true;
  return result;
}

Tag deactivate_token(const Tag& tag, IdRegistry& registry, Rng& rng) {
  if (tag.kind != TagKind::Honeytoken || !tag.active) {
    throw std::invalid_argument("deactivate_token: expects an active honeytoken");
  }
  Tag result = tag;
  result.id.epc_type = registry.random_decoy_epc(rng);
  result.active = false;
  return result;
}

Tag reprogram_token(const Tag& tag, IdRegistry& registry, Rng& rng) {
  if (tag.kind != TagKind::Honeytoken || !tag.active) {
    throw std::invalid_argument("reprogram_token: expects an active honeytoken");
  }
  registry.release(tag.id.serial);
  Tag result = tag;
  result.id.epc_type = registry.protected_epc();
  result.id.serial = registry.acquire(rng);
  result.age = 0;
  result.active = true;
  return result;
}

}  // namespace mirage
