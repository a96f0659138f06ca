#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mirage/channel.hpp"
#include "mirage/core.hpp"

namespace mirage {

// The ids an eavesdropping inventorier attributes to one item type after
// one scan: everything observed whose type code matches the target.
struct ObservedInventory {
  uint64_t step = 0;
  std::vector<uint64_t> ids;  // packed, sorted
};

// Inventory levels plus the sales/restocking trends inferred from
// consecutive scans. The diff sequences are one shorter than the
// inventory sequence.
struct TrendSeries {
  uint64_t first_step = 0;
  std::vector<uint64_t> inventory;
  std::vector<uint64_t> apparent_sales;
  std::vector<uint64_t> apparent_restock;
};

ObservedInventory filter_observation(const ScanResult& scan_result,
                                     const ItemType& target);

// Set-difference reading of two consecutive inventories:
// sales = ids that vanished, restock = ids that appeared.
std::pair<uint64_t, uint64_t> diff_scans(const ObservedInventory& prev,
                                         const ObservedInventory& cur);

TrendSeries build_series(std::span<const ObservedInventory> observations);

}  // namespace mirage
