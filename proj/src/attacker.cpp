#include "mirage/attacker.hpp"

#include <algorithm>
#include <stdexcept>

namespace mirage {

ObservedInventory filter_observation(const ScanResult& scan_result,
                                     const ItemType& target) {
  ObservedInventory out;
  out.step = scan_result.step;
  for (uint64_t packed : scan_result.observed) {
    if (unpack_tag_id(packed).epc_type == target.epc_type) {
      out.ids.push_back(packed);
    }
  }
  return out;
}

std::pair<uint64_t, uint64_t> diff_scans(const ObservedInventory& prev,
                                         const ObservedInventory& cur) {
  if (prev.step >= cur.step) {
    throw std::invalid_argument("diff_scans: observations out of order");
  }
  std::vector<uint64_t> gone;
  std::set_difference(prev.ids.begin(), prev.ids.end(), cur.ids.begin(),
                      cur.ids.end(), std::back_inserter(gone));
  std::vector<uint64_t> added;
  std::set_difference(cur.ids.begin(), cur.ids.end(), prev.ids.begin(),
                      prev.ids.end(), std::back_inserter(added));
  return {gone.size(), added.size()};
}

TrendSeries build_series(std::span<const ObservedInventory> observations) {
  TrendSeries series;
  if (observations.empty()) return series;
  series.first_step = observations.front().step;
  series.inventory.reserve(observations.size());
  for (const ObservedInventory& obs : observations) {
    series.inventory.push_back(obs.ids.size());
  }
  for (size_t i = 1; i < observations.size(); ++i) {
    auto [sales, restock] = diff_scans(observations[i - 1], observations[i]);
    series.apparent_sales.push_back(sales);
    series.apparent_restock.push_back(restock);
  }
  return series;
}

}  // namespace mirage
