#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "mirage/channel.hpp"

using namespace mirage;

namespace {

ShelfState shelf_with_tags(size_t n_real, size_t n_tokens) {
  ShelfState shelf;
  shelf.item_type = {0xAB, "widget"};
  Serial next = 1;
  for (size_t i = 0; i < n_real; ++i) {
    shelf.real_tags.push_back({{0xAB, next++}, TagKind::Real, 0, true});
  }
  for (size_t i = 0; i < n_tokens; ++i) {
    shelf.active_tokens.push_back({{0xAB, next++}, TagKind::Honeytoken, 0, true});
  }
  return shelf;
}

}  // namespace

TEST_CASE("read probability matches the calibration anchors") {
  ChannelParams params;
  CHECK(read_probability(150, params) == doctest::Approx(0.82).epsilon(1e-9));
  CHECK(read_probability(450, params) == doctest::Approx(0.56).epsilon(1e-9));
  CHECK(read_probability(0, params) == doctest::Approx(0.82));

  SUBCASE("non-increasing in the tag count") {
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
      uint64_t a = rng.uniform_u64(2000);
      uint64_t b = a + rng.uniform_u64(500);
      CHECK(read_probability(a, params) >= read_probability(b, params));
    }
  }

  SUBCASE("floor probability holds for huge shelves") {
    CHECK(read_probability(1000000, params) == doctest::Approx(0.10));
  }
}

TEST_CASE("channel parameter validation names the bad field") {
  ChannelParams params;
  params.min_read_probability = 0.9;  // above base
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = ChannelParams{};
  params.read_latency_low_ms = 200;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("scan extremes") {
  Rng rng(77);
  ShelfState shelf = shelf_with_tags(10, 5);

  SUBCASE("perfect channel reads everything") {
    auto result = scan(shelf, ChannelParams::perfect(), 3, rng);
    CHECK(result.observed.size() == 15);
    CHECK(result.missed == 0);
    CHECK(result.step == 3);
    CHECK(result.honeytoken_read_latencies_ms.size() == 5);
  }

  SUBCASE("dead channel reads nothing") {
    ChannelParams dead;
    dead.base_read_probability = 0.0;
    dead.min_read_probability = 0.0;
    auto result = scan(shelf, dead, 0, rng);
    CHECK(result.observed.empty());
    CHECK(result.missed == 15);
  }
}

TEST_CASE("scan cardinality tracks the binomial expectation") {
  // 450 tags at defaults: p = 0.56, expectation 252.
  ShelfState shelf = shelf_with_tags(450, 0);
  ChannelParams params;
  double total = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(Rng::derive(4040, static_cast<uint64_t>(s)));
    total += static_cast<double>(scan(shelf, params, 0, rng).observed.size());
  }
  double mean = total / seeds;
  double sigma_mean = std::sqrt(450 * 0.56 * 0.44) / std::sqrt(seeds);
  CHECK(std::fabs(mean - 252.0) <= 3.0 * sigma_mean);
}

TEST_CASE("scan outcomes are independent across tags") {
  ShelfState shelf = shelf_with_tags(2, 0);
  ChannelParams params;
  params.base_read_probability = 0.5;
  params.min_read_probability = 0.5;

  const int n = 20000;
  double sum_a = 0, sum_b = 0, sum_ab = 0;
  for (int s = 0; s < n; ++s) {
    Rng rng(Rng::derive(99, static_cast<uint64_t>(s)));
    auto result = scan(shelf, params, 0, rng);
    bool a = false, b = false;
    for (uint64_t id : result.observed) {
      if (unpack_tag_id(id).serial == 1) a = true;
      if (unpack_tag_id(id).serial == 2) b = true;
    }
    sum_a += a;
    sum_b += b;
    sum_ab += a && b;
  }
  double pa = sum_a / n, pb = sum_b / n, pab = sum_ab / n;
  double covariance = pab - pa * pb;
  CHECK(std::fabs(covariance) < 0.01);
}

TEST_CASE("latency samplers respect their bounds") {
  ChannelParams params;
  Rng rng(123);

  double read_sum = 0, write_sum = 0;
  for (int i = 0; i < 10000; ++i) {
    double r = sample_read_latency(params, rng);
    CHECK(r >= 10.0);
    CHECK(r < 150.0);
    read_sum += r;
    double w = sample_write_latency(params, rng);
    CHECK(w >= 90.0);
    CHECK(w <= 350.0);
    write_sum += w;
  }
  CHECK(std::fabs(read_sum / 10000 - 80.0) < 3.0);
  CHECK(std::fabs(write_sum / 10000 - 220.0) < 5.0);

  SUBCASE("degenerate bounds are constant") {
    ChannelParams fixed;
    fixed.read_latency_low_ms = 50;
    fixed.read_latency_high_ms = 50;
    for (int i = 0; i < 100; ++i) {
      CHECK(sample_read_latency(fixed, rng) == doctest::Approx(50.0));
    }
  }
}
