#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gmacwt/errors.hpp"
#include "gmacwt/region.hpp"
#include "gmacwt/rng.hpp"
#include "support.hpp"

using namespace gmacwt;
using namespace testsupport;

namespace {

const UserSet kU1 = UserSet::single(0);
const UserSet kU2 = UserSet::single(1);
const UserSet kBoth = UserSet::full(2);

bool has_vertex(const std::vector<RatePoint>& vertices,
                const std::vector<double>& expected, double tol = 1e-9) {
  for (const RatePoint& v : vertices) {
    bool match = true;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (std::abs(v.rates[i] - expected[i]) > tol) match = false;
    if (match) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("gmac region bounds and membership") {
  const RateRegion region = build_gmac_region(fig2_config());
  CHECK(region.halfspaces.size() == 6);
  CHECK(region.at(ConstraintFamily::kMac, kU1).bound ==
        doctest::Approx(kCapMain1).epsilon(1e-12));
  CHECK(region.at(ConstraintFamily::kMac, kU2).bound ==
        doctest::Approx(kCapMain2).epsilon(1e-12));
  CHECK(region.at(ConstraintFamily::kMac, kBoth).bound ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(region.at(ConstraintFamily::kSecrecy, kBoth).bound));

  CHECK(contains(region, RatePoint({1.0, 0.9})).inside);
  CHECK_FALSE(contains(region, RatePoint({1.7, 1.2})).inside);
  CHECK(contains(region, RatePoint({0.0, 0.0})).inside);
  CHECK_THROWS_AS(contains(region, RatePoint({0.1})), std::invalid_argument);
}

TEST_CASE("gaussian region secrecy bounds") {
  const ChannelConfig cfg = fig2_config();
  const RateRegion d1 = build_gaussian_region(cfg, 1.0);
  CHECK(d1.at(ConstraintFamily::kSecrecy, kU1).bound ==
        doctest::Approx(kSec1_1).epsilon(1e-12));
  CHECK(d1.at(ConstraintFamily::kSecrecy, kU2).bound ==
        doctest::Approx(kSec1_2).epsilon(1e-12));
  CHECK(d1.at(ConstraintFamily::kSecrecy, kBoth).bound ==
        doctest::Approx(kSec1_12).epsilon(1e-12));

  const RateRegion d05 = build_gaussian_region(cfg, 0.5);
  CHECK(d05.at(ConstraintFamily::kSecrecy, kBoth).bound ==
        doctest::Approx(kSec05Sum).epsilon(1e-12));

  // delta = 0 coincides with the plain MAC region
  const RateRegion d0 = build_gaussian_region(cfg, 0.0);
  const RateRegion mac = build_gmac_region(cfg);
  REQUIRE(d0.halfspaces.size() == mac.halfspaces.size());
  for (std::size_t i = 0; i < d0.halfspaces.size(); ++i) {
    CHECK(d0.halfspaces[i].subset.mask == mac.halfspaces[i].subset.mask);
    if (std::isinf(d0.halfspaces[i].bound))
      CHECK(std::isinf(mac.halfspaces[i].bound));
    else
      CHECK(d0.halfspaces[i].bound == mac.halfspaces[i].bound);
  }
}

TEST_CASE("membership of the perfect secrecy region") {
  const RateRegion region = build_gaussian_region(fig2_config(), 1.0);
  CHECK(contains(region, RatePoint({0.3, 0.3})).inside);
  const ContainmentReport outside = contains(region, RatePoint({0.5, 0.5}));
  CHECK_FALSE(outside.inside);
  REQUIRE(outside.tightest.has_value());
  CHECK(outside.tightest->subset.mask == kBoth.mask);
  CHECK(outside.tightest->family == ConstraintFamily::kSecrecy);
  CHECK(contains(region, RatePoint({0.0, 0.0})).inside);
}

TEST_CASE("sum capacity") {
  const ChannelConfig cfg = fig2_config();
  CHECK(sum_capacity(cfg, 1.0) == doctest::Approx(kSec1_12).epsilon(1e-12));
  CHECK(sum_capacity(cfg, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sum_capacity(cfg, 0.5) == doctest::Approx(kSec05Sum).epsilon(1e-12));
}

TEST_CASE("sum capacity equals the full-set region bound") {
  NormalRng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const ChannelConfig cfg = random_config(rng, 4, 0.0);
    for (double delta : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      const RateRegion region = build_gaussian_region(cfg, delta);
      const UserSet full = UserSet::full(cfg.num_users);
      const double mac = region.at(ConstraintFamily::kMac, full).bound;
      const double sec = region.at(ConstraintFamily::kSecrecy, full).bound;
      CHECK(std::abs(sum_capacity(cfg, delta) - std::min(mac, sec)) <= 1e-12);
    }
  }
}

TEST_CASE("vertex enumeration on the reference channel") {
  const ChannelConfig cfg = fig2_config();

  const auto d1 = enumerate_vertices(build_gaussian_region(cfg, 1.0));
  REQUIRE(d1.size() == 3);
  CHECK(has_vertex(d1, {0.0, 0.0}));
  CHECK(has_vertex(d1, {kSec1_12, 0.0}));
  CHECK(has_vertex(d1, {0.0, kSec1_12}));

  const auto d05 = enumerate_vertices(build_gaussian_region(cfg, 0.5));
  REQUIRE(d05.size() == 4);
  CHECK(has_vertex(d05, {0.0, 0.0}));
  CHECK(has_vertex(d05, {kSec05Sum, 0.0}));
  CHECK(has_vertex(d05, {kCornerX, kCapMain2}));
  CHECK(has_vertex(d05, {0.0, kCapMain2}));

  const auto d0 = enumerate_vertices(build_gmac_region(cfg));
  REQUIRE(d0.size() == 5);
  CHECK(has_vertex(d0, {kCapMain1, kPentagonR2}));
  CHECK(has_vertex(d0, {kSec1_12, kCapMain2}));
  CHECK(has_vertex(d0, {kCapMain1, 0.0}));

  // lexicographic output order
  for (std::size_t i = 1; i < d0.size(); ++i)
    CHECK(d0[i - 1].rates < d0[i].rates);
}

TEST_CASE("every vertex is contained and lies on >= K constraints") {
  NormalRng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelConfig cfg = random_config(rng, 3);
    const double delta = rng.uniform01();
    const RateRegion region = build_gaussian_region(cfg, delta);
    for (const RatePoint& v : enumerate_vertices(region)) {
      CHECK(contains(region, v, 1e-9).inside);
      int active = 0;
      for (int i = 0; i < cfg.num_users; ++i)
        if (v.rates[i] <= 1e-9) ++active;
      for (const Halfspace& h : region.halfspaces) {
        if (std::isinf(h.bound)) continue;
        double total = 0.0;
        for (int i = 0; i < cfg.num_users; ++i)
          if (h.subset.contains(i)) total += v.rates[i];
        if (std::abs(total - h.bound) <= 1e-9) ++active;
      }
      CHECK(active >= cfg.num_users);
    }
  }
}

TEST_CASE("four users enumerate fully") {
  ChannelConfig cfg;
  cfg.num_users = 4;
  cfg.p_max = {10.0, 5.0, 3.0, 1.0};
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 2.0;
  const RateRegion region = build_gaussian_region(cfg, 0.5);
  CHECK(region.halfspaces.size() == 30);
  const auto vertices = enumerate_vertices(region);
  CHECK(vertices.size() >= 5);
  for (const RatePoint& v : vertices) CHECK(contains(region, v, 1e-9).inside);
}

TEST_CASE("vertex enumeration refuses K > 4") {
  ChannelConfig cfg;
  cfg.num_users = 5;
  cfg.p_max = {1, 1, 1, 1, 1};
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 1.0;
  CHECK_THROWS_AS(enumerate_vertices(build_gmac_region(cfg)), SizeCapError);
}

TEST_CASE("halfspace materialization refuses absurd user counts") {
  ChannelConfig cfg;
  cfg.num_users = 24;
  cfg.p_max.assign(24, 1.0);
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 1.0;
  CHECK_THROWS_AS(build_gmac_region(cfg), SizeCapError);
}

TEST_CASE("region subset relations") {
  const ChannelConfig cfg = fig2_config();
  const RateRegion d1 = build_gaussian_region(cfg, 1.0);
  const RateRegion d05 = build_gaussian_region(cfg, 0.5);
  const RateRegion d0 = build_gmac_region(cfg);

  CHECK(region_subset(d1, d1));
  CHECK(region_subset(d1, d05));
  CHECK_FALSE(region_subset(d0, d1));
}

TEST_CASE("regions shrink as delta grows") {
  NormalRng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const ChannelConfig cfg = random_config(rng, 3);
    const double d_lo = 0.8 * rng.uniform01();
    const double d_hi = d_lo + (1.0 - d_lo) * rng.uniform01();
    const RateRegion big = build_gaussian_region(cfg, d_lo);
    const RateRegion small = build_gaussian_region(cfg, d_hi);
    CHECK(region_subset(small, big));
  }
}

TEST_CASE("generic outer bound reduces to the gaussian region") {
  const ChannelConfig cfg = fig2_config();
  const RateRegion generic =
      build_generic_outer(cfg, 1.0, EntropyProfile::gaussian_max(cfg));
  const RateRegion gaussian = build_gaussian_region(cfg, 1.0);
  for (std::size_t i = 0; i < generic.halfspaces.size(); ++i)
    CHECK(std::abs(generic.halfspaces[i].bound -
                   gaussian.halfspaces[i].bound) <= 1e-12);
}

TEST_CASE("generic outer bound with degenerate profiles") {
  const ChannelConfig cfg = fig2_config();

  // vanishing codeword entropy: the inner capacity term drops out
  EntropyProfile tiny;
  tiny.h_rates = {-1e6, -1e6};
  const RateRegion wide = build_generic_outer(cfg, 1.0, tiny);
  CHECK(wide.at(ConstraintFamily::kSecrecy, kBoth).bound ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(wide.at(ConstraintFamily::kSecrecy, kU1).bound ==
        doctest::Approx(kCapMain1).epsilon(1e-9));

  // profile above the Gaussian maximum is rejected
  EntropyProfile hot = EntropyProfile::gaussian_max(cfg);
  hot.h_rates[0] += 0.1;
  CHECK_THROWS_AS(build_generic_outer(cfg, 1.0, hot), std::domain_error);
}

TEST_CASE("generic outer bound cross-check with modified powers") {
  // profile with entropy of a (5,5)-power Gaussian: the full-set bound must
  // match a gaussian-region build whose powers enter only the inner term
  const ChannelConfig cfg = fig2_config();
  constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
  EntropyProfile profile;
  profile.h_rates = {0.5 * std::log2(kTwoPiE * 5.0),
                     0.5 * std::log2(kTwoPiE * 5.0)};
  const RateRegion region = build_generic_outer(cfg, 1.0, profile);
  const double expected =
      main_capacity(cfg, kBoth) - shannon_capacity(10.0 / 3.0);
  CHECK(region.at(ConstraintFamily::kSecrecy, kBoth).bound ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sigma2 to infinity: perfect secrecy meets the MAC region") {
  ChannelConfig cfg = fig2_config();
  cfg.sigma2_sq = 1e9;
  const auto secret = enumerate_vertices(build_gaussian_region(cfg, 1.0));
  const auto open = enumerate_vertices(build_gmac_region(cfg));
  REQUIRE(secret.size() == open.size());
  for (const RatePoint& v : secret) {
    bool matched = false;
    for (const RatePoint& w : open) {
      bool close = true;
      for (int i = 0; i < 2; ++i)
        if (std::abs(v.rates[i] - w.rates[i]) > 1e-3) close = false;
      if (close) matched = true;
    }
    CHECK(matched);
  }
}

TEST_CASE("power to infinity: sum capacity saturates at the noise ratio") {
  ChannelConfig cfg;
  cfg.num_users = 2;
  cfg.p_max = {1e9, 1e9};
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 2.0;
  CHECK(std::abs(sum_capacity(cfg, 1.0) - kHalfLog2_3) < 1e-3);
}

TEST_CASE("sigma2 = 0 collapses the secrecy region") {
  ChannelConfig cfg = fig2_config();
  cfg.sigma2_sq = 0.0;
  const RateRegion region = build_gaussian_region(cfg, 1.0);
  CHECK(region.at(ConstraintFamily::kSecrecy, kBoth).bound ==
        doctest::Approx(0.0).epsilon(1e-12));
  const auto vertices = enumerate_vertices(region);
  REQUIRE(vertices.size() == 1);
  CHECK(vertices[0].rates == std::vector<double>{0.0, 0.0});
}
