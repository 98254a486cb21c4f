#pragma once

// Shared fixtures for the test binaries: the two-user reference channel,
// frozen high-precision expectations, and deterministic random generators.

#include <cmath>
#include <vector>

#include "gmacwt/channel.hpp"
#include "gmacwt/region.hpp"
#include "gmacwt/rng.hpp"

namespace testsupport {

inline gmacwt::ChannelConfig fig2_config() {
  gmacwt::ChannelConfig cfg;
  cfg.num_users = 2;
  cfg.p_max = {10.0, 5.0};
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 2.0;
  return cfg;
}

// Frozen expectations for the reference channel, evaluated from the closed
// forms at high precision.
constexpr double kCapMain1 = 1.7297158093186487;     // C(10)
constexpr double kCapMain2 = 1.292481250360578;      // C(5)
constexpr double kCapWt1 = 1.057738608709968;        // C(10/3)
constexpr double kCapWt12 = 1.292481250360578;       // C(15/3)
constexpr double kCapWtStar1 = 0.5849625007211562;   // C(10/8)
constexpr double kCapWtStar2 = 0.2347426416506101;   // C(5/13)
constexpr double kSec1_1 = 1.1447533085974926;
constexpr double kSec1_2 = 1.0577386087099678;
constexpr double kSec1_12 = 0.707518749639422;
constexpr double kSec05Sum = 1.415037499278844;
constexpr double kPhiExample = 0.792481250360578;    // (1/2) log2 3
constexpr double kGapFig2 = 0.08496250072115619;     // (1/2) log2 1.125
constexpr double kPentagonR2 = 0.27028419068135134;  // 2 - C(10)
constexpr double kCornerX = 0.12255624891826589;
constexpr double kTdmaHalfR1 = 0.36342949186072593;  // (1/4) log2 (63/23)
constexpr double kTdmaHalfR2 = 0.3359886003043403;   // (1/4) log2 (33/13)
constexpr double kTdmaLegR1 = 0.6719772006086808;    // C(10) - C(10/3)
constexpr double kHalfLog2_51 = 2.8362126709857476;
constexpr double kHalfLog2_3 = 0.792481250360578;
constexpr double kH2_01 = 0.4689955935892812;        // binary entropy of 0.1
constexpr double kFig3Csum = 1.2382190219714935;     // sigma2^2 = 7
constexpr double kFig4Csum = 1.6111962106682238;     // sigma2^2 = 20

inline gmacwt::ChannelConfig random_config(gmacwt::NormalRng& rng,
                                           int max_users = 3,
                                           double min_sigma2 = 0.3) {
  gmacwt::ChannelConfig cfg;
  cfg.num_users = 1 + static_cast<int>(rng.uniform_below(max_users));
  for (int k = 0; k < cfg.num_users; ++k)
    cfg.p_max.push_back(0.2 + 29.8 * rng.uniform01());
  cfg.sigma1_sq = 0.2 + 4.8 * rng.uniform01();
  cfg.sigma2_sq = min_sigma2 + 24.7 * rng.uniform01();
  return cfg;
}

// Random convex combination of the region's vertices pulled toward the
// origin; resamples until strictly interior.
inline gmacwt::RatePoint random_interior_point(const gmacwt::RateRegion& region,
                                               gmacwt::NormalRng& rng) {
  const std::vector<gmacwt::RatePoint> vertices =
      gmacwt::enumerate_vertices(region);
  const int k = region.num_users();
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> weights(vertices.size());
    double total = 0.0;
    for (double& w : weights) {
      w = rng.uniform01();
      total += w;
    }
    std::vector<double> rates(k, 0.0);
    const double shrink = 0.1 + 0.75 * rng.uniform01();
    for (std::size_t v = 0; v < vertices.size(); ++v)
      for (int i = 0; i < k; ++i)
        rates[i] += vertices[v].rates[i] * weights[v] / total * shrink;
    gmacwt::RatePoint point(rates);
    if (gmacwt::contains(region, point).min_slack > 1e-6) return point;
  }
  return gmacwt::RatePoint(std::vector<double>(k, 0.0));
}

}  // namespace testsupport
