#pragma once

#include <vector>

#include "gmacwt/channel.hpp"
#include "gmacwt/region.hpp"

namespace gmacwt {

/// Time-share vector over the simplex: entries in [0,1], summing to 1
/// within 1e-12.
struct TimeShare {
  std::vector<double> alpha;

  TimeShare() = default;
  explicit TimeShare(std::vector<double> a);
};

/// Per-user maximum rates of the time-division scheme at a given share:
/// user k transmits a fraction alpha_k of the time at power P_k/alpha_k,
/// bounded by both its single-user secrecy rate (scaled by 1/delta) and
/// its single-user channel rate. alpha_k = 0 yields rate 0 by continuity.
RatePoint tdma_rate_bounds(const ChannelConfig& cfg, double delta,
                           const TimeShare& alpha);

struct TdmaOptimum {
  TimeShare alpha;
  double sum_rate = 0.0;
};

/// Maximize the TDMA sum rate over the simplex: deterministic grid search
/// followed by pairwise coordinate descent with step halving to 1e-9.
/// Ties break toward the lexicographically smaller alpha.
TdmaOptimum tdma_sum_optimize(const ChannelConfig& cfg, double delta,
                              int grid_resolution);

/// Corner points of the two-user TDMA union sampled along alpha_1 in [0,1];
/// the upper boundary used for plotting. K != 2 throws SizeCapError.
std::vector<RatePoint> tdma_boundary_sample(const ChannelConfig& cfg,
                                            double delta, int num_samples);

}  // namespace gmacwt
