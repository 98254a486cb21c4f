#pragma once

#include <string>
#include <vector>

#include "gmacwt/channel.hpp"
#include "gmacwt/region.hpp"

namespace gmacwt {

/// Per-user decomposition of a rate point into secret (r_s), open (r_0)
/// and randomization (r_x) rates, with the protected fractions mu. Message
/// counts are carried as (rate, blocklength) pairs: class counts are
/// 2^{n * rate} with n * rate integral once the plan is integerized.
struct SplitPlan {
  std::vector<double> mu;    // protected fraction per user, in [delta, 1]
  std::vector<double> r_s;   // mu_k * R_k
  std::vector<double> r_0;   // (1 - mu_k) * R_k
  std::vector<double> r_x;   // randomization rate, >= 0
  double margin = 0.0;       // open-rate equality solved to C^MW - margin
  double eps_prime = 0.0;    // max per-class rounding defect (0 until integerized)
  long n = 0;                // blocklength; 0 while rates are un-rounded
  std::vector<std::string> notes;

  int num_users() const { return static_cast<int>(mu.size()); }
  std::vector<double> total_rates() const;  // R_k = r_s + r_0
};

/// Per-user power fractions for the three codebook classes, summing to 1
/// for active users (all-zero for silent users); codebook components are
/// drawn with variance lambda * P_k - eps_var_scale * P_k.
struct PowerSplit {
  std::vector<double> lambda_s, lambda_0, lambda_x;
  double eps_var_scale = 1e-6;
};

/// Find mu in [delta,1]^K and r_x >= 0 such that for every nonempty subset
/// S: sum_S mu_k R_k <= C^M_S - C^MW*_S, sum_S (R_k + r_x_k) <= C^M_S, and
/// sum_K [(1-mu_k) R_k + r_x_k] = C^MW - margin. Solved as linear
/// feasibility maximizing total slack, then the lexicographically smallest
/// optimal mu and (by the same rule) r_x. The point must be strictly inside
/// the delta-region; otherwise InfeasibleError names a violated constraint.
SplitPlan solve_split(const ChannelConfig& cfg, double delta,
                      const RatePoint& point, double margin = 0.0);

/// Round every class rate down to the n-grid (counts 2^{floor(n r)}, all
/// >= 1), then re-solve the open-rate total for r_x on the same grid.
/// Rates never increase; a nonzero rate collapsing to 0 adds an advisory
/// note. eps_prime records the largest rounding defect.
SplitPlan integerize(const SplitPlan& plan, long n);

/// Power fractions proportional to the per-user rate shares r_s:r_0:r_x;
/// zero-rate classes get lambda = 0 and silent users all zeros.
PowerSplit default_power_split(const SplitPlan& plan);

/// Re-evaluate the three constraint families on a plan against a config;
/// returns the worst violation (negative slack) across all of them, or a
/// nonnegative number when the plan is feasible. Used by tests and by
/// solve_split's own post-check.
double split_worst_violation(const ChannelConfig& cfg, double delta,
                             const SplitPlan& plan);

/// Full-set equivocation lower bound of the superposition scheme as a
/// function of the decoder residual eta: 1 - (C^MW - open_total + eta) /
/// (C^M - C^MW). With the open-rate equality solved at margin 0 this is
/// exactly 1 - eta/(C^M - C^MW), which tends to 1 as eta vanishes.
double equivocation_lower_bound(const ChannelConfig& cfg,
                                const SplitPlan& plan, double eta);

}  // namespace gmacwt
