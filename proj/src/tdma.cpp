#include "gmacwt/tdma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmacwt/errors.hpp"

namespace gmacwt {

TimeShare::TimeShare(std::vector<double> a) : alpha(std::move(a)) {
  double total = 0.0;
  for (double v : alpha) {
    if (!(v >= 0.0 && v <= 1.0 + 1e-12))
      throw std::domain_error("TimeShare: entries must lie in [0,1]");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("TimeShare: entries must sum to 1");
}

namespace {

// Rate bound for one user at share a; a <= 0 yields 0 by continuity.
double user_bound(const ChannelConfig& cfg, double delta, int k, double a) {
  if (a <= 0.0) return 0.0;
  const double main_rate =
      a * shannon_capacity(cfg.p_max[k] / (a * cfg.sigma1_sq));
  if (delta == 0.0) return main_rate;
  const double tap_rate = a * shannon_capacity(
      cfg.p_max[k] / (a * (cfg.sigma1_sq + cfg.sigma2_sq)));
  return std::min(main_rate, (main_rate - tap_rate) / delta);
}

double sum_raw(const ChannelConfig& cfg, double delta,
               const std::vector<double>& alpha) {
  double total = 0.0;
  for (int k = 0; k < cfg.num_users; ++k)
    total += user_bound(cfg, delta, k, alpha[k]);
  return total;
}

// Enumerate all compositions of `resolution` into K nonnegative parts and
// keep the best sum; ties prefer the lexicographically smaller alpha.
void grid_search(const ChannelConfig& cfg, double delta, int resolution,
                 std::vector<double>& best_alpha, double& best_value) {
  const int k = cfg.num_users;
  std::vector<int> parts(k, 0);
  std::vector<double> alpha(k);
  auto visit = [&]() {
    for (int i = 0; i < k; ++i)
      alpha[i] = static_cast<double>(parts[i]) / resolution;
    const double value = sum_raw(cfg, delta, alpha);
    if (value > best_value + 1e-15 ||
        (std::abs(value - best_value) <= 1e-15 && alpha < best_alpha)) {
      best_value = value;
      best_alpha = alpha;
    }
  };
  auto recurse = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == k - 1) {
      parts[idx] = remaining;
      visit();
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[idx] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  recurse(recurse, 0, resolution);
}

}  // namespace

RatePoint tdma_rate_bounds(const ChannelConfig& cfg, double delta,
                           const TimeShare& alpha) {
  cfg.validate();
  SecrecyLevel level(delta);
  if (static_cast<int>(alpha.alpha.size()) != cfg.num_users)
    throw std::invalid_argument("tdma_rate_bounds: time share dimension");
  std::vector<double> rates(cfg.num_users);
  for (int k = 0; k < cfg.num_users; ++k)
    rates[k] = user_bound(cfg, level.value, k, alpha.alpha[k]);
  return RatePoint(rates);
}

TdmaOptimum tdma_sum_optimize(const ChannelConfig& cfg, double delta,
                              int grid_resolution) {
  cfg.validate();
  SecrecyLevel level(delta);
  if (grid_resolution < 2)
    throw std::invalid_argument("grid_resolution must be >= 2");
  const int k = cfg.num_users;

  std::vector<double> alpha(k, 0.0);
  alpha[k - 1] = 1.0;
  double value = sum_raw(cfg, level.value, alpha);
  if (k > 1) grid_search(cfg, level.value, grid_resolution, alpha, value);

  // Pairwise mass transfers with step halving; deterministic scan order.
  // Only strict improvements are accepted here (ties already broke toward
  // the lexicographically smaller share during the grid phase; accepting
  // ties at small steps would walk forever on the flat top of the
  // objective).
  double step = 1.0 / grid_resolution;
  while (step > 1e-9) {
    bool improved = false;
    for (int i = 0; i < k && k > 1; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        const double take = std::min(step, alpha[j]);
        if (take <= 0.0 || alpha[i] + take > 1.0 + 1e-15) continue;
        std::vector<double> cand(alpha);
        cand[i] += take;
        cand[j] -= take;
        if (cand[j] < 1e-15) cand[j] = 0.0;
        const double cand_value = sum_raw(cfg, level.value, cand);
        if (cand_value > value + 1e-15) {
          alpha = cand;
          value = cand_value;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  // Exact simplex closure before handing the share back out.
  double head = 0.0;
  for (int i = 0; i + 1 < k; ++i) head += alpha[i];
  alpha[k - 1] = std::max(0.0, 1.0 - head);

  TdmaOptimum opt;
  opt.alpha = TimeShare(alpha);
  opt.sum_rate = sum_raw(cfg, level.value, opt.alpha.alpha);
  return opt;
}

std::vector<RatePoint> tdma_boundary_sample(const ChannelConfig& cfg,
                                            double delta, int num_samples) {
  cfg.validate();
  if (cfg.num_users != 2)
    throw SizeCapError("tdma_boundary_sample supports K = 2 only");
  if (num_samples < 2)
    throw std::invalid_argument("num_samples must be >= 2");
  std::vector<RatePoint> points;
  points.reserve(num_samples);
  for (int i = 0; i < num_samples; ++i) {
    const double a1 = static_cast<double>(i) / (num_samples - 1);
    points.push_back(tdma_rate_bounds(cfg, delta, TimeShare({a1, 1.0 - a1})));
  }
  return points;
}

}  // namespace gmacwt
