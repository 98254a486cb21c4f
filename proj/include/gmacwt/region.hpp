#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmacwt/channel.hpp"

namespace gmacwt {

/// Nonnegative per-user rate vector in bits per channel use.
struct RatePoint {
  std::vector<double> rates;

  RatePoint() = default;
  explicit RatePoint(std::vector<double> r);
  int dim() const { return static_cast<int>(rates.size()); }
  double sum() const;
};

enum class ConstraintFamily { kMac, kSecrecy };

/// One constraint: sum of rates over `subset` <= bound. A +infinity bound
/// (secrecy family at delta = 0) is kept in the system but never binds.
struct Halfspace {
  UserSet subset;
  ConstraintFamily family = ConstraintFamily::kMac;
  double bound = 0.0;
};

/// Halfspace system over every nonempty user subset in both families;
/// exactly 2*(2^K - 1) entries, MAC family first, ascending mask order.
struct RateRegion {
  ChannelConfig cfg;
  double delta = 0.0;
  std::vector<Halfspace> halfspaces;

  int num_users() const { return cfg.num_users; }
  /// The unique halfspace for (family, subset).
  const Halfspace& at(ConstraintFamily family, UserSet s) const;
};

/// Per-user codeword entropy rates h_j = (1/n) H(X_j^n) in bits/symbol,
/// used by the generic outer bound. Each h_j may not exceed the Gaussian
/// maximum 1/2 log2(2 pi e P_j).
struct EntropyProfile {
  std::vector<double> h_rates;

  static EntropyProfile gaussian_max(const ChannelConfig& cfg);
};

struct ContainmentReport {
  bool inside = false;
  double min_slack = 0.0;             // over finite-bound constraints
  std::optional<Halfspace> tightest;  // constraint attaining min_slack
  std::string describe() const;
};

/// Plain multiple-access region: MAC bounds only, secrecy bounds +infinity.
/// Identical to build_gaussian_region(cfg, 0).
RateRegion build_gmac_region(const ChannelConfig& cfg);

/// Gaussian-codebook region with secrecy level delta: MAC bounds plus
/// secrecy bounds (C^M_S - C^MW*_S)/delta (+infinity at delta = 0).
RateRegion build_gaussian_region(const ChannelConfig& cfg, double delta);

/// Generic outer bound parameterized by a per-user entropy profile; with
/// the Gaussian-max profile this reduces to build_gaussian_region.
RateRegion build_generic_outer(const ChannelConfig& cfg, double delta,
                               const EntropyProfile& profile);

/// min{ C^M_K, (C^M_K - C^MW_K)/delta }; delta = 0 returns C^M_K.
double sum_capacity(const ChannelConfig& cfg, double delta);

/// Halfspace membership within additive tolerance (default 1e-12).
ContainmentReport contains(const RateRegion& region, const RatePoint& point,
                           double tol = 1e-12);

/// All extreme points of {R >= 0} intersected with the region's halfspaces,
/// deduplicated within 1e-9 and sorted lexicographically. Supports K <= 4;
/// larger K throws SizeCapError.
std::vector<RatePoint> enumerate_vertices(const RateRegion& region);

/// True iff every vertex of `inner` lies in `outer` within `tol`.
bool region_subset(const RateRegion& inner, const RateRegion& outer,
                   double tol = 1e-9);
bool region_subset(const std::vector<RatePoint>& inner_vertices,
                   const RateRegion& outer, double tol = 1e-9);

}  // namespace gmacwt
