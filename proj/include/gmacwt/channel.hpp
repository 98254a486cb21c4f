#pragma once

#include <cstdint>
#include <vector>

namespace gmacwt {

// Bit set over users 0..K-1. User k of the K-user channel is bit k, so the
// full set for K users is mask (1<<K)-1. Constraint families range over
// nonempty sets; iteration is always by ascending mask value.
struct UserSet {
  std::uint32_t mask = 0;

  static UserSet single(int user) { return UserSet{1u << user}; }
  static UserSet full(int num_users) {
    return UserSet{num_users >= 32 ? ~0u : (1u << num_users) - 1u};
  }

  bool empty() const { return mask == 0; }
  bool contains(int user) const { return (mask >> user) & 1u; }
  int count() const { return __builtin_popcount(mask); }
  UserSet complement(int num_users) const {
    return UserSet{full(num_users).mask & ~mask};
  }
  bool operator==(const UserSet&) const = default;
};

/// K-user Gaussian multiple-access channel with a degraded eavesdropper:
/// Y = sum_k X_k + N1, Z = Y + N2, with per-user received power caps.
struct ChannelConfig {
  int num_users = 0;
  std::vector<double> p_max;   // received power cap per user, > 0
  double sigma1_sq = 0.0;      // main-channel noise variance, > 0
  double sigma2_sq = 0.0;      // extra noise seen by the eavesdropper, >= 0

  /// Throws std::domain_error when any invariant is broken.
  void validate() const;

  double total_power() const;
};

/// Required secrecy level; 1 = perfect secrecy, 0 = no constraint.
struct SecrecyLevel {
  double value = 0.0;
  explicit SecrecyLevel(double v);
};

// ---- scalar capacity / entropy-gap formulas ----
// All rates are in bits (log base 2) throughout the toolkit.

/// C(xi) = 1/2 log2(1 + xi). Throws std::domain_error for xi < 0.
double shannon_capacity(double xi);

/// Sum of p_max over the subset.
double subset_power(const ChannelConfig& cfg, UserSet s);

/// Main-receiver capacity of a nonempty user subset: C(P_S / sigma1^2).
double main_capacity(const ChannelConfig& cfg, UserSet s);

/// Eavesdropper capacity of a nonempty subset: C(P_S / (sigma1^2+sigma2^2)).
double wiretap_capacity(const ChannelConfig& cfg, UserSet s);

/// Eavesdropper capacity with the complement treated as noise:
/// C(P_S / (P_{S^c} + sigma1^2 + sigma2^2)). Equals wiretap_capacity for
/// the full set.
double wiretap_capacity_star(const ChannelConfig& cfg, UserSet s);

/// Entropy-power gap function phi(xi) = 1/2 log2[2 pi e (sigma2^2 +
/// 2^{2 xi}/(2 pi e))] - xi, evaluated in a form that is stable for large
/// xi. Non-increasing in xi, nonnegative, identically 0 when sigma2^2 = 0.
double epi_phi(double xi, double sigma2_sq);

/// Per-symbol lower bound on H(Z)-H(Y): 1/2 log2(1 + sigma2^2/(P_K+sigma1^2)).
/// Equals epi_phi evaluated at xi = 1/2 log2(2 pi e (P_K + sigma1^2)).
double receiver_entropy_gap_bound(const ChannelConfig& cfg);

}  // namespace gmacwt
