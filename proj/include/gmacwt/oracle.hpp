#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmacwt/channel.hpp"

namespace gmacwt {

// Exact equivocation computation on tiny finite-alphabet wiretap instances.
// The wiretap observation is always the main output pushed through a second
// channel, so every instance is a degraded cascade by construction.

/// Finite K-user wiretap instance: per-user encoders map (message, local
/// randomness) to length-n strings over the user's input alphabet; the main
/// channel acts per symbol on the joint input tuple, and the wiretap channel
/// acts per symbol on the main output.
struct DiscreteWiretapSpec {
  int num_users = 0;
  long n = 1;
  std::vector<long> message_counts;     // M_k >= 1
  std::vector<long> randomness_counts;  // D_k >= 1
  std::vector<long> input_alphabets;    // |X_k|
  long main_output_alphabet = 0;        // |Y|
  long tap_output_alphabet = 0;         // |Z|
  // encoders[k][m][d] = n symbols over [0, |X_k|)
  std::vector<std::vector<std::vector<std::vector<int>>>> encoders;
  // main_channel[joint_x][y]; joint_x is mixed radix, user 0 fastest
  std::vector<std::vector<double>> main_channel;
  // wiretap_channel[y][z]
  std::vector<std::vector<double>> wiretap_channel;

  void validate() const;
  long joint_input_states() const;
  long message_states() const;
  long tap_sequence_states() const;  // |Z|^n
};

/// Exact joint probability table over (message tuple, Z^n), message tuple
/// mixed radix with user 0 fastest, Z^n mixed radix with symbol 0 fastest.
struct JointDistribution {
  std::vector<long> message_counts;
  long z_states = 0;
  std::vector<double> p;  // row-major: [message][z]

  double& at(long msg, long z) { return p[msg * z_states + z]; }
  double at(long msg, long z) const { return p[msg * z_states + z]; }
};

/// Enumerates the joint distribution exactly. Refuses (SizeCapError) when
/// the table (prod M_k * |Z|^n) exceeds `state_cap` or the enumeration work
/// would be unreasonable.
JointDistribution joint_distribution(const DiscreteWiretapSpec& spec,
                                     std::uint64_t state_cap = 10'000'000);

struct SubsetEquivocation {
  UserSet subset;
  double h_messages = 0.0;     // H(W_S)
  double h_conditional = 0.0;  // H(W_S | Z)
  double delta = 1.0;          // H(W_S|Z)/H(W_S), 1 when H(W_S) = 0
  double delta_alt = 1.0;      // independent route: 1 - I(W_S;Z)/H(W_S)
  bool degenerate = false;     // H(W_S) = 0
};

struct EquivocationReport {
  std::vector<SubsetEquivocation> subsets;  // ascending mask order
  double min_delta = 1.0;
  std::vector<std::string> advisories;

  const SubsetEquivocation& at(UserSet s) const;
};

/// Delta_S for every nonempty subset via two independent entropy routes
/// (per-output conditional entropies vs. the mutual-information identity);
/// the routes must agree to ~1e-9 or the computation aborts.
EquivocationReport exact_equivocation(const DiscreteWiretapSpec& spec);

/// True iff min over nonempty subsets of Delta_S >= delta - 1e-12.
bool check_delta_achievability(const DiscreteWiretapSpec& spec, double delta);

}  // namespace gmacwt
