#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmacwt/channel.hpp"
#include "gmacwt/rng.hpp"
#include "gmacwt/split.hpp"

namespace gmacwt {

// Desk-scale Monte Carlo of the superposition scheme over the AWGN cascade:
// each user transmits the sum of one secret, one open and one randomization
// codeword; the receiver decodes all indices jointly by exhaustive nearest
// neighbor, and the eavesdropper decodes the aggregate codeword given the
// secret indices. Candidate counts are hard-capped, so usable blocklengths
// satisfy n * (total rate) <= log2(cap).

/// Per-user selected codeword indices; dither < 0 asks transmit() to draw
/// it uniformly.
struct Selection {
  long secret = 0;
  long open = 0;
  long dither = 0;
  bool operator==(const Selection&) const = default;
};

struct ClassCodebook {
  long bits = 0;        // codeword count is 2^bits
  double variance = 0.0;
  double power_cap = 0.0;  // per-codeword empirical power cap (lambda * P)
  std::vector<std::vector<double>> words;
  long count() const { return 1L << bits; }
};

struct UserCodebooks {
  ClassCodebook secret, open, dither;
};

struct CodebookSet {
  long n = 0;
  std::uint64_t seed = 0;
  std::vector<double> p_max;
  std::vector<UserCodebooks> users;

  long receiver_candidate_bits() const;  // sum of all class bits
  long eve_candidate_bits() const;       // open + dither bits only
};

/// Draw the three per-user class codebooks for an integerized plan.
/// Deterministic given seed. Every codeword is redrawn until its empirical
/// power fits its class allocation. Refuses (SizeCapError) when the joint
/// receiver candidate count exceeds `candidate_cap` or storage would be
/// unreasonable for exhaustive decoding.
CodebookSet generate_codebooks(const ChannelConfig& cfg, const SplitPlan& plan,
                               const PowerSplit& split, long n,
                               std::uint64_t seed,
                               std::uint64_t candidate_cap = 1ull << 20);

struct Transmission {
  std::vector<std::vector<double>> x;  // per-user channel inputs
  std::vector<double> y, z;            // receiver and eavesdropper signals
  std::vector<Selection> picks;        // with drawn dither filled in
  long dither_redraws = 0;
  long power_clamps = 0;
};

/// Superpose the selected codewords and push them through both channels.
/// If a user's summed codeword violates its power cap, the dither index is
/// redrawn (when it was drawn here and more than one dither word exists);
/// as a last resort the sum is scaled onto the cap and counted as a clamp,
/// so the power constraint holds on every transmitted block.
Transmission transmit(const ChannelConfig& cfg, const CodebookSet& books,
                      std::vector<Selection> picks, NormalRng& rng);

/// Exhaustive joint nearest-neighbor decoding of all indices from y.
/// Ties break toward the lexicographically smallest index tuple.
std::vector<Selection> decode_receiver(const CodebookSet& books,
                                       std::span<const double> y,
                                       std::uint64_t candidate_cap = 1ull
                                           << 20);

struct EveDecode {
  std::vector<Selection> picks;    // secret entries echo the given indices
  std::vector<double> aggregate;   // decoded sum of all users' codewords
};

/// Nearest-neighbor decoding of the aggregate codeword from z given every
/// user's secret index; the search runs over open x dither combinations.
EveDecode eve_decode_aggregate(const CodebookSet& books,
                               std::span<const double> z,
                               const std::vector<long>& secret_indices,
                               std::uint64_t candidate_cap = 1ull << 20);

struct SimParams {
  long n = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t candidate_cap = 1ull << 20;
  int threads = 1;
};

struct SimReport {
  long trials = 0;
  long receiver_block_errors = 0;  // any message (secret/open) index wrong
  long eve_aggregate_errors = 0;   // aggregate codeword not recovered
  std::uint64_t seed = 0;
  long power_clamps = 0;
  double max_power_ratio = 0.0;  // max transmitted power / P_k over trials

  // parameter echo
  long n = 0;
  double margin = 0.0;
  std::uint64_t candidate_cap = 0;
  int threads = 1;
  std::vector<double> rate_s, rate_0, rate_x;
};

/// Run independent trials with fresh uniform messages and noise. Per-trial
/// RNG streams derive from (seed, trial), so the aggregate counts do not
/// depend on the thread count.
SimReport run_trials(const ChannelConfig& cfg, const SplitPlan& plan,
                     const PowerSplit& split, const SimParams& params);

}  // namespace gmacwt
