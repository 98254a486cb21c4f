#include "gmacwt/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gmacwt/errors.hpp"

namespace gmacwt {

namespace {

// Compensated accumulator; entropy sums must stay reproducible and tight
// even across large state spaces.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double entropy_bits(const std::vector<double>& p) {
  KahanSum h;
  for (double v : p)
    if (v > 0.0) h.add(-v * std::log2(v));
  return h.sum;
}

void check_stochastic(const std::vector<std::vector<double>>& matrix,
                      long rows, long cols, const char* name) {
  if (static_cast<long>(matrix.size()) != rows)
    throw std::domain_error(std::string(name) + ": wrong row count");
  for (const auto& row : matrix) {
    if (static_cast<long>(row.size()) != cols)
      throw std::domain_error(std::string(name) + ": wrong column count");
    KahanSum total;
    for (double v : row) {
      if (!(v >= 0.0))
        throw std::domain_error(std::string(name) + ": negative entry");
      total.add(v);
    }
    if (std::abs(total.sum - 1.0) > 1e-12)
      throw std::domain_error(std::string(name) + ": row does not sum to 1");
  }
}

}  // namespace

void DiscreteWiretapSpec::validate() const {
  if (num_users < 1) throw std::domain_error("spec: num_users must be >= 1");
  if (n < 1) throw std::domain_error("spec: n must be >= 1");
  auto check_len = [this](const std::vector<long>& v, const char* name) {
    if (static_cast<int>(v.size()) != num_users)
      throw std::domain_error(std::string("spec: ") + name +
                              " must have one entry per user");
    for (long x : v)
      if (x < 1)
        throw std::domain_error(std::string("spec: ") + name +
                                " entries must be >= 1");
  };
  check_len(message_counts, "message_counts");
  check_len(randomness_counts, "randomness_counts");
  check_len(input_alphabets, "input_alphabets");
  if (main_output_alphabet < 1 || tap_output_alphabet < 1)
    throw std::domain_error("spec: output alphabets must be >= 1");
  if (static_cast<int>(encoders.size()) != num_users)
    throw std::domain_error("spec: one encoder table per user");
  for (int k = 0; k < num_users; ++k) {
    if (static_cast<long>(encoders[k].size()) != message_counts[k])
      throw std::domain_error("spec: encoder rows must match message count");
    for (const auto& per_message : encoders[k]) {
      if (static_cast<long>(per_message.size()) != randomness_counts[k])
        throw std::domain_error(
            "spec: encoder columns must match randomness count");
      for (const auto& word : per_message) {
        if (static_cast<long>(word.size()) != n)
          throw std::domain_error("spec: codeword length must equal n");
        for (int sym : word)
          if (sym < 0 || sym >= input_alphabets[k])
            throw std::domain_error("spec: encoder symbol out of alphabet");
      }
    }
  }
  check_stochastic(main_channel, joint_input_states(), main_output_alphabet,
                   "main_channel");
  check_stochastic(wiretap_channel, main_output_alphabet, tap_output_alphabet,
                   "wiretap_channel");
}

namespace {

// Guarded product: these counts feed table allocations, so anything past
// the cap regime is refused before it can overflow.
long checked_product(long states, long factor) {
  constexpr long kLimit = 1L << 50;
  if (factor > 0 && states > kLimit / factor)
    throw SizeCapError("state count overflows the enumeration budget");
  return states * factor;
}

}  // namespace

long DiscreteWiretapSpec::joint_input_states() const {
  long states = 1;
  for (long a : input_alphabets) states = checked_product(states, a);
  return states;
}

long DiscreteWiretapSpec::message_states() const {
  long states = 1;
  for (long m : message_counts) states = checked_product(states, m);
  return states;
}

long DiscreteWiretapSpec::tap_sequence_states() const {
  long states = 1;
  for (long i = 0; i < n; ++i)
    states = checked_product(states, tap_output_alphabet);
  return states;
}

JointDistribution joint_distribution(const DiscreteWiretapSpec& spec,
                                     std::uint64_t state_cap) {
  spec.validate();
  const long messages = spec.message_states();
  const long z_states = spec.tap_sequence_states();
  long randomness = 1;
  for (long d : spec.randomness_counts)
    randomness = checked_product(randomness, d);

  const std::uint64_t table =
      static_cast<std::uint64_t>(messages) * static_cast<std::uint64_t>(z_states);
  if (table > state_cap) {
    std::ostringstream msg;
    msg << "joint_distribution: state count " << table << " exceeds cap "
        << state_cap;
    throw SizeCapError(msg.str());
  }
  if (table * static_cast<std::uint64_t>(randomness) > 100'000'000ull)
    throw SizeCapError(
        "joint_distribution: enumeration work over randomness exceeds the "
        "desk-scale budget");

  // Per-symbol composed channel: P(z | joint input).
  const long inputs = spec.joint_input_states();
  std::vector<std::vector<double>> composed(
      inputs, std::vector<double>(spec.tap_output_alphabet, 0.0));
  for (long x = 0; x < inputs; ++x)
    for (long y = 0; y < spec.main_output_alphabet; ++y) {
      const double py = spec.main_channel[x][y];
      if (py == 0.0) continue;
      for (long z = 0; z < spec.tap_output_alphabet; ++z)
        composed[x][z] += py * spec.wiretap_channel[y][z];
    }

  JointDistribution joint;
  joint.message_counts = spec.message_counts;
  joint.z_states = z_states;
  joint.p.assign(static_cast<std::size_t>(messages) * z_states, 0.0);

  const double p_uniform = 1.0 / (static_cast<double>(messages) *
                                  static_cast<double>(randomness));
  std::vector<long> w(spec.num_users, 0), d(spec.num_users, 0);
  std::vector<long> joint_input(spec.n, 0);
  std::vector<double> pz(z_states, 0.0);

  auto advance = [](std::vector<long>& digits,
                    const std::vector<long>& radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < radix[i]) return true;
      digits[i] = 0;
    }
    return false;
  };

  for (long w_index = 0; w_index < messages; ++w_index) {
    std::fill(d.begin(), d.end(), 0);
    do {
      // joint channel input per position for this (w, d)
      for (long i = 0; i < spec.n; ++i) {
        long idx = 0, stride = 1;
        for (int k = 0; k < spec.num_users; ++k) {
          idx += stride * spec.encoders[k][w[k]][d[k]][i];
          stride *= spec.input_alphabets[k];
        }
        joint_input[i] = idx;
      }
      // P(z^n | w, d) as a product over positions
      std::fill(pz.begin(), pz.end(), 1.0);
      long block = 1;
      for (long i = 0; i < spec.n; ++i) {
        const std::vector<double>& row = composed[joint_input[i]];
        for (long z = 0; z < z_states; ++z)
          pz[z] *= row[(z / block) % spec.tap_output_alphabet];
        block *= spec.tap_output_alphabet;
      }
      for (long z = 0; z < z_states; ++z)
        joint.p[w_index * z_states + z] += p_uniform * pz[z];
    } while (advance(d, spec.randomness_counts));
    advance(w, spec.message_counts);
  }

  KahanSum total;
  for (double v : joint.p) total.add(v);
  if (std::abs(total.sum - 1.0) > 1e-12)
    throw std::logic_error("joint_distribution: probabilities do not sum to 1");
  return joint;
}

const SubsetEquivocation& EquivocationReport::at(UserSet s) const {
  for (const SubsetEquivocation& e : subsets)
    if (e.subset == s) return e;
  throw std::invalid_argument("EquivocationReport::at: no such subset");
}

EquivocationReport exact_equivocation(const DiscreteWiretapSpec& spec) {
  const JointDistribution joint = joint_distribution(spec);
  const int k = spec.num_users;
  const long z_states = joint.z_states;
  const long messages = spec.message_states();

  // Marginal over Z^n (shared by both routes).
  std::vector<double> pz(z_states, 0.0);
  for (long w = 0; w < messages; ++w)
    for (long z = 0; z < z_states; ++z) pz[z] += joint.at(w, z);
  const double h_z = entropy_bits(pz);

  EquivocationReport report;
  report.min_delta = 1.0;
  const std::uint32_t full = UserSet::full(k).mask;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const UserSet s{mask};
    // Subset-message index map and marginal table over (W_S, Z).
    long s_states = 1;
    for (int u = 0; u < k; ++u)
      if (s.contains(u)) s_states *= spec.message_counts[u];
    std::vector<double> marginal(static_cast<std::size_t>(s_states) * z_states,
                                 0.0);
    for (long w = 0; w < messages; ++w) {
      long rest = w, s_index = 0, stride = 1;
      for (int u = 0; u < k; ++u) {
        const long digit = rest % spec.message_counts[u];
        rest /= spec.message_counts[u];
        if (s.contains(u)) {
          s_index += stride * digit;
          stride *= spec.message_counts[u];
        }
      }
      for (long z = 0; z < z_states; ++z)
        marginal[s_index * z_states + z] += joint.at(w, z);
    }

    std::vector<double> pw(s_states, 0.0);
    for (long ws = 0; ws < s_states; ++ws)
      for (long z = 0; z < z_states; ++z)
        pw[ws] += marginal[ws * z_states + z];
    const double h_w = entropy_bits(pw);

    SubsetEquivocation entry;
    entry.subset = s;
    entry.h_messages = h_w;

    if (h_w <= 0.0) {
      entry.degenerate = true;
      entry.delta = 1.0;
      entry.delta_alt = 1.0;
      entry.h_conditional = 0.0;
      std::ostringstream note;
      note << "subset mask " << mask
           << ": H(W_S) = 0 (deterministic messages); Delta defined as 1";
      report.advisories.push_back(note.str());
    } else {
      // Route A: H(W_S|Z) as an average of per-output conditional entropies.
      KahanSum h_cond;
      for (long z = 0; z < z_states; ++z) {
        if (pz[z] <= 0.0) continue;
        KahanSum slice;
        for (long ws = 0; ws < s_states; ++ws) {
          const double p = marginal[ws * z_states + z];
          if (p <= 0.0) continue;
          const double cond = p / pz[z];
          slice.add(-cond * std::log2(cond));
        }
        h_cond.add(pz[z] * slice.sum);
      }
      entry.h_conditional = h_cond.sum;
      entry.delta = entry.h_conditional / h_w;

      // Route B: Delta = 1 - I(W_S;Z)/H(W_S) from joint/marginal entropies.
      const double h_wz = entropy_bits(marginal);
      const double mutual = h_w + h_z - h_wz;
      entry.delta_alt = 1.0 - mutual / h_w;

      if (std::abs(entry.delta - entry.delta_alt) > 1e-9)
        throw std::logic_error(
            "exact_equivocation: entropy routes disagree beyond tolerance");
    }
    report.min_delta = std::min(report.min_delta, entry.delta);
    report.subsets.push_back(entry);
  }
  return report;
}

bool check_delta_achievability(const DiscreteWiretapSpec& spec, double delta) {
  SecrecyLevel level(delta);
  const EquivocationReport report = exact_equivocation(spec);
  return report.min_delta >= level.value - 1e-12;
}

}  // namespace gmacwt
