#include "gmacwt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gmacwt/errors.hpp"

namespace gmacwt {

namespace {

constexpr std::uint64_t kRoleCodebook = 0xC0DEB00Cull;
constexpr std::uint64_t kRoleTrial = 0x7121A15Eull;
constexpr int kMaxDitherRedraws = 256;
constexpr long kMaxStoredWords = 1L << 22;

double empirical_power(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e / static_cast<double>(x.size());
}

long class_bits(double rate, long n) {
  const long bits = std::lround(rate * static_cast<double>(n));
  if (std::abs(rate * static_cast<double>(n) - static_cast<double>(bits)) >
      1e-6)
    throw std::invalid_argument(
        "generate_codebooks: plan rates are not on the 1/n grid; integerize "
        "the plan first");
  return bits;
}

void check_candidate_cap(long bits, std::uint64_t cap, const char* what) {
  if (bits >= 63 || (1ull << bits) > cap) {
    std::ostringstream msg;
    msg << what << " candidate count 2^" << bits << " exceeds the cap " << cap
        << "; reduce n or the plan rates so that n * (sum of rates) <= "
        << std::floor(std::log2(static_cast<double>(cap))) << " bits";
    throw SizeCapError(msg.str());
  }
}

}  // namespace

long CodebookSet::receiver_candidate_bits() const {
  long bits = 0;
  for (const UserCodebooks& u : users)
    bits += u.secret.bits + u.open.bits + u.dither.bits;
  return bits;
}

long CodebookSet::eve_candidate_bits() const {
  long bits = 0;
  for (const UserCodebooks& u : users) bits += u.open.bits + u.dither.bits;
  return bits;
}

CodebookSet generate_codebooks(const ChannelConfig& cfg, const SplitPlan& plan,
                               const PowerSplit& split, long n,
                               std::uint64_t seed,
                               std::uint64_t candidate_cap) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("generate_codebooks: n must be >= 1");
  if (plan.n != n)
    throw std::invalid_argument(
        "generate_codebooks: plan was not integerized at this blocklength");
  const int k = cfg.num_users;
  if (plan.num_users() != k || static_cast<int>(split.lambda_s.size()) != k)
    throw std::invalid_argument("generate_codebooks: dimension mismatch");

  long total_bits = 0, stored_words = 0;
  for (int u = 0; u < k; ++u) {
    const long bits = class_bits(plan.r_s[u], n) + class_bits(plan.r_0[u], n) +
                      class_bits(plan.r_x[u], n);
    total_bits += bits;
  }
  check_candidate_cap(total_bits, candidate_cap, "joint receiver");

  CodebookSet books;
  books.n = n;
  books.seed = seed;
  books.p_max = cfg.p_max;
  books.users.resize(k);

  for (int u = 0; u < k; ++u) {
    const double p = cfg.p_max[u];
    const double eps_var = split.eps_var_scale * p;
    const double lambdas[3] = {split.lambda_s[u], split.lambda_0[u],
                               split.lambda_x[u]};
    const double rates[3] = {plan.r_s[u], plan.r_0[u], plan.r_x[u]};
    ClassCodebook* classes[3] = {&books.users[u].secret, &books.users[u].open,
                                 &books.users[u].dither};
    for (int c = 0; c < 3; ++c) {
      ClassCodebook& book = *classes[c];
      book.bits = class_bits(rates[c], n);
      book.power_cap = lambdas[c] * p;
      book.variance = std::max(0.0, lambdas[c] * p - eps_var);
      stored_words += book.count();
      if (stored_words > kMaxStoredWords ||
          stored_words * n > (1L << 28))
        throw SizeCapError(
            "generate_codebooks: codebook storage would exceed the "
            "desk-scale budget; reduce n or the plan rates");
      NormalRng rng(derive_seed(seed, kRoleCodebook,
                                static_cast<std::uint64_t>(u) * 8 + c));
      const double sigma = std::sqrt(book.variance);
      book.words.assign(book.count(), std::vector<double>(n, 0.0));
      if (sigma == 0.0) continue;
      for (auto& word : book.words) {
        for (int attempt = 0; attempt < 10000; ++attempt) {
          for (double& v : word) v = sigma * rng.normal();
          if (empirical_power(word) <= book.power_cap + 1e-12) break;
        }
      }
    }
  }
  return books;
}

namespace {

void superpose(const UserCodebooks& user, const Selection& pick,
               std::vector<double>& out) {
  const std::vector<double>& s = user.secret.words[pick.secret];
  const std::vector<double>& o = user.open.words[pick.open];
  const std::vector<double>& d = user.dither.words[pick.dither];
  out.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + o[i] + d[i];
}

void check_index(long index, long count, const char* what) {
  if (index < 0 || index >= count)
    throw std::out_of_range(std::string(what) + " index out of range");
}

}  // namespace

Transmission transmit(const ChannelConfig& cfg, const CodebookSet& books,
                      std::vector<Selection> picks, NormalRng& rng) {
  cfg.validate();
  const int k = cfg.num_users;
  if (static_cast<int>(picks.size()) != k ||
      static_cast<int>(books.users.size()) != k)
    throw std::invalid_argument("transmit: dimension mismatch");

  Transmission tx;
  tx.x.resize(k);
  for (int u = 0; u < k; ++u) {
    const UserCodebooks& user = books.users[u];
    Selection& pick = picks[u];
    check_index(pick.secret, user.secret.count(), "secret");
    check_index(pick.open, user.open.count(), "open");
    const bool draw_dither = pick.dither < 0;
    if (draw_dither)
      pick.dither = static_cast<long>(rng.uniform_below(user.dither.count()));
    else
      check_index(pick.dither, user.dither.count(), "dither");

    superpose(user, pick, tx.x[u]);
    if (draw_dither && user.dither.count() > 1) {
      int redraws = 0;
      while (empirical_power(tx.x[u]) > cfg.p_max[u] + 1e-12 &&
             redraws < kMaxDitherRedraws) {
        pick.dither =
            static_cast<long>(rng.uniform_below(user.dither.count()));
        superpose(user, pick, tx.x[u]);
        ++redraws;
      }
      tx.dither_redraws += redraws;
    }
    const double power = empirical_power(tx.x[u]);
    if (power > cfg.p_max[u] + 1e-12) {
      const double scale = std::sqrt(cfg.p_max[u] / power);
      for (double& v : tx.x[u]) v *= scale;
      ++tx.power_clamps;
    }
  }

  const long n = books.n;
  const double s1 = std::sqrt(cfg.sigma1_sq);
  const double s2 = std::sqrt(cfg.sigma2_sq);
  tx.y.assign(n, 0.0);
  tx.z.assign(n, 0.0);
  for (long i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int u = 0; u < k; ++u) sum += tx.x[u][i];
    tx.y[i] = sum + s1 * rng.normal();
    tx.z[i] = tx.y[i] + s2 * rng.normal();
  }
  tx.picks = std::move(picks);
  return tx;
}

namespace {

// Depth-first walk over per-user index triples with running partial sums;
// at the leaves the squared distance to the target decides the winner, with
// lexicographic index order breaking exact ties. `fixed_secret`, when
// nonempty, freezes each user's secret index (the eavesdropper's view).
struct NearestSearch {
  const CodebookSet& books;
  std::span<const double> target;
  const std::vector<long>* fixed_secret = nullptr;

  std::vector<std::vector<double>> partial;
  std::vector<Selection> current, best;
  double best_dist = std::numeric_limits<double>::infinity();
  bool have_best = false;

  NearestSearch(const CodebookSet& b, std::span<const double> t)
      : books(b), target(t) {
    const int k = static_cast<int>(books.users.size());
    partial.assign(k + 1, std::vector<double>(books.n, 0.0));
    current.resize(k);
    best.resize(k);
  }

  bool lex_less(const std::vector<Selection>& a,
                const std::vector<Selection>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].secret != b[i].secret) return a[i].secret < b[i].secret;
      if (a[i].open != b[i].open) return a[i].open < b[i].open;
      if (a[i].dither != b[i].dither) return a[i].dither < b[i].dither;
    }
    return false;
  }

  void run() { walk(0); }

  void walk(int user) {
    const int k = static_cast<int>(books.users.size());
    if (user == k) {
      double dist = 0.0;
      const std::vector<double>& sum = partial[k];
      for (long i = 0; i < books.n; ++i) {
        const double d = target[i] - sum[i];
        dist += d * d;
      }
      if (!have_best || dist < best_dist ||
          (dist == best_dist && lex_less(current, best))) {
        best_dist = dist;
        best = current;
        have_best = true;
      }
      return;
    }
    const UserCodebooks& u = books.users[user];
    const long s_begin = fixed_secret ? (*fixed_secret)[user] : 0;
    const long s_end = fixed_secret ? s_begin + 1 : u.secret.count();
    for (long s = s_begin; s < s_end; ++s) {
      for (long o = 0; o < u.open.count(); ++o) {
        for (long d = 0; d < u.dither.count(); ++d) {
          const std::vector<double>& ws = u.secret.words[s];
          const std::vector<double>& wo = u.open.words[o];
          const std::vector<double>& wd = u.dither.words[d];
          for (long i = 0; i < books.n; ++i)
            partial[user + 1][i] =
                partial[user][i] + ws[i] + wo[i] + wd[i];
          current[user] = Selection{s, o, d};
          walk(user + 1);
        }
      }
    }
  }
};

}  // namespace

std::vector<Selection> decode_receiver(const CodebookSet& books,
                                       std::span<const double> y,
                                       std::uint64_t candidate_cap) {
  if (static_cast<long>(y.size()) != books.n)
    throw std::invalid_argument("decode_receiver: signal length mismatch");
  check_candidate_cap(books.receiver_candidate_bits(), candidate_cap,
                      "joint receiver");
  NearestSearch search(books, y);
  search.run();
  return search.best;
}

EveDecode eve_decode_aggregate(const CodebookSet& books,
                               std::span<const double> z,
                               const std::vector<long>& secret_indices,
                               std::uint64_t candidate_cap) {
  if (static_cast<long>(z.size()) != books.n)
    throw std::invalid_argument("eve_decode_aggregate: signal length mismatch");
  if (secret_indices.size() != books.users.size())
    throw std::invalid_argument("eve_decode_aggregate: secret index count");
  for (std::size_t u = 0; u < books.users.size(); ++u)
    check_index(secret_indices[u], books.users[u].secret.count(), "secret");
  check_candidate_cap(books.eve_candidate_bits(), candidate_cap,
                      "eavesdropper");

  NearestSearch search(books, z);
  search.fixed_secret = &secret_indices;
  search.run();

  EveDecode result;
  result.picks = search.best;
  result.aggregate.assign(books.n, 0.0);
  std::vector<double> word;
  for (std::size_t u = 0; u < books.users.size(); ++u) {
    superpose(books.users[u], search.best[u], word);
    for (long i = 0; i < books.n; ++i) result.aggregate[i] += word[i];
  }
  return result;
}

SimReport run_trials(const ChannelConfig& cfg, const SplitPlan& plan,
                     const PowerSplit& split, const SimParams& params) {
  cfg.validate();
  if (params.trials < 0)
    throw std::invalid_argument("run_trials: trials must be >= 0");
  if (params.threads < 1)
    throw std::invalid_argument("run_trials: threads must be >= 1");

  SimReport report;
  report.seed = params.seed;
  report.n = params.n;
  report.margin = plan.margin;
  report.candidate_cap = params.candidate_cap;
  report.threads = params.threads;
  report.rate_s = plan.r_s;
  report.rate_0 = plan.r_0;
  report.rate_x = plan.r_x;
  if (params.trials == 0) return report;

  const CodebookSet books = generate_codebooks(cfg, plan, split, params.n,
                                               params.seed,
                                               params.candidate_cap);
  check_candidate_cap(books.eve_candidate_bits(), params.candidate_cap,
                      "eavesdropper");
  const int k = cfg.num_users;

  struct Tally {
    long receiver_errors = 0;
    long eve_errors = 0;
    long clamps = 0;
    double max_power_ratio = 0.0;
  };

  auto run_range = [&](long begin, long end, Tally& tally) {
    std::vector<Selection> picks(k);
    std::vector<long> secrets(k);
    std::vector<double> true_aggregate, word;
    for (long t = begin; t < end; ++t) {
      NormalRng rng(derive_seed(params.seed, kRoleTrial,
                                static_cast<std::uint64_t>(t)));
      for (int u = 0; u < k; ++u) {
        const UserCodebooks& user = books.users[u];
        picks[u].secret =
            static_cast<long>(rng.uniform_below(user.secret.count()));
        picks[u].open =
            static_cast<long>(rng.uniform_below(user.open.count()));
        picks[u].dither = -1;  // drawn inside transmit
        secrets[u] = picks[u].secret;
      }
      const Transmission tx = transmit(cfg, books, picks, rng);
      tally.clamps += tx.power_clamps;
      for (int u = 0; u < k; ++u)
        tally.max_power_ratio =
            std::max(tally.max_power_ratio,
                     empirical_power(tx.x[u]) / cfg.p_max[u]);

      const std::vector<Selection> decoded =
          decode_receiver(books, tx.y, params.candidate_cap);
      bool message_error = false;
      for (int u = 0; u < k; ++u)
        if (decoded[u].secret != tx.picks[u].secret ||
            decoded[u].open != tx.picks[u].open)
          message_error = true;
      if (message_error) ++tally.receiver_errors;

      true_aggregate.assign(books.n, 0.0);
      for (int u = 0; u < k; ++u) {
        superpose(books.users[u], tx.picks[u], word);
        for (long i = 0; i < books.n; ++i) true_aggregate[i] += word[i];
      }
      const EveDecode eve =
          eve_decode_aggregate(books, tx.z, secrets, params.candidate_cap);
      if (eve.aggregate != true_aggregate) ++tally.eve_errors;
    }
  };

  std::vector<Tally> tallies(params.threads);
  if (params.threads == 1) {
    run_range(0, params.trials, tallies[0]);
  } else {
    std::vector<std::thread> workers;
    const long chunk =
        (params.trials + params.threads - 1) / params.threads;
    for (int w = 0; w < params.threads; ++w) {
      const long begin = w * chunk;
      const long end = std::min<long>(params.trials, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(run_range, begin, end, std::ref(tallies[w]));
    }
    for (std::thread& worker : workers) worker.join();
  }

  report.trials = params.trials;
  for (const Tally& tally : tallies) {
    report.receiver_block_errors += tally.receiver_errors;
    report.eve_aggregate_errors += tally.eve_errors;
    report.power_clamps += tally.clamps;
    report.max_power_ratio =
        std::max(report.max_power_ratio, tally.max_power_ratio);
  }
  return report;
}

}  // namespace gmacwt
