#include "gmacwt/split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gmacwt/errors.hpp"
#include "gmacwt/linprog.hpp"

namespace gmacwt {

std::vector<double> SplitPlan::total_rates() const {
  std::vector<double> total(mu.size(), 0.0);
  for (std::size_t k = 0; k < mu.size(); ++k) total[k] = r_s[k] + r_0[k];
  return total;
}

namespace {

std::string subset_label(UserSet s, int num_users) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int k = 0; k < num_users; ++k) {
    if (!s.contains(k)) continue;
    if (!first) out << ',';
    out << (k + 1);
    first = false;
  }
  out << '}';
  return out.str();
}

constexpr double kPinSlack = 1e-9;

// Incrementally built LP sharing one constraint pool; objectives vary
// across the lexicographic passes.
struct SplitLp {
  LpProblem lp;
  int num_vars = 0;

  explicit SplitLp(int vars) : num_vars(vars) { lp.c.assign(vars, 0.0); }

  void add_row(const std::vector<double>& coeffs, double rhs) {
    lp.a.push_back(coeffs);
    lp.b.push_back(rhs);
  }

  // Pin variable j at (or below) its solved value.
  void pin_upper(int j, double value) {
    std::vector<double> row(num_vars, 0.0);
    row[j] = 1.0;
    add_row(row, value + kPinSlack);
  }

  LpResult maximize(const std::vector<double>& objective) {
    lp.c = objective;
    return solve_lp(lp);
  }

  LpResult minimize_var(int j) {
    std::vector<double> objective(num_vars, 0.0);
    objective[j] = -1.0;
    return maximize(objective);
  }
};

}  // namespace

SplitPlan solve_split(const ChannelConfig& cfg, double delta,
                      const RatePoint& point, double margin) {
  cfg.validate();
  SecrecyLevel level(delta);
  if (point.dim() != cfg.num_users)
    throw std::invalid_argument("solve_split: rate point dimension mismatch");
  if (!(margin >= 0.0))
    throw std::domain_error("solve_split: margin must be >= 0");

  const RateRegion region = build_gaussian_region(cfg, level.value);
  const ContainmentReport rep = contains(region, point);
  if (!rep.inside || !(rep.min_slack > 0.0))
    throw InfeasibleError(
        "rate point is not strictly inside the region (" + rep.describe() +
        ")");

  const int k = cfg.num_users;
  const std::vector<double>& r = point.rates;
  double r_total = 0.0;
  for (double v : r) r_total += v;
  const double cmw = wiretap_capacity(cfg, UserSet::full(k));
  const double open_target = cmw - margin;  // sum of (1-mu)R + r_x
  if (open_target < -1e-12)
    throw InfeasibleError("wiretap margin exceeds the eavesdropper capacity");

  // Variables: u_0..u_{K-1} with mu = delta + u, then x_0..x_{K-2}; the last
  // randomization rate is eliminated through the open-rate equality so that
  // equality holds exactly by construction. Since (1-mu_k) = (1-delta) - u_k,
  // the equality reads sum_i x_i = t0 + sum_k R_k u_k.
  const double mu_span = 1.0 - level.value;
  const double t0 = open_target - mu_span * r_total;

  const int nx = k - 1;  // free randomization variables
  SplitLp builder(k + nx);

  const std::uint32_t full_mask = UserSet::full(k).mask;
  for (std::uint32_t m = 1; m <= full_mask; ++m) {
    const UserSet s{m};
    double r_s_sum = 0.0;
    for (int i = 0; i < k; ++i)
      if (s.contains(i)) r_s_sum += r[i];

    {  // secret-rate family: sum_S R u <= (C^M - C^MW*) - delta R_S
      std::vector<double> row(builder.num_vars, 0.0);
      for (int i = 0; i < k; ++i)
        if (s.contains(i)) row[i] = r[i];
      const double rhs = (main_capacity(cfg, s) -
                          wiretap_capacity_star(cfg, s)) -
                         level.value * r_s_sum;
      builder.add_row(row, rhs);
    }

    {  // total-rate family: sum_S (R + r_x) <= C^M
      const double cap = main_capacity(cfg, s) - r_s_sum;
      std::vector<double> row(builder.num_vars, 0.0);
      if (!s.contains(k - 1)) {
        for (int i = 0; i < nx; ++i)
          if (s.contains(i)) row[k + i] = 1.0;
        builder.add_row(row, cap);
      } else {
        // substitute x_{K-1} = t0 + sum R u - sum_{i<K-1} x_i
        for (int i = 0; i < k; ++i) row[i] = r[i];
        for (int i = 0; i < nx; ++i)
          if (!s.contains(i)) row[k + i] = -1.0;
        builder.add_row(row, cap - t0);
      }
    }
  }
  {  // x_{K-1} >= 0: sum_{i<K-1} x_i - sum R u <= t0
    std::vector<double> row(builder.num_vars, 0.0);
    for (int i = 0; i < k; ++i) row[i] = -r[i];
    for (int i = 0; i < nx; ++i) row[k + i] = 1.0;
    builder.add_row(row, t0);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<double> row(builder.num_vars, 0.0);
    row[i] = 1.0;
    builder.add_row(row, mu_span);
  }

  const char* infeasible_msg =
      "no feasible (mu, r_x) split: the open-rate equality cannot be met "
      "within the subset constraints at this margin";

  // Phase A: maximize total slack, which reduces to minimizing sum R mu.
  std::vector<double> slack_objective(builder.num_vars, 0.0);
  for (int i = 0; i < k; ++i) slack_objective[i] = -r[i];
  LpResult sol = builder.maximize(slack_objective);
  if (sol.status != LpResult::Status::kOptimal)
    throw InfeasibleError(infeasible_msg);
  {
    std::vector<double> row(builder.num_vars, 0.0);
    for (int i = 0; i < k; ++i) row[i] = r[i];
    builder.add_row(row, -sol.objective + kPinSlack);
  }

  // Lexicographically smallest mu, then lexicographically smallest r_x.
  for (int j = 0; j < builder.num_vars; ++j) {
    sol = builder.minimize_var(j);
    if (sol.status != LpResult::Status::kOptimal)
      throw InfeasibleError(infeasible_msg);
    builder.pin_upper(j, sol.x[j]);
  }

  SplitPlan plan;
  plan.margin = margin;
  plan.mu.resize(k);
  plan.r_s.resize(k);
  plan.r_0.resize(k);
  plan.r_x.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    plan.mu[i] = std::clamp(level.value + sol.x[i], level.value, 1.0);
    plan.r_s[i] = plan.mu[i] * r[i];
    plan.r_0[i] = (1.0 - plan.mu[i]) * r[i];
  }
  double open_rest = 0.0;
  for (int i = 0; i < nx; ++i) {
    plan.r_x[i] = std::max(0.0, sol.x[k + i]);
    open_rest += plan.r_0[i] + plan.r_x[i];
  }
  open_rest += plan.r_0[k - 1];
  plan.r_x[k - 1] = std::max(0.0, open_target - open_rest);

  const double worst = split_worst_violation(cfg, level.value, plan);
  if (worst < -1e-9)
    throw std::logic_error("solve_split: post-check violation " +
                           std::to_string(worst));
  // Per-subset protected fraction must cover the secrecy level (the ratio
  // guarantee behind the construction); automatic from mu >= delta.
  for (std::uint32_t m = 1; m <= full_mask; ++m) {
    const UserSet s{m};
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i)
      if (s.contains(i)) {
        num += plan.mu[i] * r[i];
        den += r[i];
      }
    if (den > 0.0 && num / den < level.value - 1e-12)
      throw std::logic_error("solve_split: protected-fraction ratio below "
                             "delta for subset " + subset_label(s, k));
  }
  return plan;
}

namespace {

double floor_to_grid(double rate, long n, long& bits) {
  bits = static_cast<long>(std::floor(rate * static_cast<double>(n) + 1e-9));
  if (bits < 0) bits = 0;
  return static_cast<double>(bits) / static_cast<double>(n);
}

}  // namespace

SplitPlan integerize(const SplitPlan& plan, long n) {
  if (n < 1) throw std::invalid_argument("integerize: n must be >= 1");
  SplitPlan out = plan;
  out.n = n;
  out.eps_prime = 0.0;

  auto round_class = [&](std::vector<double>& rates, const char* label) {
    for (std::size_t u = 0; u < rates.size(); ++u) {
      long bits = 0;
      const double eff = floor_to_grid(rates[u], n, bits);
      out.eps_prime = std::max(out.eps_prime, rates[u] - eff);
      if (rates[u] > 1e-12 && bits == 0) {
        std::ostringstream note;
        note << "user " << (u + 1) << " " << label << " rate " << rates[u]
             << " rounds to 0 at n=" << n << " (single-codeword class)";
        out.notes.push_back(note.str());
      }
      rates[u] = eff;
    }
  };
  round_class(out.r_s, "secret");
  round_class(out.r_0, "open");
  // Re-solve the open-rate total for the rounded classes: project each
  // randomization rate onto the grid from below, which keeps every subset
  // constraint loosened and the open total at or under its target.
  round_class(out.r_x, "randomization");
  return out;
}

PowerSplit default_power_split(const SplitPlan& plan) {
  const int k = plan.num_users();
  PowerSplit split;
  split.lambda_s.assign(k, 0.0);
  split.lambda_0.assign(k, 0.0);
  split.lambda_x.assign(k, 0.0);
  for (int u = 0; u < k; ++u) {
    const double total = plan.r_s[u] + plan.r_0[u] + plan.r_x[u];
    if (total <= 0.0) continue;  // silent user
    split.lambda_s[u] = plan.r_s[u] / total;
    split.lambda_0[u] = plan.r_0[u] / total;
    split.lambda_x[u] = plan.r_x[u] / total;
  }
  return split;
}

double equivocation_lower_bound(const ChannelConfig& cfg,
                                const SplitPlan& plan, double eta) {
  cfg.validate();
  if (!(eta >= 0.0))
    throw std::domain_error("equivocation_lower_bound: eta must be >= 0");
  const UserSet full = UserSet::full(cfg.num_users);
  const double gap = main_capacity(cfg, full) - wiretap_capacity(cfg, full);
  if (gap <= 0.0) return 0.0;  // no secrecy headroom at all
  double open_total = 0.0;
  for (int u = 0; u < plan.num_users(); ++u)
    open_total += plan.r_0[u] + plan.r_x[u];
  return 1.0 -
         (wiretap_capacity(cfg, full) - open_total + eta) / gap;
}

double split_worst_violation(const ChannelConfig& cfg, double delta,
                             const SplitPlan& plan) {
  cfg.validate();
  const int k = cfg.num_users;
  if (plan.num_users() != k)
    throw std::invalid_argument("split_worst_violation: dimension mismatch");
  double worst = std::numeric_limits<double>::infinity();
  auto note = [&worst](double slack) { worst = std::min(worst, slack); };

  for (int u = 0; u < k; ++u) {
    note(plan.mu[u] - delta);
    note(1.0 - plan.mu[u]);
    note(plan.r_s[u]);
    note(plan.r_0[u]);
    note(plan.r_x[u]);
  }
  const std::uint32_t full_mask = UserSet::full(k).mask;
  for (std::uint32_t m = 1; m <= full_mask; ++m) {
    const UserSet s{m};
    double secret = 0.0, total = 0.0;
    for (int u = 0; u < k; ++u)
      if (s.contains(u)) {
        secret += plan.r_s[u];
        total += plan.r_s[u] + plan.r_0[u] + plan.r_x[u];
      }
    note(main_capacity(cfg, s) - wiretap_capacity_star(cfg, s) - secret);
    note(main_capacity(cfg, s) - total);
  }
  // One-sided check of the open-rate total: at most C^MW - margin (holds
  // with equality for freshly solved plans, from below after integerizing).
  double open_total = 0.0;
  for (int u = 0; u < k; ++u) open_total += plan.r_0[u] + plan.r_x[u];
  note(wiretap_capacity(cfg, UserSet::full(k)) - plan.margin - open_total);
  return worst;
}

}  // namespace gmacwt
