#include "gmacwt/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gmacwt/errors.hpp"

namespace gmacwt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

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
}  // namespace

RatePoint::RatePoint(std::vector<double> r) : rates(std::move(r)) {
  for (double v : rates)
    if (!(v >= 0.0))
      throw std::domain_error("RatePoint: rates must be nonnegative");
}

double RatePoint::sum() const {
  double s = 0.0;
  for (double v : rates) s += v;
  return s;
}

const Halfspace& RateRegion::at(ConstraintFamily family, UserSet s) const {
  for (const Halfspace& h : halfspaces)
    if (h.family == family && h.subset == s) return h;
  throw std::invalid_argument("RateRegion::at: no such constraint");
}

EntropyProfile EntropyProfile::gaussian_max(const ChannelConfig& cfg) {
  EntropyProfile profile;
  profile.h_rates.reserve(cfg.p_max.size());
  for (double p : cfg.p_max)
    profile.h_rates.push_back(0.5 * std::log2(kTwoPiE * p));
  return profile;
}

std::string ContainmentReport::describe() const {
  std::ostringstream out;
  out << (inside ? "inside" : "outside");
  if (tightest) {
    out << "; tightest: "
        << (tightest->family == ConstraintFamily::kMac ? "MAC" : "SECRECY")
        << " subset " << subset_label(tightest->subset, 32)
        << ", slack " << min_slack;
  }
  return out.str();
}

namespace {

// Secrecy bound for one subset given the callable `inner_capacity(s)`.
template <typename InnerFn>
RateRegion build_region(const ChannelConfig& cfg, double delta,
                        InnerFn inner_capacity) {
  cfg.validate();
  if (cfg.num_users > 16)
    throw SizeCapError(
        "halfspace systems are materialized per nonempty subset; K <= 16 "
        "supported, got K = " + std::to_string(cfg.num_users));
  SecrecyLevel level(delta);
  RateRegion region;
  region.cfg = cfg;
  region.delta = level.value;
  const std::uint32_t full = UserSet::full(cfg.num_users).mask;
  region.halfspaces.reserve(2 * full);
  for (std::uint32_t m = 1; m <= full; ++m)
    region.halfspaces.push_back(
        {UserSet{m}, ConstraintFamily::kMac, main_capacity(cfg, UserSet{m})});
  for (std::uint32_t m = 1; m <= full; ++m) {
    double bound = kInf;
    if (delta > 0.0) {
      const UserSet s{m};
      bound = (main_capacity(cfg, s) - inner_capacity(s)) / delta;
    }
    region.halfspaces.push_back({UserSet{m}, ConstraintFamily::kSecrecy, bound});
  }
  return region;
}

}  // namespace

RateRegion build_gmac_region(const ChannelConfig& cfg) {
  return build_gaussian_region(cfg, 0.0);
}

RateRegion build_gaussian_region(const ChannelConfig& cfg, double delta) {
  return build_region(cfg, delta, [&cfg](UserSet s) {
    return wiretap_capacity_star(cfg, s);
  });
}

RateRegion build_generic_outer(const ChannelConfig& cfg, double delta,
                               const EntropyProfile& profile) {
  cfg.validate();
  if (static_cast<int>(profile.h_rates.size()) != cfg.num_users)
    throw std::invalid_argument("entropy profile dimension mismatch");
  for (int j = 0; j < cfg.num_users; ++j) {
    const double h_max = 0.5 * std::log2(kTwoPiE * cfg.p_max[j]);
    if (profile.h_rates[j] > h_max + 1e-9)
      throw std::domain_error(
          "entropy profile exceeds the Gaussian maximum for user " +
          std::to_string(j + 1));
  }
  return build_region(cfg, delta, [&](UserSet s) {
    double entropy_power = 0.0;  // sum of 2^{2 h_j}
    for (int j = 0; j < cfg.num_users; ++j)
      if (s.contains(j)) entropy_power += std::exp2(2.0 * profile.h_rates[j]);
    const double interference = subset_power(cfg, s.complement(cfg.num_users));
    return shannon_capacity(
        entropy_power / (kTwoPiE * (interference + cfg.sigma1_sq + cfg.sigma2_sq)));
  });
}

double sum_capacity(const ChannelConfig& cfg, double delta) {
  cfg.validate();
  SecrecyLevel level(delta);
  const UserSet full = UserSet::full(cfg.num_users);
  const double c_main = main_capacity(cfg, full);
  if (level.value == 0.0) return c_main;
  return std::min(c_main,
                  (c_main - wiretap_capacity(cfg, full)) / level.value);
}

ContainmentReport contains(const RateRegion& region, const RatePoint& point,
                           double tol) {
  if (point.dim() != region.num_users())
    throw std::invalid_argument("contains: rate point dimension mismatch");
  ContainmentReport report;
  report.inside = true;
  report.min_slack = kInf;
  for (const Halfspace& h : region.halfspaces) {
    if (std::isinf(h.bound)) continue;
    double total = 0.0;
    for (int k = 0; k < region.num_users(); ++k)
      if (h.subset.contains(k)) total += point.rates[k];
    const double slack = h.bound - total;
    if (slack < report.min_slack) {
      report.min_slack = slack;
      report.tightest = h;
    }
    if (slack < -tol) report.inside = false;
  }
  return report;
}

namespace {

// Solve a K x K linear system by Gaussian elimination with partial
// pivoting. Returns false when near-singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return true;
}

struct LinearConstraint {
  std::vector<double> normal;
  double rhs = 0.0;
};

}  // namespace

std::vector<RatePoint> enumerate_vertices(const RateRegion& region) {
  const int k = region.num_users();
  if (k > 4)
    throw SizeCapError(
        "vertex enumeration supports K <= 4 users; got K = " +
        std::to_string(k));

  // Constraint pool: finite halfspaces plus the K nonnegativity planes.
  std::vector<LinearConstraint> pool;
  for (const Halfspace& h : region.halfspaces) {
    if (std::isinf(h.bound)) continue;
    LinearConstraint c;
    c.normal.assign(k, 0.0);
    for (int i = 0; i < k; ++i)
      if (h.subset.contains(i)) c.normal[i] = 1.0;
    c.rhs = h.bound;
    pool.push_back(std::move(c));
  }
  for (int i = 0; i < k; ++i) {
    LinearConstraint c;
    c.normal.assign(k, 0.0);
    c.normal[i] = -1.0;  // -R_i <= 0
    c.rhs = 0.0;
    pool.push_back(std::move(c));
  }

  const double feas_tol = 1e-9;
  std::vector<RatePoint> vertices;
  std::vector<int> pick(k);
  // All K-subsets of the pool, in ascending index order.
  const int n = static_cast<int>(pool.size());
  auto emit = [&](const std::vector<double>& x) {
    for (double v : x)
      if (v < -feas_tol) return;
    for (const LinearConstraint& c : pool) {
      double total = 0.0;
      for (int i = 0; i < k; ++i) total += c.normal[i] * x[i];
      if (total > c.rhs + feas_tol) return;
    }
    std::vector<double> clean(x);
    for (double& v : clean)
      if (std::abs(v) < 1e-12) v = 0.0;
    for (const RatePoint& seen : vertices) {
      double dist = 0.0;
      for (int i = 0; i < k; ++i)
        dist = std::max(dist, std::abs(seen.rates[i] - clean[i]));
      if (dist <= 1e-9) return;
    }
    vertices.push_back(RatePoint(clean));
  };

  std::vector<std::vector<double>> a(k);
  std::vector<double> b(k), x;
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) {
      a[i] = pool[pick[i]].normal;
      b[i] = pool[pick[i]].rhs;
    }
    if (solve_square(a, b, x)) emit(x);
    // next combination
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
  }

  std::sort(vertices.begin(), vertices.end(),
            [](const RatePoint& lhs, const RatePoint& rhs) {
              return lhs.rates < rhs.rates;
            });
  return vertices;
}

bool region_subset(const std::vector<RatePoint>& inner_vertices,
                   const RateRegion& outer, double tol) {
  for (const RatePoint& v : inner_vertices)
    if (!contains(outer, v, tol).inside) return false;
  return true;
}

bool region_subset(const RateRegion& inner, const RateRegion& outer,
                   double tol) {
  if (inner.num_users() != outer.num_users())
    throw std::invalid_argument("region_subset: dimension mismatch");
  return region_subset(enumerate_vertices(inner), outer, tol);
}

}  // namespace gmacwt
