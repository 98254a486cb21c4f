#include "gmacwt/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gmacwt {

namespace {
constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
}

void ChannelConfig::validate() const {
  if (num_users < 1) throw std::domain_error("num_users must be >= 1");
  if (static_cast<int>(p_max.size()) != num_users)
    throw std::domain_error("p_max size does not match num_users");
  for (double p : p_max)
    if (!(p > 0.0)) throw std::domain_error("all powers must be > 0");
  if (!(sigma1_sq > 0.0)) throw std::domain_error("sigma1_sq must be > 0");
  if (!(sigma2_sq >= 0.0)) throw std::domain_error("sigma2_sq must be >= 0");
}

double ChannelConfig::total_power() const {
  double t = 0.0;
  for (double p : p_max) t += p;
  return t;
}

SecrecyLevel::SecrecyLevel(double v) : value(v) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error("secrecy level must lie in [0,1]");
}

double shannon_capacity(double xi) {
  if (!(xi >= 0.0)) throw std::domain_error("shannon_capacity: xi must be >= 0");
  return 0.5 * std::log2(1.0 + xi);
}

double subset_power(const ChannelConfig& cfg, UserSet s) {
  double p = 0.0;
  for (int k = 0; k < cfg.num_users; ++k)
    if (s.contains(k)) p += cfg.p_max[k];
  return p;
}

namespace {
void require_nonempty(UserSet s, const char* op) {
  if (s.empty())
    throw std::domain_error(std::string(op) + ": subset must be nonempty");
}
}  // namespace

double main_capacity(const ChannelConfig& cfg, UserSet s) {
  require_nonempty(s, "main_capacity");
  return shannon_capacity(subset_power(cfg, s) / cfg.sigma1_sq);
}

double wiretap_capacity(const ChannelConfig& cfg, UserSet s) {
  require_nonempty(s, "wiretap_capacity");
  return shannon_capacity(subset_power(cfg, s) /
                          (cfg.sigma1_sq + cfg.sigma2_sq));
}

double wiretap_capacity_star(const ChannelConfig& cfg, UserSet s) {
  require_nonempty(s, "wiretap_capacity_star");
  const double interference = subset_power(cfg, s.complement(cfg.num_users));
  return shannon_capacity(subset_power(cfg, s) /
                          (interference + cfg.sigma1_sq + cfg.sigma2_sq));
}

double epi_phi(double xi, double sigma2_sq) {
  if (!(sigma2_sq >= 0.0)) throw std::domain_error("epi_phi: sigma2_sq < 0");
  // Algebraically 1/2 log2[2 pi e sigma2^2 + 2^{2 xi}] - xi; written so the
  // power term never overflows for large xi.
  return 0.5 * std::log2(1.0 + kTwoPiE * sigma2_sq * std::exp2(-2.0 * xi));
}

double receiver_entropy_gap_bound(const ChannelConfig& cfg) {
  return 0.5 *
         std::log2(1.0 + cfg.sigma2_sq / (cfg.total_power() + cfg.sigma1_sq));
}

}  // namespace gmacwt
