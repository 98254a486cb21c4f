#include "gmacwt/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gmacwt/tdma.hpp"

namespace gmacwt {

const char* const kToolVersion = "0.1.0";

std::string format_sig9(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const char* what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const std::string& key : allowed)
      if (item.key() == key) known = true;
    if (!known)
      throw std::invalid_argument(std::string(what) + ": unknown key \"" +
                                  item.key() + "\"");
  }
  for (const std::string& key : allowed)
    if (!j.contains(key))
      throw std::invalid_argument(std::string(what) + ": missing key \"" +
                                  key + "\"");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

std::vector<double> double_vector(const json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number())
      throw std::invalid_argument(std::string(what) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ChannelConfig channel_config_from_json(const json& j) {
  require_keys(j, {"num_users", "p_max", "sigma1_sq", "sigma2_sq"},
               "channel config");
  ChannelConfig cfg;
  if (!j["num_users"].is_number_integer())
    throw std::invalid_argument("channel config: num_users must be an integer");
  cfg.num_users = j["num_users"].get<int>();
  cfg.p_max = double_vector(j["p_max"], "channel config p_max");
  if (!j["sigma1_sq"].is_number() || !j["sigma2_sq"].is_number())
    throw std::invalid_argument("channel config: noise variances must be numbers");
  cfg.sigma1_sq = j["sigma1_sq"].get<double>();
  cfg.sigma2_sq = j["sigma2_sq"].get<double>();
  cfg.validate();
  return cfg;
}

ChannelConfig load_channel_config(const std::string& path) {
  return channel_config_from_json(load_json(path));
}

ordered_json channel_config_to_json(const ChannelConfig& cfg) {
  ordered_json j;
  j["num_users"] = cfg.num_users;
  j["p_max"] = cfg.p_max;
  j["sigma1_sq"] = cfg.sigma1_sq;
  j["sigma2_sq"] = cfg.sigma2_sq;
  return j;
}

ordered_json region_to_json(const RateRegion& region) {
  ordered_json j;
  j["num_users"] = region.num_users();
  j["delta"] = region.delta;
  ordered_json list = ordered_json::array();
  for (const Halfspace& h : region.halfspaces) {
    ordered_json entry;
    entry["subset_mask"] = h.subset.mask;
    entry["family"] =
        h.family == ConstraintFamily::kMac ? "MAC" : "SECRECY";
    if (std::isinf(h.bound))
      entry["bound"] = nullptr;
    else
      entry["bound"] = h.bound;
    list.push_back(entry);
  }
  j["halfspaces"] = list;
  return j;
}

std::string vertices_to_csv(const std::vector<RatePoint>& vertices,
                            int num_users) {
  std::ostringstream out;
  for (int k = 0; k < num_users; ++k) out << (k ? "," : "") << 'R' << (k + 1);
  out << '\n';
  for (const RatePoint& v : vertices) {
    for (int k = 0; k < num_users; ++k)
      out << (k ? "," : "") << format_sig9(v.rates[k]);
    out << '\n';
  }
  return out.str();
}

ordered_json split_plan_to_json(const SplitPlan& plan) {
  ordered_json j;
  j["mu"] = plan.mu;
  j["r_s"] = plan.r_s;
  j["r_0"] = plan.r_0;
  j["r_x"] = plan.r_x;
  j["margin"] = plan.margin;
  j["eps_prime"] = plan.eps_prime;
  j["n"] = plan.n;
  j["notes"] = plan.notes;
  return j;
}

SplitPlan split_plan_from_json(const json& j) {
  require_keys(j, {"mu", "r_s", "r_0", "r_x", "margin", "eps_prime", "n",
                   "notes"},
               "split plan");
  SplitPlan plan;
  plan.mu = double_vector(j["mu"], "split plan mu");
  plan.r_s = double_vector(j["r_s"], "split plan r_s");
  plan.r_0 = double_vector(j["r_0"], "split plan r_0");
  plan.r_x = double_vector(j["r_x"], "split plan r_x");
  plan.margin = j["margin"].get<double>();
  plan.eps_prime = j["eps_prime"].get<double>();
  plan.n = j["n"].get<long>();
  for (const auto& note : j["notes"]) plan.notes.push_back(note.get<std::string>());
  const std::size_t k = plan.mu.size();
  if (plan.r_s.size() != k || plan.r_0.size() != k || plan.r_x.size() != k)
    throw std::invalid_argument("split plan: vector lengths disagree");
  return plan;
}

SplitPlan load_split_plan(const std::string& path) {
  return split_plan_from_json(load_json(path));
}

ordered_json sim_report_to_json(const SimReport& report) {
  ordered_json j;
  j["trials"] = report.trials;
  j["receiver_block_errors"] = report.receiver_block_errors;
  j["eve_aggregate_errors"] = report.eve_aggregate_errors;
  j["seed"] = report.seed;
  j["power_clamps"] = report.power_clamps;
  j["max_power_ratio"] = report.max_power_ratio;
  ordered_json params;
  params["n"] = report.n;
  params["margin"] = report.margin;
  params["candidate_cap"] = report.candidate_cap;
  params["threads"] = report.threads;
  params["rate_s"] = report.rate_s;
  params["rate_0"] = report.rate_0;
  params["rate_x"] = report.rate_x;
  j["parameters"] = params;
  return j;
}

DiscreteWiretapSpec wiretap_spec_from_json(const json& j) {
  require_keys(j,
               {"num_users", "n", "message_counts", "randomness_counts",
                "input_alphabets", "main_output_alphabet",
                "tap_output_alphabet", "encoders", "main_channel",
                "wiretap_channel"},
               "wiretap spec");
  DiscreteWiretapSpec spec;
  spec.num_users = j["num_users"].get<int>();
  spec.n = j["n"].get<long>();
  auto long_vector = [](const json& arr, const char* what) {
    std::vector<long> out;
    for (const auto& v : arr) {
      if (!v.is_number_integer())
        throw std::invalid_argument(std::string(what) + ": expected integers");
      out.push_back(v.get<long>());
    }
    return out;
  };
  spec.message_counts = long_vector(j["message_counts"], "message_counts");
  spec.randomness_counts =
      long_vector(j["randomness_counts"], "randomness_counts");
  spec.input_alphabets = long_vector(j["input_alphabets"], "input_alphabets");
  spec.main_output_alphabet = j["main_output_alphabet"].get<long>();
  spec.tap_output_alphabet = j["tap_output_alphabet"].get<long>();
  for (const auto& user : j["encoders"]) {
    std::vector<std::vector<std::vector<int>>> per_user;
    for (const auto& per_message : user) {
      std::vector<std::vector<int>> rows;
      for (const auto& word : per_message) {
        std::vector<int> symbols;
        for (const auto& sym : word) symbols.push_back(sym.get<int>());
        rows.push_back(symbols);
      }
      per_user.push_back(rows);
    }
    spec.encoders.push_back(per_user);
  }
  auto matrix = [](const json& arr) {
    std::vector<std::vector<double>> out;
    for (const auto& row : arr) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      out.push_back(r);
    }
    return out;
  };
  spec.main_channel = matrix(j["main_channel"]);
  spec.wiretap_channel = matrix(j["wiretap_channel"]);
  spec.validate();
  return spec;
}

DiscreteWiretapSpec load_wiretap_spec(const std::string& path) {
  return wiretap_spec_from_json(load_json(path));
}

ordered_json equivocation_report_to_json(const EquivocationReport& report,
                                         int num_users) {
  ordered_json j;
  ordered_json subsets = ordered_json::array();
  for (const SubsetEquivocation& e : report.subsets) {
    ordered_json entry;
    entry["subset_mask"] = e.subset.mask;
    ordered_json members = ordered_json::array();
    for (int k = 0; k < num_users; ++k)
      if (e.subset.contains(k)) members.push_back(k + 1);
    entry["users"] = members;
    entry["h_messages"] = e.h_messages;
    entry["h_conditional"] = e.h_conditional;
    entry["delta"] = e.delta;
    entry["degenerate"] = e.degenerate;
    subsets.push_back(entry);
  }
  j["subsets"] = subsets;
  j["min_delta"] = report.min_delta;
  j["advisories"] = report.advisories;
  return j;
}

std::string tdma_boundary_csv(const ChannelConfig& cfg, double delta,
                              int num_samples) {
  std::ostringstream out;
  out << "alpha1,R1,R2\n";
  const std::vector<RatePoint> points =
      tdma_boundary_sample(cfg, delta, num_samples);
  for (int i = 0; i < num_samples; ++i) {
    const double a1 = static_cast<double>(i) / (num_samples - 1);
    out << format_sig9(a1) << ',' << format_sig9(points[i].rates[0]) << ','
        << format_sig9(points[i].rates[1]) << '\n';
  }
  return out.str();
}

ordered_json manifest_to_json(const RunManifest& manifest) {
  ordered_json j;
  j["command"] = manifest.command;
  j["config"] = manifest.config_path;
  j["outputs"] = manifest.outputs;
  j["seed"] = manifest.seed;
  j["tool_version"] = manifest.tool_version;
  j["timestamp"] = manifest.timestamp;
  return j;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

}  // namespace gmacwt
