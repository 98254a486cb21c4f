#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gmacwt/channel.hpp"
#include "gmacwt/oracle.hpp"
#include "gmacwt/region.hpp"
#include "gmacwt/simulator.hpp"
#include "gmacwt/split.hpp"

namespace gmacwt {

/// 9 significant digits, the fixed precision of every CSV number.
std::string format_sig9(double value);

// Config files are strict: exactly num_users, p_max, sigma1_sq, sigma2_sq;
// unknown keys are rejected.
ChannelConfig channel_config_from_json(const nlohmann::json& j);
ChannelConfig load_channel_config(const std::string& path);
nlohmann::ordered_json channel_config_to_json(const ChannelConfig& cfg);

nlohmann::ordered_json region_to_json(const RateRegion& region);
std::string vertices_to_csv(const std::vector<RatePoint>& vertices,
                            int num_users);

nlohmann::ordered_json split_plan_to_json(const SplitPlan& plan);
SplitPlan split_plan_from_json(const nlohmann::json& j);
SplitPlan load_split_plan(const std::string& path);

nlohmann::ordered_json sim_report_to_json(const SimReport& report);

DiscreteWiretapSpec wiretap_spec_from_json(const nlohmann::json& j);
DiscreteWiretapSpec load_wiretap_spec(const std::string& path);
nlohmann::ordered_json equivocation_report_to_json(
    const EquivocationReport& report, int num_users);

/// CSV of TDMA boundary corner points: alpha1,R1,R2.
std::string tdma_boundary_csv(const ChannelConfig& cfg, double delta,
                              int num_samples);

struct RunManifest {
  std::string command;
  std::string config_path;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
};

nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);

void write_text_file(const std::string& path, const std::string& contents);

extern const char* const kToolVersion;

}  // namespace gmacwt
