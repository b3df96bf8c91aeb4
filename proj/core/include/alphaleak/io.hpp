#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "alphaleak/prob.hpp"

namespace alphaleak {

// File schemas used by the CLI:
//   distribution: {"pmf": [...], "labels": [...]?}
//   channel:      {"transition": [[...]], "input_pmf": [...]?}
//   joint:        {"joint": [[...]]}

struct ChannelFile {
  Channel channel;
  ProbVec input_pmf;
  bool input_pmf_defaulted = false;  // uniform fallback was applied
};

ProbVec load_distribution(const std::string& path);
ChannelFile load_channel(const std::string& path);
// Factors a joint matrix (rows x, columns y) into prior + channel. Rows with
// zero marginal mass get uniform placeholder channel rows.
ChannelFile load_joint(const std::string& path);

std::string serialize_distribution(const ProbVec& p);
std::string serialize_channel(const Channel& ch, const ProbVec& input_pmf);

// 15 significant digits; +infinity as "inf".
std::string format_value(double v);

}  // namespace alphaleak
