#pragma once

#include "nuqft/analysis.hpp"
#include "nuqft/blockenc.hpp"
#include "nuqft/chebfact.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nuqft::io {

using json = nlohmann::json;

inline constexpr const char* report_schema = "nuqft-report/1";

json grid_to_json(const chebfact::SampleGrid& g);
chebfact::SampleGrid grid_from_json(const json& j);
chebfact::SampleGrid read_grid(const std::string& path);

CVector read_signal_csv(const std::string& path);
std::string signal_to_csv(const CVector& x);

json plan_to_json(const chebfact::LowRankPlan& p);
chebfact::LowRankPlan plan_from_json(const json& j);

json block_summary(const blockenc::BlockEncoding& b);
json params_to_json(const analysis::ParamChoice& pc);
json report_to_json(const analysis::VerificationReport& r);
json lemmas_to_json(const analysis::LemmaTables& t);
json counts_to_json(const analysis::CircuitCounts& c);
json fit_to_json(const analysis::LinearFit& f);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file then renames over `path`.
void atomic_write(const std::string& path, const std::string& content);

struct Series {
  std::string name;
  std::vector<double> x, y;
};
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y);

}  // namespace nuqft::io
