#pragma once

// CSV and JSON emission for reports. Every file starts with the resolved
// configuration; CSV files carry it as "# key = value" comment lines and
// JSON summaries as a "config" object. Key order is fixed.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cml/closeness.hpp"
#include "cml/goldbach.hpp"

namespace cml {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Shortest round-trip decimal form of x; integral values print without an exponent.
std::string format_number(double x);

void write_config_header(std::ostream& out, const ConfigEntries& config);
ConfigEntries pipeline_config_entries(const PipelineConfig& config);

// n,lambda_conv,omega_model_conv,verdict with verdict ok | fail | odd.
void write_pipeline_csv(std::ostream& out, const PipelineReport& report, const ConfigEntries& config);
// n
void write_exceptional_csv(std::ostream& out, const std::vector<std::uint64_t>& exceptions,
                           const ConfigEntries& config);
// t,h,r,q,actual_re,actual_im,predicted,bound,ratio,branch
void write_sweep_csv(std::ostream& out, const SweepReport& report, const ConfigEntries& config);
// trial,lhs,rhs,ratio
void write_gallagher_csv(std::ostream& out, const GallagherReport& report, const ConfigEntries& config);

std::string pipeline_summary_json(const PipelineReport& report, const ConfigEntries& config);
std::string sweep_summary_json(const SweepReport& report, const ConfigEntries& config);
std::string gallagher_summary_json(const GallagherReport& report, const ConfigEntries& config);
std::string closeness_summary_json(const ClosenessReport& report, const ConfigEntries& config);
std::string closeness_pair_summary_json(const ClosenessReport& lambda_vs_model,
                                        const ClosenessReport& model_vs_sieve, bool ordered,
                                        bool pass, const ConfigEntries& config);

}  // namespace cml
