#include "cml/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

namespace cml {
namespace {

using nlohmann::ordered_json;

ordered_json config_object(const ConfigEntries& config) {
  ordered_json obj = ordered_json::object();
  for (const auto& [k, v] : config) obj[k] = v;
  return obj;
}

// JSON has no infinity or NaN; such values are written as null.
ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

ordered_json optional_number(const std::optional<double>& x) {
  return x ? number(*x) : ordered_json(nullptr);
}

ordered_json arc_json(const ArcContribution& a) {
  ordered_json j;
  j["q"] = a.arc.q;
  j["r"] = a.arc.r;
  j["center"] = a.arc.center;
  j["window"] = a.window;
  j["gallagher"] = a.gallagher;
  j["direct"] = number(a.direct);
  return j;
}

ordered_json closeness_json(const ClosenessReport& r) {
  ordered_json j;
  j["H"] = r.H;
  j["order"] = r.order;
  j["gallagher_sup"] = r.gallagher_sup;
  j["direct_sup"] = r.direct_sup;
  j["direct_argmax"] = r.direct_argmax;
  j["sup_estimate"] = r.sup_estimate;
  j["reference_norm"] = r.reference_norm;
  j["theta_effective"] = number(r.theta_effective);
  j["samples_per_arc"] = r.samples_per_arc;
  j["global_grid_points"] = r.global_grid_points;
  ordered_json arcs = ordered_json::array();
  for (const auto& a : r.per_arc) arcs.push_back(arc_json(a));
  j["per_arc"] = std::move(arcs);
  return j;
}

std::string finish(ordered_json j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  char buf[64];
  if (std::isfinite(x) && x == std::trunc(x) && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_config_header(std::ostream& out, const ConfigEntries& config) {
  for (const auto& [k, v] : config) out << "# " << k << " = " << v << '\n';
}

ConfigEntries pipeline_config_entries(const PipelineConfig& c) {
  return {
      {"preset", c.preset.empty() ? "none" : c.preset},
      {"X", std::to_string(c.X)},
      {"H", std::to_string(c.H)},
      {"Y", std::to_string(c.Y)},
      {"Q", std::to_string(c.Q)},
      {"A", format_number(c.A)},
      {"c_nu", format_number(c.c_nu)},
      {"c_omega", format_number(c.c_omega)},
      {"kappa", format_number(c.kappa)},
      {"theta", format_number(c.theta)},
      {"sieve_z", format_number(c.resolved_z())},
      {"sieve_D", format_number(c.resolved_D())},
      {"failure_threshold", format_number(c.failure_threshold)},
      {"ideal_Y", format_number(c.ideal_Y)},
      {"ideal_H", format_number(c.ideal_H)},
      {"ideal_Q", format_number(c.ideal_Q)},
  };
}

void write_pipeline_csv(std::ostream& out, const PipelineReport& report, const ConfigEntries& config) {
  write_config_header(out, config);
  out << "n,lambda_conv,omega_model_conv,verdict\n";
  for (const auto& row : report.rows) {
    const char* verdict = !row.even ? "odd" : (row.fails ? "fail" : "ok");
    out << row.n << ',' << format_number(row.lambda_conv) << ',' << format_number(row.omega_model_conv)
        << ',' << verdict << '\n';
  }
}

void write_exceptional_csv(std::ostream& out, const std::vector<std::uint64_t>& exceptions,
                           const ConfigEntries& config) {
  write_config_header(out, config);
  out << "n\n";
  for (const auto n : exceptions) out << n << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepReport& report, const ConfigEntries& config) {
  write_config_header(out, config);
  out << "t,h,r,q,actual_re,actual_im,predicted,bound,ratio,branch\n";
  for (const auto& row : report.rows) {
    const auto& p = row.point;
    const auto& r = row.result;
    out << p.t << ',' << format_number(p.h) << ',' << p.twist.r << ',' << p.twist.q << ','
        << format_number(r.actual.real()) << ',' << format_number(r.actual.imag()) << ','
        << format_number(r.predicted) << ',' << format_number(r.bound) << ',' << format_number(r.ratio)
        << ',' << (r.major ? "major" : "minor") << '\n';
  }
}

void write_gallagher_csv(std::ostream& out, const GallagherReport& report, const ConfigEntries& config) {
  write_config_header(out, config);
  out << "trial,lhs,rhs,ratio\n";
  for (const auto& row : report.rows) {
    out << row.trial << ',' << format_number(row.lhs) << ',' << format_number(row.rhs) << ','
        << format_number(row.ratio) << '\n';
  }
}

std::string pipeline_summary_json(const PipelineReport& r, const ConfigEntries& config) {
  ordered_json j;
  j["config"] = config_object(config);
  j["exceptions_step2"] = r.exceptions_step2;
  j["exceptions_step4"] = r.exceptions_step4;
  j["step7_violations"] = r.step7_violations;
  j["final_failures"] = r.final_failures;
  j["odd_final_failures"] = r.odd_final_failures;
  j["even_count"] = r.even_count;
  j["failure_fraction"] = r.failure_fraction;
  j["minorization_violations"] = r.minorization_violations;
  j["max_model_crosscheck"] = r.max_model_crosscheck;
  j["theta_nu_tplus"] = optional_number(r.theta_nu_tplus);
  j["theta_tnu_tplus"] = optional_number(r.theta_tnu_tplus);
  j["pass"] = r.pass;
  return finish(std::move(j));
}

std::string sweep_summary_json(const SweepReport& r, const ConfigEntries& config) {
  ordered_json j;
  j["config"] = config_object(config);
  j["points"] = r.rows.size();
  j["major_points"] = r.major_points;
  j["minor_points"] = r.minor_points;
  j["max_ratio_major"] = r.max_ratio_major;
  j["max_ratio_minor"] = r.max_ratio_minor;
  j["max_ratio"] = r.max_ratio();
  j["ceiling"] = r.ceiling;
  j["pass"] = r.pass;
  return finish(std::move(j));
}

std::string gallagher_summary_json(const GallagherReport& r, const ConfigEntries& config) {
  ordered_json j;
  j["config"] = config_object(config);
  j["trials"] = r.rows.size();
  j["max_ratio"] = r.max_ratio;
  j["ceiling"] = r.ceiling;
  j["pass"] = r.pass;
  return finish(std::move(j));
}

std::string closeness_summary_json(const ClosenessReport& r, const ConfigEntries& config) {
  ordered_json j;
  j["config"] = config_object(config);
  j["report"] = closeness_json(r);
  return finish(std::move(j));
}

std::string closeness_pair_summary_json(const ClosenessReport& lambda_vs_model,
                                        const ClosenessReport& model_vs_sieve, bool ordered,
                                        bool pass, const ConfigEntries& config) {
  ordered_json j;
  j["config"] = config_object(config);
  j["theta_lambda_tnu"] = number(lambda_vs_model.theta_effective);
  j["theta_tnu_tplus"] = number(model_vs_sieve.theta_effective);
  j["ordered"] = ordered;
  j["pass"] = pass;
  j["lambda_vs_tnu"] = closeness_json(lambda_vs_model);
  j["tnu_vs_tplus"] = closeness_json(model_vs_sieve);
  return finish(std::move(j));
}

}  // namespace cml
