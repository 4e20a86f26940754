// cml: experiment runner for the verification harnesses and the pipeline.
//
// Exit codes: 0 success, 1 a pinned assertion failed, 2 invalid input.
// Parameters come from flags, then CML_<NAME> environment variables, then
// an optional key=value file given by --config; unknown keys are rejected.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cml/arith.hpp"
#include "cml/closeness.hpp"
#include "cml/constants.hpp"
#include "cml/error.hpp"
#include "cml/goldbach.hpp"
#include "cml/models.hpp"
#include "cml/parallel.hpp"
#include "cml/report_io.hpp"

namespace {

using cml::ConfigEntries;
using cml::format_number;

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kInvalid = 2;

struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string out_dir = ".";

std::ofstream open_output(const std::string& name) {
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidSpec("cannot write " + path.string());
  return out;
}

void write_file(const std::string& name, const std::string& text) {
  auto out = open_output(name);
  out << text;
}

void log_config(const std::string& command, const ConfigEntries& config) {
  std::cout << "# command = " << command << '\n';
  cml::write_config_header(std::cout, config);
}

ConfigEntries with_command(const std::string& command, ConfigEntries config) {
  config.insert(config.begin(), {"command", command});
  return config;
}

int verdict(bool pass, const std::string& what) {
  std::cout << (pass ? "PASS " : "FAIL ") << what << '\n';
  return pass ? kOk : kAssertionFailed;
}

// --- verify ------------------------------------------------------------------

struct GallagherCmd {
  cml::GallagherTrials spec;
  int run() const {
    const ConfigEntries config = with_command(
        "verify gallagher", {{"delta", format_number(spec.delta)},
                             {"trials", std::to_string(spec.trials)},
                             {"seed", std::to_string(spec.seed)},
                             {"start", std::to_string(spec.start)},
                             {"span", std::to_string(spec.span)},
                             {"samples_per_unit", format_number(spec.samples_per_unit)}});
    log_config("verify gallagher", config);
    const auto report = cml::run_gallagher_trials(spec);
    auto csv = open_output("gallagher.csv");
    cml::write_gallagher_csv(csv, report, config);
    write_file("gallagher_summary.json", cml::gallagher_summary_json(report, config));
    std::cout << "max lhs/rhs " << format_number(report.max_ratio) << " (ceiling "
              << format_number(report.ceiling) << ")\n";
    return verdict(report.pass, "Gallagher ratio within the pinned ceiling");
  }
};

struct LambdaShortCmd {
  std::uint64_t Q = 10;
  std::string grid = "small";
  int run() const {
    const ConfigEntries config =
        with_command("verify lambda_q_short", {{"Q", std::to_string(Q)}, {"grid", grid}});
    log_config("verify lambda_q_short", config);
    const auto report = cml::verify_lambda_q_short_sums(cml::short_sum_grid(grid, Q), Q);
    auto csv = open_output("lambda_q_short.csv");
    cml::write_sweep_csv(csv, report, config);
    write_file("lambda_q_short_summary.json", cml::sweep_summary_json(report, config));
    std::cout << report.rows.size() << " points, max ratio " << format_number(report.max_ratio()) << '\n';
    return verdict(report.pass, "short sums of Lambda_Q within the pinned ceiling");
  }
};

struct SieveShortCmd {
  double z = 10.0;
  double D = 1e4;
  std::string grid = "small";
  int run() const {
    const ConfigEntries config = with_command(
        "verify sieve_short", {{"z", format_number(z)}, {"D", format_number(D)}, {"grid", grid}});
    log_config("verify sieve_short", config);
    const auto sieve = cml::beta_sieve_weights(D, z);
    const auto grid_points = cml::short_sum_grid(grid, static_cast<std::uint64_t>(std::floor(z)));
    const auto report = cml::verify_sieve_short_sums(grid_points, sieve);
    auto csv = open_output("sieve_short.csv");
    cml::write_sweep_csv(csv, report, config);
    write_file("sieve_short_summary.json", cml::sweep_summary_json(report, config));
    std::cout << report.rows.size() << " points, max ratio " << format_number(report.max_ratio()) << '\n';
    return verdict(report.pass, "sieve short sums within the pinned ceiling");
  }
};

struct ClosenessCmd {
  std::int64_t Y = 100'000;
  double H = 0.0;  // <= 0: Y^0.3
  std::uint64_t Q = 10;
  double c_nu = 1.0;
  double D = 0.0;  // <= 0: desk level
  int run() const {
    const double h = H > 0.0 ? H : std::pow(static_cast<double>(Y), 0.3);
    const double z = static_cast<double>(Q);
    const double level = D > 0.0 ? D : cml::desk_sieve_level(h, z);
    const ConfigEntries config = with_command(
        "verify closeness", {{"Y", std::to_string(Y)},
                             {"H", format_number(h)},
                             {"Q", std::to_string(Q)},
                             {"c_nu", format_number(c_nu)},
                             {"sieve_z", format_number(z)},
                             {"sieve_D", format_number(level)}});
    log_config("verify closeness", config);
    if (Y < 2) throw cml::DomainError("closeness: Y must be at least 2");
    const cml::LambdaQParams params{Q, cml::Window{Y, 2 * Y}, c_nu};
    const auto nu = cml::weighted_prime_fn(static_cast<std::uint64_t>(2 * Y)).restricted(params.window);
    const auto t_nu = cml::model_t_nu(params);
    const auto t_plus = cml::model_t_nu_plus(params, cml::beta_sieve_weights(level, z));
    cml::ClosenessOptions opts;
    opts.reference_norm = cml::l2_norm_sq(nu);
    const auto a = cml::closeness_integral(nu, t_nu, h, opts);
    const auto b = cml::closeness_integral(t_nu, t_plus, h, opts);
    const bool ordered = b.theta_effective <= a.theta_effective;
    const bool pass = ordered && a.theta_effective <= cml::pinned::kClosenessThetaCeiling &&
                      b.theta_effective <= cml::pinned::kClosenessThetaCeiling;
    {
      auto csv = open_output("closeness_lambda_arcs.csv");
      cml::write_config_header(csv, config);
      cml::write_arc_csv(csv, a);
    }
    {
      auto csv = open_output("closeness_sieve_arcs.csv");
      cml::write_config_header(csv, config);
      cml::write_arc_csv(csv, b);
    }
    write_file("closeness_summary.json", cml::closeness_pair_summary_json(a, b, ordered, pass, config));
    std::cout << "theta(Lambda', T_nu) " << format_number(a.theta_effective) << ", theta(T_nu, T_nu^+) "
              << format_number(b.theta_effective) << '\n';
    return verdict(pass, "closeness ordered and below the pinned ceiling");
  }
};

// --- pipeline ----------------------------------------------------------------

struct PipelineCmd {
  std::string preset;
  std::optional<std::int64_t> X, Y, H;
  std::optional<std::uint64_t> Q;
  std::optional<double> A, c_nu, c_omega, kappa, theta, sieve_z, sieve_D, threshold;
  bool collapsed = false;

  cml::PipelineConfig resolve() const {
    cml::PipelineConfig c;
    if (!preset.empty()) {
      c = cml::preset_config(preset);
    } else if (X) {
      c = cml::desk_config(*X, A.value_or(1.0));
    } else {
      throw InvalidSpec("pipeline: give --preset or --X");
    }
    if (X) c.X = *X;
    if (A) c.A = *A;
    if (Y) c.Y = *Y;
    if (H) c.H = *H;
    if (Q) c.Q = *Q;
    if (c_nu) c.c_nu = *c_nu;
    if (c_omega) c.c_omega = *c_omega;
    if (Y && !kappa && c.Y > 1) c.kappa = static_cast<double>(c.Y) / std::log(static_cast<double>(c.Y));
    if (kappa) c.kappa = *kappa;
    if (theta) c.theta = *theta;
    if (sieve_z) c.sieve_z = *sieve_z;
    if (sieve_D) c.sieve_D = *sieve_D;
    if (threshold) c.failure_threshold = *threshold;
    cml::validate(c);
    return c;
  }

  int run() const {
    const auto c = resolve();
    auto config = with_command("pipeline", cml::pipeline_config_entries(c));
    config.push_back({"inputs", collapsed ? "collapsed" : "model"});
    log_config("pipeline", config);
    const auto inputs = collapsed ? cml::collapsed_inputs(c) : cml::model_inputs(c);
    const auto report = cml::run_pipeline(c, inputs);
    auto csv = open_output("pipeline.csv");
    cml::write_pipeline_csv(csv, report, config);
    write_file("pipeline_summary.json", cml::pipeline_summary_json(report, config));
    std::cout << "final failures " << report.final_failures << " of " << report.even_count
              << " even n, step2 " << report.exceptions_step2 << ", step4 " << report.exceptions_step4
              << ", step7 " << report.step7_violations << ", minorization " << report.minorization_violations
              << '\n';
    return verdict(report.pass, "failing fraction within threshold, exact steps hold");
  }
};

// --- exceptional, series, model ------------------------------------------------

struct ExceptionalCmd {
  std::uint64_t X = 0;
  std::uint64_t H = 0;
  int run() const {
    const ConfigEntries config =
        with_command("exceptional", {{"X", std::to_string(X)}, {"H", std::to_string(H)}});
    log_config("exceptional", config);
    const auto ex = cml::exceptional_set(X, H);
    auto csv = open_output("exceptional.csv");
    cml::write_exceptional_csv(csv, ex, config);
    std::cout << ex.size() << " even n in [X - H, X] without a two-prime representation\n";
    return kOk;
  }
};

struct SeriesCmd {
  std::uint64_t from = 2;
  std::uint64_t to = 100;
  std::uint64_t q_max = 100'000;
  int run() const {
    const ConfigEntries config = with_command(
        "series", {{"from", std::to_string(from)}, {"to", std::to_string(to)}, {"q_max", std::to_string(q_max)}});
    log_config("series", config);
    if (from < 2 || to < from) throw cml::DomainError("series: requires 2 <= from <= to");
    if (to - from > 10'000'000) throw cml::CapacityError("series: at most 10^7 values of n");
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = from; n <= to; ++n) ns.push_back(n);
    const auto partial = cml::singular_series_partial(ns, q_max);
    auto csv = open_output("series.csv");
    cml::write_config_header(csv, config);
    csv << "n,partial,product\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      csv << ns[i] << ',' << format_number(partial[i]) << ','
          << format_number(cml::singular_series_product(ns[i], q_max)) << '\n';
    }
    return kOk;
  }
};

struct ModelCmd {
  std::string kind = "t_nu";
  std::int64_t lo = 1000;
  std::int64_t hi = 2000;
  std::uint64_t Q = 10;
  double c_nu = 1.0;
  double z = 0.0;  // <= 0: Q
  double D = 0.0;  // <= 0: untruncated level
  int run() const {
    const double zz = z > 0.0 ? z : std::max(2.0, static_cast<double>(Q));
    const bool sieved = kind == "t_nu_plus" || kind == "theta";
    const double level = D > 0.0 ? D : static_cast<double>(cml::untruncated_sieve_level(zz));
    ConfigEntries config{{"kind", kind}, {"lo", std::to_string(lo)}, {"hi", std::to_string(hi)},
                         {"Q", std::to_string(Q)}, {"c_nu", format_number(c_nu)}};
    if (sieved) {
      config.push_back({"z", format_number(zz)});
      config.push_back({"D", format_number(level)});
    }
    config = with_command("model", config);
    log_config("model", config);
    if (hi <= lo) throw cml::DomainError("model: requires lo < hi");
    if (hi - lo > 100'000'000) throw cml::CapacityError("model: window above 10^8");
    const cml::Window window{lo, hi};
    const cml::LambdaQParams params{Q, window, c_nu};
    cml::ArithFn f;
    if (kind == "lambda_q") {
      f = cml::lambda_q_window(window, Q);
    } else if (kind == "t_nu") {
      f = cml::model_t_nu(params);
    } else if (kind == "t_nu_plus") {
      f = cml::model_t_nu_plus(params, cml::beta_sieve_weights(level, zz));
    } else {
      const auto theta = cml::sieve_theta_window(cml::beta_sieve_weights(level, zz), window);
      f = cml::ArithFn(lo + 1, std::vector<double>(theta.begin(), theta.end()));
    }
    auto csv = open_output("model_" + kind + ".csv");
    cml::write_config_header(csv, config);
    csv << "n,value\n";
    for (std::int64_t n = lo + 1; n <= hi; ++n) csv << n << ',' << format_number(f(n)) << '\n';
    return kOk;
  }
};

// --- configuration plumbing ----------------------------------------------------

std::string env_name(const std::string& option) {
  std::string out = "CML_";
  for (char ch : option) out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

void bind_environment(CLI::App* app) {
  for (CLI::Option* opt : app->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config") continue;
    opt->envname(env_name(names.front()));
  }
}

CLI::App* selected_leaf(CLI::App* app) {
  for (CLI::App* sub : app->get_subcommands()) return selected_leaf(sub);
  return app;
}

// Applies key=value entries from the config file to options that were not
// given on the command line or through the environment.
void apply_config_file(const std::string& path, CLI::App* leaf, CLI::App* root) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot read config file " + path);
  const auto items = CLI::ConfigINI().from_config(in);
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty()) throw InvalidSpec("config: sections are not supported (" + item.fullname() + ")");
    CLI::Option* opt = leaf->get_option_no_throw("--" + item.name);
    if (opt == nullptr) opt = root->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") throw InvalidSpec("config: unknown key '" + item.name + "'");
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cml: circle-method toolkit experiments"};
  app.require_subcommand(1);
  std::size_t workers = 0;
  std::string config_path;
  app.add_option("--workers", workers, "worker threads (default: all cores)");
  app.add_option("--config", config_path, "key=value file of subcommand parameters");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();

  GallagherCmd gallagher;
  LambdaShortCmd lambda_short;
  SieveShortCmd sieve_short;
  ClosenessCmd closeness;
  PipelineCmd pipeline;
  ExceptionalCmd exceptional;
  SeriesCmd series;
  ModelCmd model;
  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "run a verification harness");
  verify->require_subcommand(1);

  auto* g = verify->add_subcommand("gallagher", "Gallagher inequality on random +-1 functions");
  g->add_option("--delta", gallagher.spec.delta)->capture_default_str();
  g->add_option("--trials", gallagher.spec.trials)->capture_default_str();
  g->add_option("--seed", gallagher.spec.seed)->capture_default_str();
  g->add_option("--start", gallagher.spec.start)->capture_default_str();
  g->add_option("--span", gallagher.spec.span)->capture_default_str();
  g->add_option("--samples_per_unit", gallagher.spec.samples_per_unit)->capture_default_str();
  g->callback([&] { action = [&] { return gallagher.run(); }; });

  auto* ls = verify->add_subcommand("lambda_q_short", "short sums of Lambda_Q over a grid");
  ls->add_option("--Q", lambda_short.Q)->capture_default_str();
  ls->add_option("--grid", lambda_short.grid)->check(CLI::IsMember({"singleton", "small", "full"}))->capture_default_str();
  ls->callback([&] { action = [&] { return lambda_short.run(); }; });

  auto* ss = verify->add_subcommand("sieve_short", "short sums of the beta-sieve over a grid");
  ss->add_option("--z", sieve_short.z)->capture_default_str();
  ss->add_option("--D", sieve_short.D)->capture_default_str();
  ss->add_option("--grid", sieve_short.grid)->check(CLI::IsMember({"singleton", "small", "full"}))->capture_default_str();
  ss->callback([&] { action = [&] { return sieve_short.run(); }; });

  auto* cl = verify->add_subcommand("closeness", "closeness of Lambda', T_nu and T_nu^+");
  cl->add_option("--Y", closeness.Y)->capture_default_str();
  cl->add_option("--H", closeness.H, "default Y^0.3");
  cl->add_option("--Q", closeness.Q)->capture_default_str();
  cl->add_option("--c_nu", closeness.c_nu)->capture_default_str();
  cl->add_option("--D", closeness.D, "sieve level, default max(H^0.1, Q^11)");
  cl->callback([&] { action = [&] { return closeness.run(); }; });

  auto* pl = app.add_subcommand("pipeline", "minorant-transfer pipeline");
  pl->add_option("--preset", pipeline.preset)->check(CLI::IsMember({"desk-small", "desk-medium"}));
  pl->add_option("--X", pipeline.X);
  pl->add_option("--Y", pipeline.Y);
  pl->add_option("--H", pipeline.H);
  pl->add_option("--Q", pipeline.Q);
  pl->add_option("--A", pipeline.A);
  pl->add_option("--c_nu", pipeline.c_nu);
  pl->add_option("--c_omega", pipeline.c_omega);
  pl->add_option("--kappa", pipeline.kappa);
  pl->add_option("--theta", pipeline.theta);
  pl->add_option("--sieve_z", pipeline.sieve_z);
  pl->add_option("--sieve_D", pipeline.sieve_D);
  pl->add_option("--threshold", pipeline.threshold);
  pl->add_flag("--collapsed", pipeline.collapsed, "T_nu = T_nu^+ = nu");
  pl->callback([&] { action = [&] { return pipeline.run(); }; });

  auto* ex = app.add_subcommand("exceptional", "even n in [X - H, X] that are not Goldbach");
  ex->add_option("--X", exceptional.X)->required();
  ex->add_option("--H", exceptional.H)->required();
  ex->callback([&] { action = [&] { return exceptional.run(); }; });

  auto* se = app.add_subcommand("series", "singular series table");
  se->add_option("--from", series.from)->capture_default_str();
  se->add_option("--to", series.to)->capture_default_str();
  se->add_option("--q_max", series.q_max)->capture_default_str();
  se->callback([&] { action = [&] { return series.run(); }; });

  auto* mo = app.add_subcommand("model", "dump Lambda_Q, T_nu, T_nu^+ or theta on a window");
  mo->add_option("--kind", model.kind)->check(CLI::IsMember({"lambda_q", "t_nu", "t_nu_plus", "theta"}))->capture_default_str();
  mo->add_option("--lo", model.lo)->capture_default_str();
  mo->add_option("--hi", model.hi)->capture_default_str();
  mo->add_option("--Q", model.Q)->capture_default_str();
  mo->add_option("--c_nu", model.c_nu)->capture_default_str();
  mo->add_option("--z", model.z, "default max(2, Q)");
  mo->add_option("--D", model.D, "default: untruncated level");
  mo->callback([&] { action = [&] { return model.run(); }; });

  bind_environment(&app);
  for (CLI::App* sub : {g, ls, ss, cl, pl, ex, se, mo}) bind_environment(sub);

  try {
    // Leaf callbacks only record the action; the config file is applied
    // after parsing so that flags and environment take precedence.
    app.parse(argc, argv);
    if (!config_path.empty()) apply_config_file(config_path, selected_leaf(&app), &app);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }

  if (workers > 0) cml::set_worker_count(workers);
  try {
    return action();
  } catch (const cml::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const cml::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const cml::ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kInvalid;
}
