#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "expsum/exp_sums.hpp"
#include "expsum/field.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/scan.hpp"
#include "expsum/serialize.hpp"
#include "expsum/verify.hpp"

namespace {

using expsum::Error;
using expsum::ErrorCode;
using expsum::Rational;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InequalityViolated:
    case ErrorCode::StageViolation:
    case ErrorCode::LoopCapExceeded:
    case ErrorCode::ExtractionFailed:
    case ErrorCode::BoundaryAmbiguity:
    case ErrorCode::HypothesesFail:
    case ErrorCode::HypothesesEffectivelyEmpty:
      return kExitViolation;
    default:
      return kExitUsage;
  }
}

struct GlobalOptions {
  std::int64_t p_cap = 0;  // 0: EXPSUM_P_CAP or built-in default
  std::uint64_t seed = 20240601;
  std::vector<std::string> tolerance_overrides;

  std::int64_t cap() const {
    return p_cap > 0 ? p_cap : expsum::default_p_cap();
  }

  expsum::Tolerances tolerances() const {
    expsum::Tolerances tol;
    for (const auto& entry : tolerance_overrides) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) {
        expsum::fail(ErrorCode::InvalidArgument,
                     "tolerance override needs name=value: " + entry);
      }
      const std::string name = entry.substr(0, eq);
      const double value = std::stod(entry.substr(eq + 1));
      if (name == "parseval") tol.parseval = value;
      else if (name == "duality") tol.duality = value;
      else if (name == "dual_path") tol.dual_path = value;
      else expsum::fail(ErrorCode::InvalidArgument, "unknown tolerance: " + name);
    }
    return tol;
  }
};

int cmd_analyze(const GlobalOptions& global, std::int64_t p, std::int64_t index,
                std::int64_t xi) {
  const auto ctx = expsum::make_field_context(p, global.cap());
  const auto H = expsum::subgroup(ctx, index);
  nlohmann::json out{{"p", p},
                     {"index", index},
                     {"subgroup_order", H.order()},
                     {"empirical", json_of(expsum::max_nontrivial_fourier(ctx, H))}};
  if (xi >= 0) out["exp_sum"] = json_of(expsum::exp_sum(ctx, H, xi));
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_scan(const expsum::ScanConfig& config) {
  if (config.output_path.empty()) {
    expsum::fail(ErrorCode::InvalidArgument, "scan needs output=<path>");
  }
  std::vector<expsum::ResultRow> rows;
  const auto summary = expsum::run_scan(config, &rows);

  std::ofstream os(config.output_path, std::ios::trunc);
  if (!os) expsum::fail(ErrorCode::IoError, "cannot open " + config.output_path);
  try {
    if (config.format == expsum::ScanConfig::Format::Csv) {
      expsum::write_rows_csv(os, rows, summary);
    } else {
      expsum::write_rows_jsonl(os, rows, summary);
    }
    os.flush();
    if (!os) throw std::runtime_error("write failed");
  } catch (...) {
    os.close();
    std::remove(config.output_path.c_str());
    throw;
  }
  std::cout << "rows=" << summary.row_count
            << " max_beta_emp=" << summary.max_beta_emp
            << " hash=" << summary.determinism_hash
            << " output=" << config.output_path << '\n';
  return kExitOk;
}

int cmd_pipeline(const GlobalOptions& global, std::int64_t p, bool uniform,
                 std::int64_t index, const std::optional<Rational>& eta,
                 const std::optional<Rational>& delta) {
  const auto ctx = expsum::make_field_context(p, global.cap());
  if (uniform) {
    std::vector<std::int64_t> all(static_cast<std::size_t>(p));
    for (std::int64_t x = 0; x < p; ++x) all[static_cast<std::size_t>(x)] = x;
    const auto mu = expsum::uniform_on(p, all);
    const auto cert =
        expsum::run_pipeline(ctx, mu, delta.value_or(Rational(1, 2)));
    std::cout << json_of(cert).dump(2) << '\n';
    return cert.all_pass ? kExitOk : kExitViolation;
  }
  const auto H = expsum::subgroup(ctx, index);
  const auto report = expsum::assemble_contradiction(
      ctx, H, eta.value_or(Rational(1, 4)), delta);
  std::cout << json_of(report).dump(2) << '\n';
  return kExitOk;  // every branch is a reported outcome; violations throw
}

int cmd_verify(const GlobalOptions& global, const std::string& suite,
               std::int64_t p_max) {
  expsum::VerifyOptions options;
  options.p_max = std::min(p_max, global.cap());
  options.seed = global.seed;
  options.tol = global.tolerances();

  std::vector<std::string> suites;
  if (suite == "all") {
    suites = expsum::verify_suite_names();
  } else {
    suites = {suite};
  }
  bool ok = true;
  for (const auto& name : suites) {
    const auto result = expsum::run_verify_suite(name, options);
    std::cout << "suite=" << result.suite << " instances=" << result.instances
              << " failures=" << result.failures << " time="
              << result.elapsed_s << "s"
              << (result.failures ? " first_failure=" + result.first_failure : "")
              << '\n';
    ok = ok && result.failures == 0;
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitViolation;
}

int cmd_incomplete(const GlobalOptions& global, std::int64_t p, std::int64_t g0,
                   std::int64_t T, const Rational& eta,
                   const std::optional<Rational>& delta, std::int64_t xi) {
  const auto ctx = expsum::make_field_context(p, global.cap());
  if (g0 == 0) g0 = ctx.g;
  nlohmann::json out{{"p", p}, {"g0", g0}, {"T", T}};
  out["smear"] = json_of(expsum::check_incomplete_smear(ctx, g0, T, eta));
  if (delta) {
    const auto h1 = expsum::build_H1(ctx, g0, T, *delta);
    out["H1"] = {{"delta", expsum::rational_to_string(*delta)},
                 {"size", h1.order()},
                 {"elements", h1.elements}};
    if (xi >= 1) {
      const std::int64_t admissible =
          expsum::count_below_power_bound(Rational(T, 4), p, *delta);
      nlohmann::json translates = nlohmann::json::array();
      for (std::int64_t l = 0; l < admissible; ++l) {
        translates.push_back(
            json_of(expsum::check_translate_inequality(ctx, g0, T, *delta, xi, l)));
      }
      out["translates"] = std::move(translates);
    }
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "expsum: exponential sums over multiplicative subgroups of F_p — "
      "measures, spectra, set-construction certificates"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--p-cap", global.p_cap, "prime cap (default: EXPSUM_P_CAP or 200000)");
  app.add_option("--seed", global.seed, "seed for randomized verification");
  app.add_option("--tolerance-overrides", global.tolerance_overrides,
                 "comma separated name=value overrides (parseval, duality, dual_path)")
      ->delimiter(',');

  auto* analyze = app.add_subcommand("analyze", "character-sum diagnostics for one subgroup");
  std::int64_t a_p = 0, a_index = 1, a_xi = -1;
  analyze->add_option("--p", a_p, "prime modulus")->required();
  analyze->add_option("--index", a_index, "subgroup index m | (p-1)");
  analyze->add_option("--xi", a_xi, "also evaluate the sum at this twist");

  auto* scan = app.add_subcommand("scan", "tabulate empirical cancellation over a prime range");
  expsum::ScanConfig scan_config;
  std::string scan_config_path, scan_format = "csv";
  scan->add_option("--config", scan_config_path, "key=value config file");
  auto* opt_pmin = scan->add_option("--p-min", scan_config.p_min);
  auto* opt_pmax = scan->add_option("--p-max", scan_config.p_max);
  auto* opt_index = scan->add_option("--index", scan_config.index_list,
                                     "subgroup indices (default: all divisors)");
  double scan_alpha_min = 0.0;
  auto* opt_alpha = scan->add_option("--alpha-min", scan_alpha_min);
  std::string scan_eta;
  auto* opt_eta = scan->add_option("--eta", scan_eta, "rational, e.g. 1/4");
  auto* opt_output = scan->add_option("--output", scan_config.output_path);
  auto* opt_format = scan->add_option("--format", scan_format)
                         ->check(CLI::IsMember({"csv", "jsonl"}));
  auto* opt_par = scan->add_option("--parallelism", scan_config.parallelism);

  auto* pipeline = app.add_subcommand("pipeline", "run the set-construction certificate");
  std::int64_t pl_p = 0, pl_index = 0;
  bool pl_uniform = false;
  std::string pl_eta, pl_delta;
  pipeline->add_option("--p", pl_p, "prime modulus")->required();
  auto* opt_pl_index = pipeline->add_option("--index", pl_index, "subgroup index");
  pipeline->add_flag("--uniform", pl_uniform, "use the uniform measure on F_p");
  pipeline->add_option("--eta", pl_eta, "rational eta (subgroup route)");
  pipeline->add_option("--delta", pl_delta, "rational Delta override in (0, 1/2]");

  auto* verify = app.add_subcommand("verify", "run a lemma-verification suite");
  std::string v_suite = "all";
  std::int64_t v_pmax = 101;
  verify->add_option("--suite", v_suite)
      ->check(CLI::IsMember({"parseval", "convolution", "smear", "lemmas",
                             "incomplete", "all"}));
  verify->add_option("--p-max", v_pmax);

  auto* incomplete = app.add_subcommand("incomplete", "segment (incomplete-sum) checks");
  std::int64_t in_p = 0, in_g0 = 0, in_T = 0, in_xi = -1;
  std::string in_eta = "1/4", in_delta;
  incomplete->add_option("--p", in_p)->required();
  incomplete->add_option("--g0", in_g0, "segment generator (default: primitive root)");
  incomplete->add_option("--t", in_T, "segment length T")->required();
  incomplete->add_option("--eta", in_eta, "rational eta");
  incomplete->add_option("--delta", in_delta, "also report H1 at this delta");
  incomplete->add_option("--xi", in_xi, "translate checks at this twist (needs --delta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(global, a_p, a_index, a_xi);
    if (*scan) {
      expsum::ScanConfig config;
      if (!scan_config_path.empty()) {
        std::ifstream is(scan_config_path);
        if (!is) expsum::fail(ErrorCode::IoError, "cannot read " + scan_config_path);
        config = expsum::load_scan_config(is);
      }
      // CLI flags override file values
      if (opt_pmin->count()) config.p_min = scan_config.p_min;
      if (opt_pmax->count()) config.p_max = scan_config.p_max;
      if (opt_index->count()) config.index_list = scan_config.index_list;
      if (opt_alpha->count()) config.alpha_min = scan_alpha_min;
      if (opt_eta->count()) config.eta = expsum::rational_from_string(scan_eta);
      if (opt_output->count()) config.output_path = scan_config.output_path;
      if (opt_format->count()) {
        config.format = scan_format == "jsonl" ? expsum::ScanConfig::Format::Jsonl
                                               : expsum::ScanConfig::Format::Csv;
      }
      if (opt_par->count()) config.parallelism = scan_config.parallelism;
      config.p_cap = global.cap();
      return cmd_scan(config);
    }
    if (*pipeline) {
      if (pl_uniform == (opt_pl_index->count() > 0)) {
        expsum::fail(ErrorCode::InvalidArgument,
                     "pipeline needs exactly one of --uniform / --index");
      }
      std::optional<Rational> eta, delta;
      if (!pl_eta.empty()) eta = expsum::rational_from_string(pl_eta);
      if (!pl_delta.empty()) delta = expsum::rational_from_string(pl_delta);
      return cmd_pipeline(global, pl_p, pl_uniform, pl_index, eta, delta);
    }
    if (*verify) return cmd_verify(global, v_suite, v_pmax);
    if (*incomplete) {
      std::optional<Rational> delta;
      if (!in_delta.empty()) delta = expsum::rational_from_string(in_delta);
      return cmd_incomplete(global, in_p, in_g0, in_T,
                            expsum::rational_from_string(in_eta), delta, in_xi);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
