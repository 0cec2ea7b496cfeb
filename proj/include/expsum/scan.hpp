#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expsum/rational.hpp"

namespace expsum {

struct ScanConfig {
  std::int64_t p_min = 3;
  std::int64_t p_max = 101;
  std::vector<std::int64_t> index_list;  // empty: every divisor of p-1
  std::optional<double> alpha_min;       // keep subgroups with log_p|H| >= alpha_min
  Rational eta = Rational(1, 4);
  std::string output_path;
  enum class Format { Csv, Jsonl } format = Format::Csv;
  int parallelism = 1;
  std::int64_t p_cap = 0;  // 0: use default_p_cap()
};

struct ResultRow {
  std::int64_t p = 0;
  std::int64_t subgroup_order = 0;
  std::int64_t index = 0;
  double alpha = 0.0;      // log_p(order)
  double max_coeff = 0.0;  // max_{ξ≠0} |μ̂_H(ξ)|
  double beta_emp = 0.0;   // -log_p(max_coeff)
  std::int64_t argmax_xi = 0;
  std::int64_t elapsed_ms = 0;

  bool same_data(const ResultRow& other) const;  // ignores elapsed_ms
};

struct ScanSummary {
  std::int64_t row_count = 0;
  double max_beta_emp = 0.0;
  std::string determinism_hash;
};

/// One row per (prime, subgroup) in [p_min, p_max], sorted by (p, index).
/// Parallelizes over primes when config.parallelism > 1; output is
/// deterministic either way.
ScanSummary run_scan(const ScanConfig& config, std::vector<ResultRow>* rows_out);

/// FNV-1a over the canonical row serialization, elapsed_ms excluded.
std::string determinism_hash(const std::vector<ResultRow>& rows);

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows,
                    const ScanSummary& summary);
std::vector<ResultRow> parse_rows_csv(std::istream& is);

void write_rows_jsonl(std::ostream& os, const std::vector<ResultRow>& rows,
                      const ScanSummary& summary);
std::vector<ResultRow> parse_rows_jsonl(std::istream& is);

/// key=value configuration, one per line; '#' starts a comment.
/// Keys: p_min p_max index alpha_min eta output format parallelism.
ScanConfig load_scan_config(std::istream& is);
void apply_config_entry(ScanConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace expsum
