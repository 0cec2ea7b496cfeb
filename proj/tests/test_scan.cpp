#include <doctest.h>

#include <cmath>
#include <sstream>

#include "expsum/errors.hpp"
#include "expsum/scan.hpp"

using namespace expsum;

TEST_CASE("scan over a single prime lists every subgroup") {
  ScanConfig config;
  config.p_min = 7;
  config.p_max = 7;
  std::vector<ResultRow> rows;
  const auto summary = run_scan(config, &rows);
  CHECK(summary.row_count == 4);  // divisors of 6: 1, 2, 3, 6
  CHECK(rows[0].index == 1);
  CHECK(rows[1].index == 2);
  CHECK(rows[2].index == 3);
  CHECK(rows[3].index == 6);
  CHECK(rows[1].max_coeff == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-9));
  for (const auto& row : rows) {
    CHECK(row.beta_emp ==
          doctest::Approx(-std::log(row.max_coeff) / std::log(7.0)).epsilon(1e-12));
  }
}

TEST_CASE("a primeless range yields an empty file with a summary") {
  ScanConfig config;
  config.p_min = 24;
  config.p_max = 28;
  std::vector<ResultRow> rows;
  const auto summary = run_scan(config, &rows);
  CHECK(summary.row_count == 0);
  CHECK(rows.empty());
  std::ostringstream os;
  write_rows_csv(os, rows, summary);
  CHECK(os.str().find("# rows=0") != std::string::npos);
}

TEST_CASE("index filter keeps only matching subgroups") {
  ScanConfig config;
  config.p_min = 7;
  config.p_max = 23;
  config.index_list = {2};
  std::vector<ResultRow> rows;
  const auto summary = run_scan(config, &rows);
  CHECK(summary.row_count == 6);  // p in {7, 11, 13, 17, 19, 23}
  for (const auto& row : rows) CHECK(row.index == 2);
  CHECK(rows.front().p == 7);
  CHECK(rows.back().p == 23);
}

TEST_CASE("alpha filter drops small subgroups") {
  ScanConfig config;
  config.p_min = 31;
  config.p_max = 31;
  config.alpha_min = 0.5;
  std::vector<ResultRow> rows;
  run_scan(config, &rows);
  for (const auto& row : rows) CHECK(row.alpha >= 0.5);
  CHECK(!rows.empty());
}

TEST_CASE("csv and jsonl round-trip") {
  ScanConfig config;
  config.p_min = 7;
  config.p_max = 31;
  std::vector<ResultRow> rows;
  const auto summary = run_scan(config, &rows);

  std::stringstream csv;
  write_rows_csv(csv, rows, summary);
  const auto csv_rows = parse_rows_csv(csv);
  REQUIRE(csv_rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(csv_rows[i].same_data(rows[i]));
    CHECK(csv_rows[i].elapsed_ms == rows[i].elapsed_ms);
  }

  std::stringstream jsonl;
  write_rows_jsonl(jsonl, rows, summary);
  const auto jsonl_rows = parse_rows_jsonl(jsonl);
  REQUIRE(jsonl_rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(jsonl_rows[i].same_data(rows[i]));
  }
}

TEST_CASE("determinism across repeats and worker counts") {
  ScanConfig config;
  config.p_min = 7;
  config.p_max = 101;
  config.index_list = {2};
  const auto first = run_scan(config, nullptr);
  const auto second = run_scan(config, nullptr);
  CHECK(first.determinism_hash == second.determinism_hash);
  config.parallelism = 4;
  const auto parallel = run_scan(config, nullptr);
  CHECK(parallel.determinism_hash == first.determinism_hash);
}

TEST_CASE("config parsing") {
  std::istringstream is(
      "# comment\n"
      "p_min = 5\n"
      "p_max = 13\n"
      "index = 1,2\n"
      "eta = 1/4\n"
      "format = jsonl\n"
      "parallelism = 2\n"
      "output = /tmp/out.jsonl\n");
  const auto config = load_scan_config(is);
  CHECK(config.p_min == 5);
  CHECK(config.p_max == 13);
  CHECK(config.index_list == std::vector<std::int64_t>{1, 2});
  CHECK(config.eta == Rational(1, 4));
  CHECK(config.format == ScanConfig::Format::Jsonl);
  CHECK(config.parallelism == 2);
  CHECK(config.output_path == "/tmp/out.jsonl");

  ScanConfig c;
  CHECK_THROWS_AS(apply_config_entry(c, "nonsense", "1"), Error);
  CHECK_THROWS_AS(apply_config_entry(c, "format", "xml"), Error);
}

TEST_CASE("config invariants are enforced") {
  ScanConfig config;
  config.p_min = 50;
  config.p_max = 20;
  CHECK_THROWS_AS(run_scan(config, nullptr), Error);
  config.p_min = 3;
  config.p_max = 1000000000;
  CHECK_THROWS_AS(run_scan(config, nullptr), Error);
  config.p_max = 20;
  config.parallelism = 0;
  CHECK_THROWS_AS(run_scan(config, nullptr), Error);
}
