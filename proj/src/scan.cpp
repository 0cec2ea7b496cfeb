#include "expsum/scan.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>

#include "expsum/exp_sums.hpp"
#include "expsum/field.hpp"

namespace expsum {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<ResultRow> scan_prime(std::int64_t p, const ScanConfig& config) {
  const FieldContext ctx = make_field_context(p, config.p_cap > 0 ? config.p_cap
                                                                  : default_p_cap());
  std::vector<std::int64_t> indices;
  if (!config.index_list.empty()) {
    for (std::int64_t m : config.index_list) {
      if (m >= 1 && (p - 1) % m == 0) indices.push_back(m);
    }
  } else {
    indices = divisors(p - 1);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  std::vector<ResultRow> rows;
  for (std::int64_t m : indices) {
    const auto t0 = std::chrono::steady_clock::now();
    const SubgroupSpec H = subgroup(ctx, m);
    const double alpha = std::log(static_cast<double>(H.order())) /
                         std::log(static_cast<double>(p));
    if (config.alpha_min && alpha < *config.alpha_min) continue;
    const EmpiricalBound bound = max_nontrivial_fourier(ctx, H);
    const auto t1 = std::chrono::steady_clock::now();
    ResultRow row;
    row.p = p;
    row.subgroup_order = H.order();
    row.index = m;
    row.alpha = alpha;
    row.max_coeff = bound.max_nontrivial;
    row.beta_emp = bound.beta_emp;
    row.argmax_xi = bound.argmax_xi;
    row.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

bool ResultRow::same_data(const ResultRow& other) const {
  return p == other.p && subgroup_order == other.subgroup_order &&
         index == other.index && alpha == other.alpha &&
         max_coeff == other.max_coeff && beta_emp == other.beta_emp &&
         argmax_xi == other.argmax_xi;
}

ScanSummary run_scan(const ScanConfig& config, std::vector<ResultRow>* rows_out) {
  const std::int64_t cap = config.p_cap > 0 ? config.p_cap : default_p_cap();
  if (config.p_min > config.p_max) {
    fail(ErrorCode::InvalidArgument, "p_min exceeds p_max");
  }
  if (config.p_max > cap) {
    fail(ErrorCode::TooLarge, "p_max exceeds cap " + std::to_string(cap));
  }
  if (config.parallelism < 1) {
    fail(ErrorCode::InvalidArgument, "parallelism must be >= 1");
  }
  if (config.eta <= 0) fail(ErrorCode::InvalidArgument, "eta must be positive");

  auto primes = primes_in_range(std::max<std::int64_t>(config.p_min, 3), config.p_max);

  std::vector<ResultRow> rows;
  if (config.parallelism == 1 || primes.size() <= 1) {
    for (std::int64_t p : primes) {
      auto batch = scan_prime(p, config);
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
  } else {
    const int workers =
        std::min<int>(config.parallelism, static_cast<int>(primes.size()));
    std::vector<std::future<std::vector<ResultRow>>> futures;
    futures.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        std::vector<ResultRow> local;
        for (std::size_t i = static_cast<std::size_t>(w); i < primes.size();
             i += static_cast<std::size_t>(workers)) {
          auto batch = scan_prime(primes[i], config);
          local.insert(local.end(), batch.begin(), batch.end());
        }
        return local;
      }));
    }
    for (auto& f : futures) {
      auto batch = f.get();
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.index < b.index;
  });

  ScanSummary summary;
  summary.row_count = static_cast<std::int64_t>(rows.size());
  summary.max_beta_emp = 0.0;
  for (const auto& row : rows) {
    summary.max_beta_emp = std::max(summary.max_beta_emp, row.beta_emp);
  }
  summary.determinism_hash = determinism_hash(rows);
  if (rows_out) *rows_out = std::move(rows);
  return summary;
}

std::string determinism_hash(const std::vector<ResultRow>& rows) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& row : rows) {
    mix(std::to_string(row.p) + "," + std::to_string(row.subgroup_order) + "," +
        std::to_string(row.index) + "," + fmt_double(row.alpha) + "," +
        fmt_double(row.max_coeff) + "," + fmt_double(row.beta_emp) + "," +
        std::to_string(row.argmax_xi) + "\n");
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows,
                    const ScanSummary& summary) {
  os << "p,subgroup_order,index,alpha,max_coeff,beta_emp,argmax_xi,elapsed_ms\n";
  for (const auto& row : rows) {
    os << row.p << ',' << row.subgroup_order << ',' << row.index << ','
       << fmt_double(row.alpha) << ',' << fmt_double(row.max_coeff) << ','
       << fmt_double(row.beta_emp) << ',' << row.argmax_xi << ','
       << row.elapsed_ms << '\n';
  }
  os << "# rows=" << summary.row_count
     << " max_beta_emp=" << fmt_double(summary.max_beta_emp)
     << " hash=" << summary.determinism_hash << '\n';
}

std::vector<ResultRow> parse_rows_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("p,", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) fail(ErrorCode::IoError, "bad CSV row: " + line);
    ResultRow row;
    row.p = std::stoll(fields[0]);
    row.subgroup_order = std::stoll(fields[1]);
    row.index = std::stoll(fields[2]);
    row.alpha = std::stod(fields[3]);
    row.max_coeff = std::stod(fields[4]);
    row.beta_emp = std::stod(fields[5]);
    row.argmax_xi = std::stoll(fields[6]);
    row.elapsed_ms = std::stoll(fields[7]);
    rows.push_back(row);
  }
  return rows;
}

void write_rows_jsonl(std::ostream& os, const std::vector<ResultRow>& rows,
                      const ScanSummary& summary) {
  for (const auto& row : rows) {
    nlohmann::json j{{"p", row.p},
                     {"subgroup_order", row.subgroup_order},
                     {"index", row.index},
                     {"alpha", row.alpha},
                     {"max_coeff", row.max_coeff},
                     {"beta_emp", row.beta_emp},
                     {"argmax_xi", row.argmax_xi},
                     {"elapsed_ms", row.elapsed_ms}};
    os << j.dump() << '\n';
  }
  nlohmann::json s{{"summary",
                    {{"rows", summary.row_count},
                     {"max_beta_emp", summary.max_beta_emp},
                     {"hash", summary.determinism_hash}}}};
  os << s.dump() << '\n';
}

std::vector<ResultRow> parse_rows_jsonl(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) continue;
    ResultRow row;
    row.p = j.at("p").get<std::int64_t>();
    row.subgroup_order = j.at("subgroup_order").get<std::int64_t>();
    row.index = j.at("index").get<std::int64_t>();
    row.alpha = j.at("alpha").get<double>();
    row.max_coeff = j.at("max_coeff").get<double>();
    row.beta_emp = j.at("beta_emp").get<double>();
    row.argmax_xi = j.at("argmax_xi").get<std::int64_t>();
    row.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    rows.push_back(row);
  }
  return rows;
}

void apply_config_entry(ScanConfig& config, const std::string& key,
                        const std::string& value) {
  try {
    if (key == "p_min") config.p_min = std::stoll(value);
    else if (key == "p_max") config.p_max = std::stoll(value);
    else if (key == "index") {
      config.index_list.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) config.index_list.push_back(std::stoll(item));
      }
    } else if (key == "alpha_min") config.alpha_min = std::stod(value);
    else if (key == "eta") config.eta = rational_from_string(value);
    else if (key == "output") config.output_path = value;
    else if (key == "format") {
      if (value == "csv") config.format = ScanConfig::Format::Csv;
      else if (value == "jsonl") config.format = ScanConfig::Format::Jsonl;
      else fail(ErrorCode::InvalidArgument, "format must be csv or jsonl");
    } else if (key == "parallelism") config.parallelism = std::stoi(value);
    else fail(ErrorCode::InvalidArgument, "unknown config key: " + key);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "bad value for " + key + ": " + value);
  }
}

ScanConfig load_scan_config(std::istream& is) {
  ScanConfig config;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    apply_config_entry(config, key, value);
  }
  return config;
}

}  // namespace expsum
