#include "expsum/serialize.hpp"

namespace expsum {

using nlohmann::json;

json json_of(const Measure& mu) {
  json masses = json::array();
  for (std::int64_t x = 0; x < mu.modulus(); ++x) {
    masses.push_back(rational_to_string(mu.mass(x)));
  }
  return json{{"p", mu.modulus()}, {"mass", std::move(masses)}};
}

Measure measure_from_json(const json& j) {
  const auto p = j.at("p").get<std::int64_t>();
  std::vector<Rational> mass;
  mass.reserve(j.at("mass").size());
  for (const auto& entry : j.at("mass")) {
    mass.push_back(rational_from_string(entry.get<std::string>()));
  }
  return Measure::from_rationals(p, mass);
}

json json_of(const ExpSumResult& r) {
  return json{{"xi", r.xi},
              {"value", {r.value.real(), r.value.imag()}},
              {"magnitude", r.magnitude},
              {"normalized", r.normalized}};
}

json json_of(const EmpiricalBound& b) {
  return json{{"p", b.p},
              {"subgroup_order", b.subgroup_order},
              {"max_nontrivial", b.max_nontrivial},
              {"argmax_xi", b.argmax_xi},
              {"beta_emp", b.beta_emp}};
}

json json_of(const LambdaBoundsReport& r) {
  return json{{"delta", rational_to_string(r.delta)},
              {"lambda_size", r.lambda_size},
              {"upper_rhs", r.upper_rhs},
              {"upper_ok", r.upper_ok},
              {"lower_applicable", r.lower_applicable},
              {"lower_rhs", r.lower_rhs},
              {"lower_ok", r.lower_ok}};
}

json json_of(const SpectrumReport& r) {
  json iterations = json::array();
  for (const auto& [k, delta] : r.iterations) {
    iterations.push_back(json{{"k", k}, {"delta", rational_to_string(delta)}});
  }
  return json{{"delta", rational_to_string(r.delta)},
              {"lambda_set", r.lambda_set},
              {"k", r.k},
              {"eta", rational_to_string(r.eta)},
              {"l2_spectral_mass", r.l2_spectral_mass},
              {"l2_spectral_mass_exact", rational_to_string(r.l2_spectral_mass_exact)},
              {"iterations", std::move(iterations)},
              {"clamped_coeffs", r.clamped_coeffs}};
}

json json_of(const SmearReport& r) {
  return json{{"k", r.k},
              {"min_margin", r.min_margin},
              {"argmin_xi", r.argmin_xi},
              {"clamped_coeffs", r.clamped_coeffs}};
}

json json_of(const StatMultReport& r) {
  return json{{"k", r.k},
              {"delta", rational_to_string(r.delta)},
              {"eta", rational_to_string(r.eta)},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"spectral_l2", r.spectral_l2},
              {"margin", r.margin},
              {"trivial_upper_ok", r.trivial_upper_ok}};
}

json json_of(const ExtractionResult& r) {
  return json{{"a_prime", r.A_prime},
              {"doubling", r.doubling},
              {"cond_doubling", r.cond_doubling},
              {"cond_size", r.cond_size},
              {"certified", r.certified},
              {"strategy", r.strategy}};
}

json json_of(const HypothesisReport& r) {
  return json{{"delta", rational_to_string(r.delta_param)},
              {"corr_lhs", rational_to_string(r.corr_lhs)},
              {"corr_rhs", rational_to_string(r.corr_rhs)},
              {"corr_ok", r.corr_ok},
              {"mass_at_zero", rational_to_string(r.mass_at_zero)},
              {"l2_mass", rational_to_string(r.l2_mass)},
              {"quarter_delta", rational_to_string(r.quarter_delta)},
              {"mass_zero_ok", r.mass_zero_ok},
              {"l2_ok", r.l2_ok},
              {"pass", r.pass}};
}

json json_of(const StageRecord& r) {
  return json{{"name", r.name},
              {"relation", r.relation},
              {"lhs", rational_to_string(r.lhs)},
              {"rhs", rational_to_string(r.rhs)},
              {"pass", r.pass},
              {"set_size", r.set_size}};
}

json json_of(const PipelineCertificate& c) {
  json stages = json::array();
  for (const auto& stage : c.stages) stages.push_back(json_of(stage));
  return json{{"schema", "cert/1"},
              {"p", c.p},
              {"delta", rational_to_string(c.delta_param)},
              {"hypotheses", json_of(c.hypotheses)},
              {"stages", std::move(stages)},
              {"sets",
               {{"S1", c.S1},
                {"S2", c.S2},
                {"T", c.T},
                {"S3", c.S3},
                {"S0", c.S0},
                {"S4", c.S4}}},
              {"sum_set_size", c.sum_set_size},
              {"prod_set_size", c.prod_set_size},
              {"spectral_l2", rational_to_string(c.spectral_l2)},
              {"all_pass", c.all_pass}};
}

json json_of(const ContradictionReport& r) {
  json out{{"schema", "cert/1"},
           {"p", r.p},
           {"subgroup_order", r.subgroup_order},
           {"alpha", r.alpha},
           {"eta", rational_to_string(r.eta)},
           {"selection", json_of(r.selection)},
           {"max_nontrivial", r.max_nontrivial},
           {"witness_xi", r.witness_xi},
           {"delta_param", rational_to_string(r.delta_param)},
           {"supnorm_guard_ok", r.supnorm_guard_ok},
           {"branch", r.branch}};
  if (r.hypotheses) out["hypotheses"] = json_of(*r.hypotheses);
  if (r.certificate) out["certificate"] = json_of(*r.certificate);
  if (r.score) {
    out["sum_product_score"] = json{
        {"sum_size", r.score->sum_size},
        {"prod_size", r.score->prod_size},
        {"score", r.score->score},
    };
    if (r.score->exponent) out["sum_product_score"]["exponent"] = *r.score->exponent;
  }
  return out;
}

json json_of(const TranslateReport& r) {
  return json{{"xi", r.xi}, {"l", r.l},   {"lhs", r.lhs},
              {"rhs", r.rhs}, {"margin", r.margin}};
}

json json_of(const IncompleteSmearReport& r) {
  return json{{"hypothesis_present", r.hypothesis_present},
              {"xi0", r.xi0},
              {"k", r.k},
              {"delta", rational_to_string(r.delta)},
              {"eta", rational_to_string(r.eta)},
              {"T", r.T},
              {"H1_size", r.H1_size},
              {"min_avg_margin", r.min_avg_margin},
              {"min_chain_margin", r.min_chain_margin},
              {"final_lhs", r.final_lhs},
              {"final_rhs", r.final_rhs},
              {"final_margin", r.final_margin},
              {"spectral_l2", r.spectral_l2}};
}

}  // namespace expsum
