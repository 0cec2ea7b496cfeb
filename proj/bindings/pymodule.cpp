#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "expsum/bgs.hpp"
#include "expsum/exp_sums.hpp"
#include "expsum/field.hpp"
#include "expsum/measure.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/scan.hpp"
#include "expsum/serialize.hpp"
#include "expsum/spectrum.hpp"

namespace py = pybind11;
using namespace expsum;

namespace {

Rational rat(const std::string& s) { return rational_from_string(s); }

// Reports round-trip through their JSON form; python gets plain dicts.
template <typename T>
py::object as_py(const T& value) {
  const auto json = py::module_::import("json");
  return json.attr("loads")(json_of(value).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exponential sums over multiplicative subgroups of F_p: exact "
            "measures, spectra, and set-construction certificates";

  py::register_exception<Error>(m, "ExpsumError");

  py::class_<FieldContext>(m, "FieldContext")
      .def_readonly("p", &FieldContext::p)
      .def_readonly("g", &FieldContext::g)
      .def("discrete_log",
           [](const FieldContext& ctx, std::int64_t s) { return discrete_log(ctx, s); })
      .def("element_order",
           [](const FieldContext& ctx, std::int64_t x) { return element_order(ctx, x); })
      .def("pow_g", &FieldContext::pow_g);

  py::class_<SubgroupSpec>(m, "SubgroupSpec")
      .def_property_readonly("elements",
                             [](const SubgroupSpec& H) { return H.elements; })
      .def_property_readonly("order", &SubgroupSpec::order)
      .def_property_readonly("is_segment", [](const SubgroupSpec& H) {
        return H.kind == SubgroupKind::Segment;
      });

  py::class_<Measure>(m, "Measure")
      .def_property_readonly("p", &Measure::modulus)
      .def("mass", [](const Measure& mu, std::int64_t x) {
        return rational_to_string(mu.mass(x));
      })
      .def("mass_float", &Measure::mass_double)
      .def("masses", &Measure::mass_doubles)
      .def("support", &Measure::support)
      .def("spectrum", [](const Measure& mu) { return mu.spectrum(); })
      .def("l2_mass", [](const Measure& mu) { return rational_to_string(mu.l2_mass()); })
      .def("to_json", [](const Measure& mu) { return json_of(mu).dump(); });

  m.def("make_field_context",
        [](std::int64_t p, std::optional<std::int64_t> p_cap) {
          return make_field_context(p, p_cap.value_or(default_p_cap()));
        },
        py::arg("p"), py::arg("p_cap") = std::nullopt);
  m.def("subgroup", &subgroup, py::arg("ctx"), py::arg("index"));
  m.def("segment", &segment, py::arg("ctx"), py::arg("g0"), py::arg("T"));

  m.def("uniform_on",
        [](std::int64_t p, const std::vector<std::int64_t>& support) {
          return uniform_on(p, support);
        });
  m.def("subgroup_measure",
        [](const FieldContext& ctx, const SubgroupSpec& H) { return uniform_on(ctx, H); });
  m.def("point_mass", &point_mass);
  m.def("reflect", &reflect);
  m.def("convolve", &convolve);
  m.def("k_fold_nu", &k_fold_nu, py::arg("mu"), py::arg("k"));
  m.def("phi_values", [](const Measure& mu) {
    const auto phi = phi_of(mu);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(phi.p));
    for (std::int64_t x = 0; x < phi.p; ++x) {
      out.push_back(rational_to_string(phi.at(x)));
    }
    return out;
  });

  m.def("lambda_delta",
        [](const Measure& mu, const std::string& delta) {
          return lambda_delta(mu, rat(delta));
        },
        py::arg("mu"), py::arg("delta"));
  m.def("select_k_delta",
        [](const Measure& mu, const std::string& eta, std::int64_t k_cap) {
          return as_py(select_k_delta(mu, rat(eta), {.k_cap = k_cap}));
        },
        py::arg("mu"), py::arg("eta"), py::arg("k_cap") = 64);
  m.def("check_lambda_bounds",
        [](const FieldContext& ctx, const SubgroupSpec& H, const std::string& delta) {
          return as_py(check_lambda_bounds(ctx, H, rat(delta)));
        });
  m.def("check_smear_out",
        [](const FieldContext& ctx, const SubgroupSpec& H, std::int64_t k) {
          return as_py(check_smear_out(ctx, H, k));
        });
  m.def("check_statistical_mult",
        [](const FieldContext& ctx, const SubgroupSpec& H, const std::string& eta,
           std::int64_t k_cap) {
          return as_py(check_statistical_mult(ctx, H, rat(eta), {.k_cap = k_cap}));
        },
        py::arg("ctx"), py::arg("H"), py::arg("eta"), py::arg("k_cap") = 64);

  m.def("exp_sum",
        [](const FieldContext& ctx, const SubgroupSpec& H, std::int64_t xi) {
          return as_py(exp_sum(ctx, H, xi));
        });
  m.def("max_nontrivial_fourier",
        [](const FieldContext& ctx, const SubgroupSpec& H) {
          return as_py(max_nontrivial_fourier(ctx, H));
        });
  m.def("complete_sum_bound_check", &complete_sum_bound_check);
  m.def("build_H1",
        [](const FieldContext& ctx, std::int64_t g0, std::int64_t T,
           const std::string& delta) { return build_H1(ctx, g0, T, rat(delta)); });
  m.def("check_translate_inequality",
        [](const FieldContext& ctx, std::int64_t g0, std::int64_t T,
           const std::string& delta, std::int64_t xi, std::int64_t l) {
          return as_py(check_translate_inequality(ctx, g0, T, rat(delta), xi, l));
        });
  m.def("check_incomplete_smear",
        [](const FieldContext& ctx, std::int64_t g0, std::int64_t T,
           const std::string& eta, std::int64_t k_cap) {
          return as_py(check_incomplete_smear(ctx, g0, T, rat(eta), {.k_cap = k_cap}));
        },
        py::arg("ctx"), py::arg("g0"), py::arg("T"), py::arg("eta"),
        py::arg("k_cap") = 64);

  m.def("sumset", &sumset);
  m.def("productset", &productset);
  m.def("sum_product_score", [](const std::vector<std::int64_t>& A, std::int64_t p) {
    const auto score = sum_product_score(A, p);
    py::dict out;
    out["sum_size"] = score.sum_size;
    out["prod_size"] = score.prod_size;
    out["score"] = score.score;
    out["exponent"] = score.exponent ? py::cast(*score.exponent) : py::none();
    return out;
  });
  m.def("bgs_extract",
        [](std::int64_t n, const std::vector<std::int64_t>& A,
           const std::vector<std::int64_t>& B,
           const std::vector<std::pair<std::int64_t, std::int64_t>>& G,
           const std::string& N, const std::string& alpha) {
          return as_py(bgs_extract(BgsInstance::make(n, A, B, G, rat(N), rat(alpha))));
        },
        py::arg("n"), py::arg("A"), py::arg("B"), py::arg("G"), py::arg("N"),
        py::arg("alpha"));

  m.def("verify_hypotheses",
        [](const Measure& mu, const std::string& Delta) {
          return as_py(verify_hypotheses(mu, rat(Delta)));
        });
  m.def("run_pipeline",
        [](const Measure& mu, const std::string& Delta) {
          return as_py(run_pipeline(mu, rat(Delta)));
        });
  m.def("assemble_contradiction",
        [](const FieldContext& ctx, const SubgroupSpec& H, const std::string& eta,
           std::optional<std::string> delta) {
          std::optional<Rational> delta_param;
          if (delta) delta_param = rat(*delta);
          return as_py(assemble_contradiction(ctx, H, rat(eta), delta_param));
        },
        py::arg("ctx"), py::arg("H"), py::arg("eta"),
        py::arg("delta") = std::nullopt);

  m.def("run_scan",
        [](std::int64_t p_min, std::int64_t p_max,
           const std::vector<std::int64_t>& index_list, int parallelism) {
          ScanConfig config;
          config.p_min = p_min;
          config.p_max = p_max;
          config.index_list = index_list;
          config.parallelism = parallelism;
          std::vector<ResultRow> rows;
          const auto summary = run_scan(config, &rows);
          py::list out;
          for (const auto& row : rows) {
            py::dict d;
            d["p"] = row.p;
            d["subgroup_order"] = row.subgroup_order;
            d["index"] = row.index;
            d["alpha"] = row.alpha;
            d["max_coeff"] = row.max_coeff;
            d["beta_emp"] = row.beta_emp;
            d["argmax_xi"] = row.argmax_xi;
            out.append(d);
          }
          py::dict result;
          result["rows"] = out;
          result["row_count"] = summary.row_count;
          result["max_beta_emp"] = summary.max_beta_emp;
          result["determinism_hash"] = summary.determinism_hash;
          return result;
        },
        py::arg("p_min"), py::arg("p_max"),
        py::arg("index_list") = std::vector<std::int64_t>{},
        py::arg("parallelism") = 1);

  m.attr("__version__") = "0.1.0";
}
