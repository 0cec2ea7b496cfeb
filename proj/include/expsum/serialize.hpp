#pragma once

#include <json.hpp>

#include "expsum/bgs.hpp"
#include "expsum/exp_sums.hpp"
#include "expsum/measure.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/spectrum.hpp"

namespace expsum {

/// {"p": ..., "mass": ["num/den", ...]} — the fixture format.
nlohmann::json json_of(const Measure& mu);
Measure measure_from_json(const nlohmann::json& j);

nlohmann::json json_of(const ExpSumResult& r);
nlohmann::json json_of(const EmpiricalBound& b);
nlohmann::json json_of(const LambdaBoundsReport& r);
nlohmann::json json_of(const SpectrumReport& r);
nlohmann::json json_of(const SmearReport& r);
nlohmann::json json_of(const StatMultReport& r);
nlohmann::json json_of(const ExtractionResult& r);
nlohmann::json json_of(const HypothesisReport& r);
nlohmann::json json_of(const StageRecord& r);
nlohmann::json json_of(const PipelineCertificate& c);  // schema cert/1
nlohmann::json json_of(const ContradictionReport& r);
nlohmann::json json_of(const TranslateReport& r);
nlohmann::json json_of(const IncompleteSmearReport& r);

}  // namespace expsum
