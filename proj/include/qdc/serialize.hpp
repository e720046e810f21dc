#pragma once

#include "json.hpp"
#include "qdc/criteria.hpp"
#include "qdc/protocols.hpp"

// JSON forms: complex numbers as [re, im], matrices as nested row arrays,
// parties as [label, dim] pairs. State specs accept constructor documents
// ({"constructor": name, "params": {...}}) or explicit party/matrix pairs.
// Every *_to_json here round-trips through the matching *_from_json.

namespace qdc {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

Json state_to_json(const MultipartiteState& s);
MultipartiteState parse_state_spec(const Json& j, double tol = kDefaultTol);

Json layout_to_json(const DenseCodingLayout& layout);
DenseCodingLayout parse_layout_spec(const Json& j);

Json capacity_report_to_json(const CapacityReport& report);
CapacityReport capacity_report_from_json(const Json& j);

Json classification_to_json(const ClassificationReport& report);
ClassificationReport classification_from_json(const Json& j);

Json threshold_to_json(const ThresholdResult& result);
ThresholdResult threshold_from_json(const Json& j);

Json decode_record_to_json(const MeasurementOutcomeRecord& record);
MeasurementOutcomeRecord decode_record_from_json(const Json& j);

}  // namespace qdc
