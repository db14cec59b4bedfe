#pragma once

// JSON forms of ensembles, patterns and reports.

#include <json.hpp>

#include "onebit/measurement.hpp"
#include "onebit/nets.hpp"
#include "onebit/processes.hpp"
#include "onebit/sphere.hpp"
#include "onebit/verify.hpp"

namespace onebit {

const char* to_string(EnsembleKind kind);
const char* to_string(WidthMethod method);
const char* to_string(ProcessMetric metric);
const char* to_string(SetClass set_class);
const char* to_string(PointSource source);

void to_json(nlohmann::json& j, const UnitVector& x);
void to_json(nlohmann::json& j, const PointSet& points);
void to_json(nlohmann::json& j, const SignPattern& p);
void from_json(const nlohmann::json& j, SignPattern& p);

/// {"kind", "seed", "m", "dim", "directions": [[...], ...]}
nlohmann::json ensemble_to_json(const MeasurementEnsemble& ens);
/// Inverse of ensemble_to_json. Throws InvalidArgument on a malformed document.
MeasurementEnsemble ensemble_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const NetReport& r);
void to_json(nlohmann::json& j, const CapacityReport& r);
void to_json(nlohmann::json& j, const EntropyRatio& r);
void to_json(nlohmann::json& j, const VcReport& r);
void to_json(nlohmann::json& j, const VcEntropyReport& r);
void to_json(nlohmann::json& j, const WidthEstimate& w);
void to_json(nlohmann::json& j, const SudakovReport& r);
void to_json(nlohmann::json& j, const CompareReport& r);
void to_json(nlohmann::json& j, const CellReport& r);
void to_json(nlohmann::json& j, const RipReport& r);
void to_json(nlohmann::json& j, const MetricRatioReport& r);
void to_json(nlohmann::json& j, const SignProductReport& r);

}  // namespace onebit
