#pragma once

// JSON conversions for the public result and config types. Enums are written
// as their lowercase names; non-finite doubles as the strings "inf", "-inf"
// and "nan" so documents always parse back.

#include "json.hpp"

#include "sparsesel/core.hpp"
#include "sparsesel/diagnostics.hpp"
#include "sparsesel/experiments.hpp"
#include "sparsesel/solvers.hpp"
#include "sparsesel/tuning.hpp"

namespace sparsesel {

using nlohmann::json;

void to_json(json& j, ResponseKind v);
void from_json(const json& j, ResponseKind& v);
void to_json(json& j, Loss v);
void from_json(const json& j, Loss& v);
void to_json(json& j, Method v);
void from_json(const json& j, Method& v);

void to_json(json& j, const FitResult& v);
void from_json(const json& j, FitResult& v);
void to_json(json& j, const KKTReport& v);
void from_json(const json& j, KKTReport& v);

/// Writes a double, mapping non-finite values to strings.
json number(double v);
/// Inverse of number(); throws ParseError on anything else.
double as_number(const json& j);

namespace tuning {
void to_json(json& j, Regime v);
void from_json(const json& j, Regime& v);
void to_json(json& j, const TuningBundle& v);
void from_json(const json& j, TuningBundle& v);
} // namespace tuning

namespace diagnostics {
void to_json(json& j, StabilVerdict v);
void from_json(const json& j, StabilVerdict& v);
void to_json(json& j, const CoherenceReport& v);
void from_json(const json& j, CoherenceReport& v);
void to_json(json& j, const StabilReport& v);
void from_json(const json& j, StabilReport& v);
void to_json(json& j, const LidentifReport& v);
void from_json(const json& j, LidentifReport& v);
} // namespace diagnostics

namespace experiments {
void to_json(json& j, DesignKind v);
void from_json(const json& j, DesignKind& v);
void to_json(json& j, NoiseModel v);
void from_json(const json& j, NoiseModel& v);
void to_json(json& j, SignalKind v);
void from_json(const json& j, SignalKind& v);
void to_json(json& j, TuningMode v);
void from_json(const json& j, TuningMode& v);
void to_json(json& j, Guarantee v);
void from_json(const json& j, Guarantee& v);
void to_json(json& j, CiMethod v);
void from_json(const json& j, CiMethod& v);
void to_json(json& j, Verdict v);
void from_json(const json& j, Verdict& v);

void to_json(json& j, const DesignSpec& v);
void from_json(const json& j, DesignSpec& v);
void to_json(json& j, const ResponseModel& v);
void from_json(const json& j, ResponseModel& v);
void to_json(json& j, const SignalSpec& v);
void from_json(const json& j, SignalSpec& v);

/// Missing keys keep their defaults, so a partial document is a valid config.
void to_json(json& j, const ExperimentConfig& v);
void from_json(const json& j, ExperimentConfig& v);

void to_json(json& j, const ReplicationRecord& v);
void from_json(const json& j, ReplicationRecord& v);
void to_json(json& j, const ExperimentReport& v);
void from_json(const json& j, ExperimentReport& v);
void to_json(json& j, const SweepPoint& v);
void from_json(const json& j, SweepPoint& v);
} // namespace experiments

} // namespace sparsesel
