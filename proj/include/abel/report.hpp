#ifndef ABEL_REPORT_HPP
#define ABEL_REPORT_HPP

#include <string>

#include <json.hpp>

#include "abel/chebyshev.hpp"
#include "abel/classify.hpp"
#include "abel/config.hpp"
#include "abel/continuation.hpp"
#include "abel/cycles.hpp"

namespace abel::report {

using nlohmann::json;

json to_json(const NumericsConfig& cfg);
json to_json(const BasisFamily& basis);
json to_json(const AbelEquation& eq);
json to_json(const EctCertificate& cert);
json to_json(const ClassificationResult& r);
json to_json(const LyapunovReport& r);
json to_json(const LimitCycle& c);
json to_json(const CycleCensus& c);
json to_json(const SweepResult& r);
json to_json(const SharpnessResult& r);

/// Pinned schema: "x0,dP,stability,multiplicity,residual".
std::string census_csv(const CycleCensus& census);
/// Pinned schema: "param,x0,stability,multiplicity,branch_id,event".
std::string sweep_csv(const SweepResult& sweep);

std::string classification_text(const AbelEquation& eq, const ClassificationResult& r);
std::string lyapunov_text(const AbelEquation& eq, const LyapunovReport& r);
std::string census_text(const AbelEquation& eq, const CycleCensus& c);

} // namespace abel::report

#endif
