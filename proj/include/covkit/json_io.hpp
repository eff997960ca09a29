#pragma once

// JSON renderings of reports and certificates. Field layouts are documented
// in docs/schemas.md; every top-level CLI document also carries the schema
// version and the resolved run configuration.

#include <string>

#include "json.hpp"

#include "covkit/coderivative.hpp"
#include "covkit/coincidence.hpp"
#include "covkit/covering.hpp"
#include "covkit/frechet.hpp"
#include "covkit/linalg.hpp"

namespace covkit {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const Jacobian& j);
nlohmann::json to_json(const DifferentiabilityReport& report);
nlohmann::json to_json(const LimsupProbeReport& report);
nlohmann::json to_json(const CoveringReport& report);
nlohmann::json to_json(const CoincidenceCertificate& cert);

}  // namespace covkit
