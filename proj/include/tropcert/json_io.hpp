#pragma once
#include <json.hpp>

#include "tropcert/certificate.hpp"

namespace tropcert {

// Schema: tropism, nu1, leading [{exp,re,im}], optional second (same shape),
// transform (rows of M), degree, verified_order_gain (int or "exact-zero").
nlohmann::json certificate_json(const Certificate& cert);

// Rebuilds the schema fields only; the initial root is not part of the
// exchange format and comes back empty.
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_json(const PipelineReport& rep);

} // namespace tropcert
