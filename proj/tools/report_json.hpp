#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qsl/experiment.hpp"

namespace qsl::cli {

nlohmann::json density_to_json(const Matrix4c& m);
Matrix4c density_from_json(const nlohmann::json& j);

nlohmann::json measures_to_json(const MeasureReport& m);
nlohmann::json point_to_json(const PlanePoint& p);
PlanePoint point_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ExperimentReport& r);

/// Pretty-printed, newline-terminated; stable for identical reports.
std::string dump_report(const ExperimentReport& r);

/// The plane point recorded in a report document. Throws ParseError.
PlanePoint point_from_report_text(const std::string& text);

}  // namespace qsl::cli
