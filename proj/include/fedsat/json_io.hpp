#pragma once

#include <string>

#include "fedsat/federation.hpp"

namespace fedsat {
namespace io {

/// Metrics report plus compliance rows, mirrored as a JSON document.
/// Infinite revisit values serialize as null.
std::string report_json(const fom::FigureOfMeritReport& report,
                        const std::vector<fom::ComplianceResult>& compliance);

/// per_dcp table: dcp_id,temporal_coverage_fraction,max_revisit_s,revisit_ok
std::string per_dcp_csv(const fom::FigureOfMeritReport& report);

/// per_satellite table: satellite_id,ground_access_s_per_day,
/// engagement_fraction,downlink_sufficient,storage_peak_bytes
std::string per_satellite_csv(const fom::FigureOfMeritReport& report);

std::string admission_json(const fed::AdmissionDecision& decision);
std::string retirement_json(const fed::RetirementPlan& plan);
std::string reconfiguration_json(const fed::ReconfigurationResult& result);

/// FNV-1a 64-bit content hash, hex encoded.
std::string content_digest(const std::string& bytes);

} // namespace io
} // namespace fedsat
