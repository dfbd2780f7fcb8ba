#pragma once

#include <string>
#include <vector>

#include "eahdim/dimension.hpp"
#include "eahdim/match.hpp"
#include "eahdim/oracle.hpp"

namespace eahdim {

// All machine-readable output is emitted with fixed field order and floats
// printed as %.12g, so identical inputs produce byte-identical files.
std::string fmt_g12(double x);

std::string case_tag_name(CaseTag tag);
std::string semantics_name(Semantics s);

std::string dimension_report_json(const DimensionReport& rep);

// One row of the sweep table; the header lists the column order.
std::string sweep_csv_header();
std::string sweep_csv_row(double v, const DimensionReport& rep);

std::string rate_estimate_json(const RateEstimate& r);
std::string rigidity_check_json(const RigidityCheck& r);
std::string witness_json(const WitnessConstruction& lc, bool include_witness = true);
std::string count_results_csv(const std::vector<CountResult>& rows);
std::string count_results_json(const std::vector<CountResult>& rows);
std::string gap_report_json(const GapBoundReport& rep);
std::string pressure_value_json(double s, double pressure, double derivative);
std::string pressure_bracket_json(double s, std::int64_t n, double lower, double upper);

} // namespace eahdim
