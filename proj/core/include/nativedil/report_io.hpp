#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nativedil/estimator.hpp"
#include "nativedil/opcounts.hpp"

namespace nativedil {

struct ReportEntry {
  std::string id;
  int table = 0;  // 0 for sets that are not built in
  ParameterSet params;
  SecurityReport report;
};

// Reports for every built-in set, in registry order.
std::vector<ReportEntry> builtin_reports(const AttackModel& model = {});

// One JSON object: the parameter fields (readable back as a params file)
// followed by the report fields.
std::string report_to_json(const ReportEntry& entry, int indent = 2);
// {"log_base": "2", "tables": [{"table": t, "sets": [...]}, ...]}
std::string reports_to_json(const std::vector<ReportEntry>& entries, int indent = 2);

std::string report_csv_header();
std::string report_csv_row(const ReportEntry& entry);
std::string reports_to_csv(const std::vector<ReportEntry>& entries);

const char* check_status_name(CheckStatus s) noexcept;

struct OpTableEntry {
  std::string id;
  std::string method;  // "ntt" or "hntt(a,b)"
  CostPair ring_mul_cost;
  OpTable table;
};

std::string op_table_to_json(const std::vector<OpTableEntry>& entries, int indent = 2);
std::string op_table_to_csv(const std::vector<OpTableEntry>& entries);

// Exact decimal rendering of a rational with two fractional digits (rounded half up).
std::string two_decimals(const Rational& r);

}  // namespace nativedil
