#include "nativedil/report_io.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nativedil {

namespace {

using ojson = nlohmann::ordered_json;

ojson params_object(const ParameterSet& p) { return ojson::parse(params_to_json(p, -1)); }

template <typename T>
ojson optional_value(const std::optional<T>& v) {
  return v ? ojson(*v) : ojson(nullptr);
}

ojson report_object(const ReportEntry& e) {
  ojson j = params_object(e.params);
  const SecurityReport& r = e.report;
  j["id"] = e.id;
  j["table"] = e.table;
  j["zeta"] = r.zeta;
  j["zeta_prime"] = r.zeta_prime;
  j["alpha_lb"] = r.alpha_lb;
  j["pk_bytes"] = r.pk_bytes;
  j["sig_bytes"] = r.sig_bytes;
  j["repeats"] = r.repeats;
  j["lwe_blocksize"] = r.lwe_blocksize;
  j["lwe_coresvp"] = r.lwe_coresvp;
  j["sis_blocksize"] = optional_value(r.sis_blocksize);
  j["sis_coresvp"] = optional_value(r.sis_coresvp);
  j["stmsis_lwe_blocksize"] = optional_value(r.stmsis_lwe_blocksize);
  j["stmsis_coresvp"] = optional_value(r.stmsis_coresvp);
  ojson validity = ojson::array();
  for (const auto& o : r.validity) {
    validity.push_back({{"name", o.name}, {"status", check_status_name(o.status)}, {"detail", o.detail}});
  }
  j["validity"] = std::move(validity);
  j["log_base"] = "2";
  return j;
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("N/A");
}

ojson cost_object(const CostPair& c) { return {{"mults", c.mults}, {"adds", c.adds}}; }

}  // namespace

std::vector<ReportEntry> builtin_reports(const AttackModel& model) {
  std::vector<ReportEntry> out;
  for (const auto& s : builtin_sets()) {
    out.push_back({std::string(s.id), s.table, s.params, report(s.params, s.params.level, model)});
  }
  return out;
}

const char* check_status_name(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::NotApplicable:
      break;
  }
  return "n/a";
}

std::string report_to_json(const ReportEntry& entry, int indent) { return report_object(entry).dump(indent); }

std::string reports_to_json(const std::vector<ReportEntry>& entries, int indent) {
  std::map<int, ojson> groups;
  for (const auto& e : entries) {
    groups[e.table].push_back(report_object(e));
  }
  ojson tables = ojson::array();
  for (auto& [table, sets] : groups) {
    tables.push_back({{"table", table}, {"sets", std::move(sets)}});
  }
  ojson root;
  root["log_base"] = "2";
  root["tables"] = std::move(tables);
  return root.dump(indent);
}

std::string report_csv_header() {
  return "table,set,q,n,k,l,d,tau,gamma1,gamma2,zeta,zeta_prime,eta,eta_prime,pk_bytes,sig_bytes,repeats,"
         "lwe_blocksize,lwe_coresvp,stmsis_blocksize,stmsis_coresvp,sis_blocksize,sis_coresvp";
}

std::string report_csv_row(const ReportEntry& e) {
  const ParameterSet& p = e.params;
  const SecurityReport& r = e.report;
  char repeats[32];
  std::snprintf(repeats, sizeof repeats, "%.2f", r.repeats);
  std::ostringstream s;
  s << e.table << ',' << e.id << ',' << p.q << ',' << p.n << ',' << p.k << ',' << p.l << ',' << p.d << ','
    << p.tau << ',' << p.gamma1 << ',' << p.gamma2 << ',' << r.zeta << ',' << r.zeta_prime << ',' << p.eta << ','
    << cell(p.eta_prime) << ',' << r.pk_bytes << ',' << r.sig_bytes << ',' << repeats << ',' << r.lwe_blocksize
    << ',' << r.lwe_coresvp << ',' << cell(r.stmsis_lwe_blocksize) << ',' << cell(r.stmsis_coresvp) << ','
    << cell(r.sis_blocksize) << ',' << cell(r.sis_coresvp);
  return s.str();
}

std::string reports_to_csv(const std::vector<ReportEntry>& entries) {
  std::string out = report_csv_header() + "\n";
  for (const auto& e : entries) {
    out += report_csv_row(e) + "\n";
  }
  return out;
}

std::string two_decimals(const Rational& r) {
  const BigInt scaled = (numerator(r) * 200 + denominator(r)) / (denominator(r) * 2);
  const BigInt whole = scaled / 100;
  const BigInt frac = scaled % 100;
  std::string f = frac.str();
  if (f.size() < 2) f.insert(0, "0");
  return whole.str() + "." + f;
}

std::string op_table_to_json(const std::vector<OpTableEntry>& entries, int indent) {
  ojson arr = ojson::array();
  for (const auto& e : entries) {
    ojson j;
    j["set"] = e.id;
    j["method"] = e.method;
    j["ring_mul_cost"] = cost_object(e.ring_mul_cost);
    j["repeats"] = two_decimals(e.table.repeats);
    j["gen"] = cost_object(e.table.gen);
    j["sign"] = cost_object(e.table.sign);
    j["verify"] = cost_object(e.table.verify);
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

std::string op_table_to_csv(const std::vector<OpTableEntry>& entries) {
  std::ostringstream s;
  s << "set,method,repeats,gen_mults,sign_mults,verify_mults,gen_adds,sign_adds,verify_adds\n";
  for (const auto& e : entries) {
    const OpTable& t = e.table;
    s << e.id << ',' << e.method << ',' << two_decimals(t.repeats) << ',' << t.gen.mults << ',' << t.sign.mults
      << ',' << t.verify.mults << ',' << t.gen.adds << ',' << t.sign.adds << ',' << t.verify.adds << '\n';
  }
  return s.str();
}

}  // namespace nativedil
