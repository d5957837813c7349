#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcover/census.hpp"
#include "mcover/generators.hpp"
#include "mcover/rounding.hpp"
#include "mcover/stream.hpp"

namespace mcover {

using json = nlohmann::ordered_json;

inline const char* to_string(PushTarget t) {
  return t == PushTarget::LowestIndex ? "lowest-index" : "largest-smaller-job";
}

inline PushTarget parse_push_target(const std::string& s) {
  if (s == "lowest-index") return PushTarget::LowestIndex;
  if (s == "largest-smaller-job") return PushTarget::LargestSmallerJob;
  throw std::invalid_argument("unknown push target rule: " + s);
}

inline Rational rational_from_json(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument("expected a rational string, got " + v.dump());
}

inline json context_to_json(const RoundingContext& ctx) {
  json out;
  out["epsilon"] = ctx.epsilon().str();
  out["ub"] = ctx.ub().str();
  if (ctx.degenerate()) {
    out["ell"] = nullptr;
    out["u"] = nullptr;
    out["grid"] = nullptr;
  } else {
    out["ell"] = ctx.ell();
    out["u"] = ctx.u();
    out["grid"] = ctx.grid().str();
  }
  json ladder = json::array();
  for (const Rational& q : ctx.ladder()) ladder.push_back(q.str());
  out["ladder"] = std::move(ladder);
  return out;
}

// JSONL: a header object, then one job per line in arrival order. Placed base
// jobs carry "machine".
inline void write_stream_jsonl(std::ostream& os, const StreamSpec& spec) {
  json header;
  header["format"] = "mcover-stream";
  header["machines"] = spec.machines;
  header["family"] = spec.family;
  if (spec.ub_override) header["ub_override"] = spec.ub_override->str();
  if (spec.push_target != PushTarget::LowestIndex) header["push_target"] = to_string(spec.push_target);
  if (spec.epsilon) header["epsilon"] = spec.epsilon->str();
  os << header.dump() << '\n';
  const auto line = [&](const StreamEntry& e) {
    json j;
    j["id"] = e.id;
    j["size"] = e.size.str();
    if (e.machine) j["machine"] = *e.machine;
    os << j.dump() << '\n';
  };
  for (const auto& e : spec.base) {
    if (e.machine) line(e);
  }
  for (const auto& e : replay_order(spec)) line(e);
}

inline StreamSpec read_stream_jsonl(std::istream& is) {
  StreamSpec spec;
  std::string text;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(is, text)) {
    ++lineno;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_header) {
      if (!j.contains("machines")) throw std::invalid_argument("stream header must give \"machines\"");
      spec.machines = j.at("machines").get<std::size_t>();
      if (spec.machines == 0) throw std::invalid_argument("stream header: machines must be positive");
      spec.family = j.value("family", std::string("input"));
      if (j.contains("ub_override")) spec.ub_override = rational_from_json(j["ub_override"]);
      if (j.contains("push_target")) spec.push_target = parse_push_target(j["push_target"].get<std::string>());
      if (j.contains("epsilon")) spec.epsilon = rational_from_json(j["epsilon"]);
      have_header = true;
      continue;
    }
    StreamEntry e;
    e.id = j.at("id").get<JobId>();
    e.size = rational_from_json(j.at("size"));
    if (e.size.sign() <= 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": size must be positive");
    if (j.contains("machine")) {
      e.machine = j["machine"].get<MachineId>();
      if (*e.machine >= spec.machines) throw std::invalid_argument("line " + std::to_string(lineno) + ": bad machine");
      spec.base.push_back(e);
    } else {
      spec.arrivals.push_back(e);
    }
  }
  if (!have_header) throw std::invalid_argument("empty stream file");
  return spec;
}

inline const char* kReportColumns =
    "arrival_id,arrival_size,migrated_volume_rounded,migrated_volume_original,migration_factor,"
    "min_load,min_load_original,ub,opt_original,ratio,m_neq,j_eq_total";

inline void write_report_csv(std::ostream& os, const StreamReport& r) {
  os << kReportColumns << '\n';
  const auto opt_str = [](const auto& v) -> std::string {
    if (!v) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, Rational>) {
      return v->str();
    } else {
      return std::to_string(*v);
    }
  };
  for (const auto& row : r.rows) {
    os << row.arrival_id << ',' << row.arrival_size << ',' << row.migrated_volume_rounded << ','
       << row.migrated_volume_original << ',' << row.migration_factor << ',' << row.min_load << ','
       << row.min_load_original << ',' << row.ub << ',' << opt_str(row.opt_original) << ',' << opt_str(row.ratio)
       << ',' << opt_str(row.m_neq) << ',' << opt_str(row.j_eq_total) << '\n';
  }
}

inline json report_to_json(const StreamReport& r) {
  json out;
  out["family"] = r.family;
  out["algorithm"] = to_string(r.algorithm);
  out["epsilon"] = r.epsilon.str();
  out["machines"] = r.machines;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["arrival_id"] = row.arrival_id;
    j["arrival_size"] = row.arrival_size.str();
    j["migrated_volume_rounded"] = row.migrated_volume_rounded.str();
    j["migrated_volume_original"] = row.migrated_volume_original.str();
    j["migration_factor"] = row.migration_factor.str();
    j["min_load"] = row.min_load.str();
    j["min_load_original"] = row.min_load_original.str();
    j["ub"] = row.ub.str();
    j["opt_original"] = row.opt_original ? json(row.opt_original->str()) : json(nullptr);
    j["ratio"] = row.ratio ? json(row.ratio->str()) : json(nullptr);
    j["m_neq"] = row.m_neq ? json(*row.m_neq) : json(nullptr);
    j["j_eq_total"] = row.j_eq_total ? json(*row.j_eq_total) : json(nullptr);
    rows.push_back(std::move(j));
  }
  out["rows"] = std::move(rows);
  out["max_ratio"] = r.max_ratio ? json(r.max_ratio->str()) : json(nullptr);
  out["unbounded_ratio"] = r.unbounded_ratio;
  out["max_factor"] = r.max_factor.str();
  return out;
}

// Session snapshot: algorithm, eps, the current assignment, and the report so
// far. Reloaded as a stream whose base jobs carry their machines.
inline json state_to_json(const StreamReport& r, const StreamSpec& spec) {
  json out;
  out["format"] = "mcover-state";
  out["algorithm"] = to_string(r.algorithm);
  out["epsilon"] = r.epsilon.str();
  out["machines"] = r.machines;
  if (spec.ub_override) out["ub_override"] = spec.ub_override->str();
  out["push_target"] = to_string(spec.push_target);
  json jobs = json::array();
  if (r.final_schedule) {
    for (const auto& [id, e] : r.final_schedule->entries()) {
      json j;
      j["id"] = id;
      j["size"] = e.job.size.str();
      j["machine"] = e.machine;
      jobs.push_back(std::move(j));
    }
  }
  out["jobs"] = std::move(jobs);
  out["history"] = report_to_json(r)["rows"];
  return out;
}

struct SessionState {
  Algorithm algorithm = Algorithm::OnlineLpt;
  Rational epsilon;
  StreamSpec spec;  // placed base jobs only
};

inline SessionState state_from_json(const json& j) {
  if (j.value("format", std::string()) != "mcover-state") throw std::invalid_argument("not a session state file");
  SessionState st;
  st.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  st.epsilon = rational_from_json(j.at("epsilon"));
  require_unit_fraction(st.epsilon);
  st.spec.family = "state";
  st.spec.machines = j.at("machines").get<std::size_t>();
  if (j.contains("ub_override")) st.spec.ub_override = rational_from_json(j["ub_override"]);
  if (j.contains("push_target")) st.spec.push_target = parse_push_target(j["push_target"].get<std::string>());
  for (const auto& job : j.at("jobs")) {
    st.spec.base.push_back({job.at("id").get<JobId>(), rational_from_json(job.at("size")),
                            job.at("machine").get<MachineId>()});
  }
  return st;
}

inline json census_to_json(CensusMode mode, const Rational& eps, const Rational& bound, const Rational& floor,
                           const CensusResult& r) {
  json out;
  out["mode"] = mode == CensusMode::Arithmetic ? "arithmetic" : mode == CensusMode::Geometric ? "geometric"
                                                                                              : "powers-of-two";
  out["epsilon"] = eps.str();
  out["bound"] = bound.str();
  out["size_floor"] = floor.str();
  out["multisets"] = r.multisets;
  out["distinct_totals"] = r.distinct_totals;
  out["all_distinct"] = r.all_distinct;
  return out;
}

}  // namespace mcover
