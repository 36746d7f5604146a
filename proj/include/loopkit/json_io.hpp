#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "loopkit/ambiguity.hpp"
#include "loopkit/emp.hpp"
#include "loopkit/loop_network.hpp"
#include "loopkit/oracle.hpp"
#include "loopkit/recover.hpp"

namespace loopkit {

using Json = nlohmann::ordered_json;

// Canonical text form: two-space indent, insertion-ordered keys, trailing
// newline. Identical values serialize to identical bytes.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {
inline const Json& require_field(const Json& j, const char* field, const char* where) {
  if (!j.is_object() || !j.contains(field))
    throw InputError(std::string(where) + ": missing field \"" + field + "\"");
  return j.at(field);
}
inline int require_int(const Json& j, const char* field, const char* where) {
  const Json& v = require_field(j, field, where);
  if (!v.is_number_integer())
    throw InputError(std::string(where) + ": field \"" + field + "\" must be an integer");
  return v.get<int>();
}
inline std::vector<int> require_int_list(const Json& j, const char* field, const char* where) {
  const Json& v = require_field(j, field, where);
  if (!v.is_array()) throw InputError(std::string(where) + ": field \"" + field + "\" must be an array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer())
      throw InputError(std::string(where) + ": field \"" + field + "\" must contain integers");
    out.push_back(x.get<int>());
  }
  return out;
}
}  // namespace detail

inline Json poly_to_json(const Poly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.str());
  return arr;
}

inline Poly poly_from_json(const Json& j, const char* where) {
  if (!j.is_array()) throw InputError(std::string(where) + " must be an array of coefficient strings");
  std::vector<Rat> coeffs;
  for (const auto& c : j) {
    if (!c.is_string())
      throw InputError(std::string(where) + " coefficients must be strings like \"p/q\"");
    coeffs.push_back(Rat::from_string(c.get<std::string>()));
  }
  return Poly(std::move(coeffs));
}

inline Json rf_to_json(const RationalFunction& f) {
  Json j = Json::object();
  j["num"] = poly_to_json(f.num());
  j["den"] = poly_to_json(f.den());
  return j;
}

inline RationalFunction rf_from_json(const Json& j, const char* where) {
  return RationalFunction(poly_from_json(detail::require_field(j, "num", where), where),
                          poly_from_json(detail::require_field(j, "den", where), where));
}

inline Json network_to_json(const LoopNetwork& net) {
  Json j = Json::object();
  j["n"] = net.size();
  Json edges = Json::array();
  for (int i = 1; i <= net.size(); ++i) {
    Json e = Json::object();
    e["from"] = i;
    e["to"] = net.succ(i);
    e["num"] = poly_to_json(net.edge_from(i).num());
    e["den"] = poly_to_json(net.edge_from(i).den());
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  return j;
}

inline LoopNetwork network_from_json(const Json& j) {
  const char* where = "network";
  const int n = detail::require_int(j, "n", where);
  const Json& edges = detail::require_field(j, "edges", where);
  if (!edges.is_array() || static_cast<int>(edges.size()) != n)
    throw InputError("network: field \"edges\" must be an array of exactly n edge objects");
  std::vector<RationalFunction> out;
  for (int i = 1; i <= n; ++i) {
    const Json& e = edges.at(static_cast<std::size_t>(i - 1));
    const int from = detail::require_int(e, "from", "network edge");
    const int to = detail::require_int(e, "to", "network edge");
    const int want_to = i % n + 1;
    if (from != i || to != want_to)
      throw InputError("network edge " + std::to_string(i) + ": expected \"from\": " + std::to_string(i) +
                       ", \"to\": " + std::to_string(want_to) + ", got " + std::to_string(from) + " -> " +
                       std::to_string(to));
    out.push_back(RationalFunction(poly_from_json(detail::require_field(e, "num", "network edge"), "network edge num"),
                                   poly_from_json(detail::require_field(e, "den", "network edge"), "network edge den")));
  }
  return LoopNetwork(n, std::move(out));
}

inline Json emp_to_json(const Emp& e) {
  Json j = Json::object();
  j["n"] = e.size();
  j["excited"] = e.excited_nodes();
  j["measured"] = e.measured_nodes();
  return j;
}

inline Emp emp_from_json(const Json& j) {
  const char* where = "emp";
  const int n = detail::require_int(j, "n", where);
  return Emp(n, detail::require_int_list(j, "excited", where), detail::require_int_list(j, "measured", where));
}

inline Json classification_to_json(const EmpClass& c) {
  Json j = Json::object();
  j["verdict"] = verdict_name(c.verdict);
  j["cardinality"] = c.cardinality;
  Json reason = Json::object();
  reason["rule"] = rule_name(c.rule);
  if (c.rule == Rule::BothNode) reason["both_node"] = c.both_node;
  if (c.rule == Rule::UncoveredNode) reason["uncovered"] = c.uncovered;
  if (c.rule == Rule::AdjacentPairs || c.rule == Rule::ContiguousBlocks) {
    Json pairs = Json::array();
    for (const auto& [m, e] : c.pairs) pairs.push_back(Json::array({m, e}));
    reason["pairs"] = std::move(pairs);
  }
  j["reason"] = std::move(reason);
  return j;
}

inline Json iomap_to_json(const IoMap& m) {
  Json j = Json::object();
  j["n"] = m.n;
  j["measured"] = m.measured;
  j["excited"] = m.excited;
  Json rows = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(rf_to_json(f));
    rows.push_back(std::move(r));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline IoMap iomap_from_json(const Json& j) {
  const char* where = "iomap";
  IoMap m;
  m.n = detail::require_int(j, "n", where);
  m.measured = detail::require_int_list(j, "measured", where);
  m.excited = detail::require_int_list(j, "excited", where);
  const Json& rows = detail::require_field(j, "entries", where);
  if (!rows.is_array() || rows.size() != m.measured.size())
    throw InputError("iomap: field \"entries\" must hold one row per measured node");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m.excited.size())
      throw InputError("iomap: each entries row must hold one value per excited node");
    std::vector<RationalFunction> r;
    for (const auto& f : row) r.push_back(rf_from_json(f, "iomap entry"));
    m.entries.push_back(std::move(r));
  }
  return m;
}

inline Json roundtrip_to_json(const RoundtripReport& rep) {
  Json j = Json::object();
  j["emp_valid"] = rep.emp_valid;
  j["rule"] = rep.rule;
  j["recovered_count"] = rep.recovered_count;
  j["full_match"] = rep.full_match;
  Json edges = Json::array();
  for (const auto& e : rep.edges) {
    Json ej = Json::object();
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["recovered"] = e.recovered;
    ej["equal"] = e.equal;
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  if (!rep.error.empty()) j["error"] = rep.error;
  return j;
}

inline Json counterexample_to_json(const CounterexampleReport& rep) {
  Json j = Json::object();
  j["maps_equal"] = rep.maps_equal;
  j["networks_differ"] = rep.networks_differ;
  Json diff = Json::array();
  for (const auto& [from, to] : rep.differing_edges) {
    Json d = Json::object();
    d["from"] = from;
    d["to"] = to;
    diff.push_back(std::move(d));
  }
  j["differing_edges"] = std::move(diff);
  j["certifies_non_identifiability"] = rep.certifies;
  return j;
}

namespace detail {
inline Json counts_to_json(const Counts& c) {
  Json j = Json::object();
  j["minimal"] = c.minimal.get_ui();
  j["valid"] = c.valid.get_ui();
  j["invalid"] = c.invalid.get_ui();
  return j;
}
}  // namespace detail

inline Json table_to_json(const TableReport& rep) {
  Json j = Json::object();
  j["max_n"] = rep.max_n;
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json r = Json::object();
    r["n"] = row.n;
    r["enumerated"] = detail::counts_to_json(row.enumerated);
    r["closed_form"] = detail::counts_to_json(row.closed_form);
    if (row.reference) {
      Json ref = Json::object();
      ref["minimal"] = row.reference->minimal;
      ref["valid"] = row.reference->valid;
      ref["invalid"] = row.reference->invalid;
      r["reference"] = std::move(ref);
    } else {
      r["reference"] = nullptr;
    }
    r["flags"] = row.flags;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["enumeration_matches_closed_form"] = rep.enumeration_matches_closed_form;
  j["matches_reference"] = rep.matches_reference;
  return j;
}

inline Json crosscheck_to_json(const CrosscheckReport& rep) {
  Json j = Json::object();
  j["n"] = rep.n;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["seed_scheme"] = "per-pattern seed = seed + pattern index";
  j["total"] = rep.total;
  j["agreements"] = rep.agreements;
  j["disagreements"] = rep.disagreements;
  Json hist = Json::object();
  for (const auto& [verdict, ranks] : rep.rank_histograms) {
    Json h = Json::object();
    for (const auto& [rank, count] : ranks) h[std::to_string(rank)] = count;
    hist[verdict] = std::move(h);
  }
  j["rank_histograms"] = std::move(hist);
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json ej = Json::object();
    ej["pattern"] = e.pattern;
    ej["verdict"] = verdict_name(e.verdict);
    ej["rule"] = rule_name(e.rule);
    ej["rank"] = e.rank;
    ej["identifiable"] = e.oracle_identifiable;
    ej["agree"] = e.agree;
    entries.push_back(std::move(ej));
  }
  j["patterns"] = std::move(entries);
  return j;
}

}  // namespace loopkit
