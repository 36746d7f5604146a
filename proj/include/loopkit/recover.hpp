#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopkit/loop_network.hpp"

namespace loopkit {

// How the edges will be reconstructed from an input-output map: either via a
// node that is both excited and measured, or via two measured nodes whose
// successors are excited. `reference` is the measured node r whose path
// products Q_i = P_{r,i} anchor the recursion.
struct RecoveryPlan {
  enum class Mode { BothNode, PairMode };

  Mode mode = Mode::BothNode;
  int both_node = 0;  // BothNode: the chosen node in B and C
  int r1 = 0, r2 = 0; // PairMode: the two measured anchors
  int reference = 0;
};

namespace detail {
inline std::string describe_invalid(const EmpClass& cls) {
  std::string msg = std::string("pattern is not identifiable (") + rule_name(cls.rule) + ")";
  if (cls.rule == Rule::UncoveredNode && !cls.uncovered.empty()) {
    msg += ": node " + std::to_string(cls.uncovered.front()) + " is neither excited nor measured";
  }
  return msg;
}
}  // namespace detail

// Plan with an explicit both-node choice j (j must be excited and measured).
inline RecoveryPlan make_both_plan(const Emp& emp, int j) {
  const EmpClass cls = nsc_check(emp);
  if (!cls.valid()) throw NotIdentifiableError(detail::describe_invalid(cls));
  if (!emp.is_excited(j) || !emp.is_measured(j))
    throw InputError("node " + std::to_string(j) + " is not both excited and measured");
  RecoveryPlan p;
  p.mode = RecoveryPlan::Mode::BothNode;
  p.both_node = j;
  p.reference = j;
  return p;
}

// Plan with an explicit pair choice (r1, r2): distinct measured nodes whose
// successors are excited.
inline RecoveryPlan make_pair_plan(const Emp& emp, int r1, int r2) {
  const EmpClass cls = nsc_check(emp);
  if (!cls.valid()) throw NotIdentifiableError(detail::describe_invalid(cls));
  if (r1 == r2) throw InputError("pair anchors must be distinct nodes");
  for (int r : {r1, r2})
    if (!emp.is_measured(r) || !emp.is_excited(emp.succ(r)))
      throw InputError("node " + std::to_string(r) + " is not a measured node followed by an excited node");
  RecoveryPlan p;
  p.mode = RecoveryPlan::Mode::PairMode;
  p.r1 = r1;
  p.r2 = r2;
  p.reference = r2;
  return p;
}

// Default plan: smallest both-node when one exists, otherwise the first two
// measured-to-excited pairs in ascending order. A mode can be forced as long
// as its witnesses exist.
inline RecoveryPlan plan(const Emp& emp, std::optional<RecoveryPlan::Mode> force = std::nullopt) {
  const EmpClass cls = nsc_check(emp);
  if (!cls.valid()) throw NotIdentifiableError(detail::describe_invalid(cls));
  const bool has_both = (emp.excited_mask() & emp.measured_mask()) != 0;
  const auto pairs = measured_excited_pairs(emp);
  const RecoveryPlan::Mode mode =
      force.value_or(has_both ? RecoveryPlan::Mode::BothNode : RecoveryPlan::Mode::PairMode);
  if (mode == RecoveryPlan::Mode::BothNode) {
    if (!has_both) throw InputError("cannot force both-node recovery: no node is both excited and measured");
    int j = 1;
    for (std::uint64_t m = emp.excited_mask() & emp.measured_mask(); (m & 1ULL) == 0; m >>= 1) ++j;
    return make_both_plan(emp, j);
  }
  if (pairs.size() < 2)
    throw InputError("cannot force pair recovery: fewer than two measured-to-excited pairs");
  return make_pair_plan(emp, pairs[0].first, pairs[1].first);
}

namespace detail {
inline const RationalFunction& nonzero_entry(const IoMap& m, int i, int j) {
  const RationalFunction& e = m.entry(i, j);
  if (e.is_zero())
    throw NonGenericError("map entry M[" + std::to_string(i) + "," + std::to_string(j) +
                          "] is zero; instance is non-generic");
  return e;
}

inline RationalFunction generic_div(const RationalFunction& a, const RationalFunction& b,
                                    const char* what) {
  if (b.is_zero()) throw NonGenericError(std::string(what) + " vanished; instance is non-generic");
  return a / b;
}
}  // namespace detail

// The loop product P recovered from the map alone. Both-node j: the diagonal
// entry is (1-P)^-1, so P = 1 - 1/M[j,j]. Pair (r1, r2) with excited
// successors s1, s2: the quadruple ratio (M[r2,s2] M[r1,s1])/(M[r1,s2] M[r2,s1])
// telescopes to the product of all edges.
inline RationalFunction loop_product_from_map(const IoMap& m, const RecoveryPlan& p) {
  if (p.mode == RecoveryPlan::Mode::BothNode) {
    const RationalFunction& mjj = detail::nonzero_entry(m, p.both_node, p.both_node);
    return RationalFunction::one() - mjj.inv();
  }
  const int n = m.n;
  const int s1 = p.r1 % n + 1, s2 = p.r2 % n + 1;
  const RationalFunction& a = detail::nonzero_entry(m, p.r2, s2);
  const RationalFunction& b = detail::nonzero_entry(m, p.r1, s1);
  const RationalFunction& c = detail::nonzero_entry(m, p.r1, s2);
  const RationalFunction& d = detail::nonzero_entry(m, p.r2, s1);
  return (a * b) / (c * d);
}

// Q_i = P_{r,i} for every node i != r, where r is the plan's reference: for
// excited i straight from row r, for measured-only i through the loop product.
inline std::map<int, RationalFunction> reference_products(const IoMap& m, const RecoveryPlan& p,
                                                          const RationalFunction& loop_p) {
  const int n = m.n;
  const int r = p.reference;
  const RationalFunction one_minus_p = RationalFunction::one() - loop_p;
  if (one_minus_p.is_zero()) throw NonGenericError("loop product equals one; instance is non-generic");

  std::map<int, RationalFunction> q;
  const int s = r % n + 1;
  if (p.mode == RecoveryPlan::Mode::PairMode)
    q.emplace(s, m.entry(r, s) * one_minus_p);
  for (int i = 1; i <= n; ++i) {
    if (i == r || q.count(i)) continue;
    if (m.has_entry(r, i)) {  // i excited: T_{r,i} = P_{r,i} R
      q.emplace(i, m.entry(r, i) * one_minus_p);
    } else if (p.mode == RecoveryPlan::Mode::BothNode) {
      // i measured only: P = P_{r,i} P_{i,r} and P_{i,r} = M[i,r] (1-P)
      q.emplace(i, detail::generic_div(loop_p, m.entry(i, r) * one_minus_p, "path product P_{i,r}"));
    } else {
      // i measured only: P_{r,s} = P_{r,i} P_{i,s} and P_{i,s} = M[i,s] (1-P)
      q.emplace(i, detail::generic_div(q.at(s), m.entry(i, s) * one_minus_p, "path product P_{i,s}"));
    }
  }
  for (auto& [node, value] : q)
    if (value.is_zero())
      throw NonGenericError("path product P_{r," + std::to_string(node) + "} vanished; instance is non-generic");
  return q;
}

// Reconstruction with a caller-chosen plan: recover P, anchor the path
// products Q_i, then read the edges off as ratios of consecutive Q_i (with
// the two edges at the reference spliced in from P).
inline LoopNetwork recover_with_plan(const IoMap& m, const Emp& emp, const RecoveryPlan& p) {
  if (emp.size() != m.n)
    throw InputError("map is over " + std::to_string(m.n) + " nodes but the pattern has " +
                     std::to_string(emp.size()));
  if (m.measured != emp.measured_nodes() || m.excited != emp.excited_nodes())
    throw InputError("map rows/columns do not match the pattern's measured/excited sets");
  for (const auto& row : m.entries)
    if (row.size() != m.excited.size())
      throw InputError("map entry matrix is not |measured| x |excited|");
  if (m.entries.size() != m.measured.size())
    throw InputError("map entry matrix is not |measured| x |excited|");

  const RationalFunction loop_p = loop_product_from_map(m, p);
  const auto q = reference_products(m, p, loop_p);

  const int n = m.n;
  const int r = p.reference;
  const int s = r % n + 1;
  std::vector<RationalFunction> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int next = i % n + 1;
    if (i == r) edges.push_back(detail::generic_div(loop_p, q.at(s), "path product"));
    else if (next == r) edges.push_back(q.at(i));
    else edges.push_back(detail::generic_div(q.at(i), q.at(next), "path product"));
  }
  return LoopNetwork(n, std::move(edges));
}

// Full pipeline with the default plan.
inline LoopNetwork recover_edges(const IoMap& m, const Emp& emp) {
  return recover_with_plan(m, emp, plan(emp));
}

struct RoundtripEdge {
  int from = 0;
  int to = 0;
  bool recovered = false;
  bool equal = false;
};

struct RoundtripReport {
  bool emp_valid = false;
  std::string rule;
  std::vector<RoundtripEdge> edges;
  int recovered_count = 0;
  bool full_match = false;
  std::string error;
};

namespace detail {
// Partial reconstruction for the contiguous invalid shape, in canonical
// labels (excited block 1..k, measured block k+1..n): ratios along the first
// measured row determine the excited block's interior edges, ratios down the
// first excited column determine the measured block's interior edges. The two
// block-boundary edges stay free.
inline void partial_roundtrip(const LoopNetwork& net, const Emp& emp, RoundtripReport& rep) {
  const int n = net.size();
  int start = 0;
  for (int i = 1; i <= n; ++i)
    if (emp.is_excited(i) && emp.is_measured(emp.pred(i))) start = i;
  const int t = ((1 - start) % n + n) % n;
  const LoopNetwork net_c = rotated(net, t);
  const Emp emp_c = rotated(emp, t);
  const int k = emp_c.excited_count();
  const IoMap m = io_map(net_c, emp_c);

  std::map<int, RationalFunction> got;
  for (int j = 1; j + 1 <= k; ++j)
    got.emplace(j, generic_div(m.entry(k + 1, j), m.entry(k + 1, j + 1), "map entry"));
  for (int i = k + 1; i + 1 <= n; ++i)
    got.emplace(i, generic_div(m.entry(i + 1, 1), m.entry(i, 1), "map entry"));

  rep.edges.resize(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    // canonical node v corresponds to original node u
    const int u = ((v - 1 - t) % n + n) % n + 1;
    RoundtripEdge e;
    e.from = u;
    e.to = u % n + 1;
    if (auto it = got.find(v); it != got.end()) {
      e.recovered = true;
      e.equal = it->second == net_c.edge_from(v);
      ++rep.recovered_count;
    }
    rep.edges[static_cast<std::size_t>(u - 1)] = e;
  }
}
}  // namespace detail

// Simulates the map, runs recovery, and reports exact equality per edge. For
// an invalid pattern of the contiguous shape, reports which edges the partial
// procedure still determines (all but the two block-boundary edges).
inline RoundtripReport verify_roundtrip(const LoopNetwork& net, const Emp& emp) {
  RoundtripReport rep;
  try {
    const EmpClass cls = nsc_check(emp);
    rep.emp_valid = cls.valid();
    rep.rule = rule_name(cls.rule);
    if (cls.valid()) {
      const IoMap m = io_map(net, emp);
      const LoopNetwork rec = recover_edges(m, emp);
      rep.full_match = true;
      for (int i = 1; i <= net.size(); ++i) {
        RoundtripEdge e;
        e.from = i;
        e.to = net.succ(i);
        e.recovered = true;
        e.equal = rec.edge_from(i) == net.edge_from(i);
        rep.full_match = rep.full_match && e.equal;
        ++rep.recovered_count;
        rep.edges.push_back(e);
      }
    } else if (cls.rule == Rule::ContiguousBlocks) {
      detail::partial_roundtrip(net, emp, rep);
    } else {
      for (int i = 1; i <= net.size(); ++i)
        rep.edges.push_back(RoundtripEdge{i, net.succ(i), false, false});
    }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

}  // namespace loopkit
