#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopkit/loop_network.hpp"

namespace loopkit {

// For a contiguous invalid pattern (no both-node, excited block followed by
// measured block, both of size >= 2), returns a network with the identical
// input-output map: the edge leaving the last excited node is scaled by
// lambda and the edge closing the cycle by mu = (1 - lambda + lambda P)/(lambda P).
// Every map entry is R * P_{ij} with the path crossing the first scaled edge
// exactly once, and the rescaled loop satisfies R' * lambda = R, so the map
// is unchanged while two edges differ (lambda = 1 gives the family's identity).
inline LoopNetwork indistinguishable_family(const LoopNetwork& net, const Emp& emp, const Rat& lambda) {
  if (net.size() != emp.size())
    throw InputError("pattern is over " + std::to_string(emp.size()) + " nodes but the network has " +
                     std::to_string(net.size()));
  const EmpClass cls = nsc_check(emp);
  if (!is_contiguous_invalid(cls))
    throw InputError("pattern is not of the contiguous invalid shape (" + std::string(rule_name(cls.rule)) + ")");
  if (emp.excited_count() < 2 || emp.measured_count() < 2)
    throw InputError("the construction needs at least two excited and two measured nodes");
  if (lambda.is_zero()) throw InputError("lambda must be nonzero (a zero edge would leave the model class)");

  const int n = net.size();
  int start = 0;
  for (int i = 1; i <= n; ++i)
    if (emp.is_excited(i) && emp.is_measured(emp.pred(i))) start = i;
  const int t = ((1 - start) % n + n) % n;

  const LoopNetwork net_c = rotated(net, t);
  const Emp emp_c = rotated(emp, t);
  const int k = emp_c.excited_count();

  const RationalFunction p = loop_product(net_c);
  const RationalFunction lam = RationalFunction::constant(lambda);
  const RationalFunction mu = (RationalFunction::one() - lam + lam * p) / (lam * p);
  if (mu.is_zero())
    throw NonGenericError("the matching scale for the closing edge vanishes; instance is non-generic");

  std::vector<RationalFunction> edges = net_c.edges();
  edges[static_cast<std::size_t>(k - 1)] = edges[static_cast<std::size_t>(k - 1)] * lam;
  edges[static_cast<std::size_t>(n - 1)] = edges[static_cast<std::size_t>(n - 1)] * mu;
  return rotated(LoopNetwork(n, std::move(edges)), n - t);
}

struct CounterexampleReport {
  bool maps_equal = false;
  bool networks_differ = false;
  std::vector<std::pair<int, int>> differing_edges;  // (from, to)
  bool certifies = false;  // maps equal while the networks differ
};

// Exact check that two networks are indistinguishable under a pattern: equal
// input-output maps with at least one differing edge certify that the pattern
// cannot identify the network.
inline CounterexampleReport verify_counterexample(const LoopNetwork& a, const LoopNetwork& b,
                                                  const Emp& emp) {
  if (a.size() != b.size())
    throw InputError("networks have different node counts: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  CounterexampleReport rep;
  rep.maps_equal = io_map(a, emp) == io_map(b, emp);
  for (int i = 1; i <= a.size(); ++i)
    if (a.edge_from(i) != b.edge_from(i)) rep.differing_edges.emplace_back(i, a.succ(i));
  rep.networks_differ = !rep.differing_edges.empty();
  rep.certifies = rep.maps_equal && rep.networks_differ;
  return rep;
}

}  // namespace loopkit
