#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "loopkit/emp.hpp"
#include "loopkit/rational_function.hpp"

namespace loopkit {

namespace detail {

// Product of the edges along the directed path k -> i around the cycle.
// edges[j-1] is the edge leaving node j; works over any multiplicative type.
template <class T>
T cycle_path_product(const std::vector<T>& edges, int i, int k) {
  const int n = static_cast<int>(edges.size());
  int j = k;
  T acc = edges[static_cast<std::size_t>(j - 1)];
  j = j % n + 1;
  while (j != i) {
    acc = acc * edges[static_cast<std::size_t>(j - 1)];
    j = j % n + 1;
  }
  return acc;
}

template <class T>
T cycle_loop_product(const std::vector<T>& edges) {
  T acc = edges[0];
  for (std::size_t j = 1; j < edges.size(); ++j) acc = acc * edges[j];
  return acc;
}

}  // namespace detail

// A directed cycle of n >= 2 nodes with one transfer function per edge;
// edges[i-1] maps node i to its successor. Degenerate instances (an edge
// identically zero, or loop product equal to one) are rejected up front.
class LoopNetwork {
public:
  LoopNetwork(int n, std::vector<RationalFunction> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) throw InputError("loop networks need at least 2 nodes, got " + std::to_string(n_));
    if (static_cast<int>(edges_.size()) != n_)
      throw InputError("expected " + std::to_string(n_) + " edges, got " + std::to_string(edges_.size()));
    for (int i = 1; i <= n_; ++i)
      if (edges_[static_cast<std::size_t>(i - 1)].is_zero())
        throw InputError("edge " + std::to_string(i) + " -> " + std::to_string(succ(i)) +
                         " is the zero transfer function");
    const RationalFunction p = detail::cycle_loop_product(edges_);
    if ((RationalFunction::one() - p).is_zero())
      throw DegenerateNetworkError("degenerate loop: the product of all edges equals one");
  }

  int size() const { return n_; }
  int succ(int i) const { return i % n_ + 1; }
  int pred(int i) const { return (i + n_ - 2) % n_ + 1; }

  // The transfer function on the edge leaving node i (i.e. into succ(i)).
  const RationalFunction& edge_from(int i) const {
    if (i < 1 || i > n_) throw InputError("node " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
    return edges_[static_cast<std::size_t>(i - 1)];
  }
  const std::vector<RationalFunction>& edges() const { return edges_; }

  friend bool operator==(const LoopNetwork& a, const LoopNetwork& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }
  friend bool operator!=(const LoopNetwork& a, const LoopNetwork& b) { return !(a == b); }

private:
  int n_;
  std::vector<RationalFunction> edges_;
};

// P: the product of all edge transfer functions around the cycle.
inline RationalFunction loop_product(const LoopNetwork& net) {
  return detail::cycle_loop_product(net.edges());
}

// P_ik: the product along the unique directed path from node k to node i.
inline RationalFunction path_product(const LoopNetwork& net, int i, int k) {
  if (i < 1 || i > net.size() || k < 1 || k > net.size())
    throw InputError("path endpoints out of range 1.." + std::to_string(net.size()));
  if (i == k) throw InputError("path product is undefined for coinciding endpoints");
  return detail::cycle_path_product(net.edges(), i, k);
}

// R = (1 - P)^-1, the closed-loop transfer function from any node to itself.
inline RationalFunction sensitivity(const LoopNetwork& net) {
  const RationalFunction one_minus_p = RationalFunction::one() - loop_product(net);
  if (one_minus_p.is_zero())
    throw DegenerateNetworkError("degenerate loop: the product of all edges equals one");
  return one_minus_p.inv();
}

// T_ik: R on the diagonal, P_ik * R off it.
inline RationalFunction closed_loop_entry(const LoopNetwork& net, int i, int k) {
  const RationalFunction r = sensitivity(net);
  return i == k ? r : path_product(net, i, k) * r;
}

// The closed-loop map restricted to an excitation/measurement pattern: rows
// are the measured nodes ascending, columns the excited nodes ascending.
struct IoMap {
  int n = 0;
  std::vector<int> measured;
  std::vector<int> excited;
  std::vector<std::vector<RationalFunction>> entries;  // row-major

  bool has_entry(int i_node, int j_node) const {
    return row_of(i_node) >= 0 && col_of(j_node) >= 0;
  }
  const RationalFunction& entry(int i_node, int j_node) const {
    const int r = row_of(i_node), c = col_of(j_node);
    if (r < 0) throw InputError("node " + std::to_string(i_node) + " is not measured in this map");
    if (c < 0) throw InputError("node " + std::to_string(j_node) + " is not excited in this map");
    return entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }

  friend bool operator==(const IoMap& a, const IoMap& b) {
    return a.n == b.n && a.measured == b.measured && a.excited == b.excited && a.entries == b.entries;
  }

private:
  int row_of(int node) const { return index_of(measured, node); }
  int col_of(int node) const { return index_of(excited, node); }
  static int index_of(const std::vector<int>& v, int node) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == node) return static_cast<int>(i);
    return -1;
  }
};

// M = C T B for the given pattern. Empty excited or measured sets yield a
// zero-dimension map; the classification layer is responsible for flagging it.
inline IoMap io_map(const LoopNetwork& net, const Emp& emp) {
  if (emp.size() != net.size())
    throw InputError("pattern is over " + std::to_string(emp.size()) + " nodes but the network has " +
                     std::to_string(net.size()));
  IoMap m;
  m.n = net.size();
  m.measured = emp.measured_nodes();
  m.excited = emp.excited_nodes();
  const RationalFunction r = sensitivity(net);
  for (int i : m.measured) {
    std::vector<RationalFunction> row;
    row.reserve(m.excited.size());
    for (int j : m.excited) row.push_back(i == j ? r : path_product(net, i, j) * r);
    m.entries.push_back(std::move(row));
  }
  return m;
}

// Deterministic per-seed network with integer-coefficient edges: numerator
// degree <= degree_bound with coefficients in [-9, 9], denominator monic of
// degree exactly degree_bound. Resamples until no edge is zero and the loop
// product differs from one.
inline LoopNetwork random_network(int n, std::uint64_t seed, int degree_bound = 1) {
  if (n < 2) throw InputError("loop networks need at least 2 nodes, got " + std::to_string(n));
  if (degree_bound < 0) throw InputError("degree bound must be >= 0");
  std::mt19937_64 rng(seed);
  const auto coeff = [&rng] { return Rat(static_cast<long>(rng() % 19) - 9); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RationalFunction> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
      Poly num;
      for (int tries = 0; tries < 1000 && num.is_zero(); ++tries) {
        std::vector<Rat> c(static_cast<std::size_t>(degree_bound) + 1);
        for (auto& x : c) x = coeff();
        num = Poly(std::move(c));
      }
      std::vector<Rat> d(static_cast<std::size_t>(degree_bound) + 1);
      for (int i = 0; i < degree_bound; ++i) d[static_cast<std::size_t>(i)] = coeff();
      d[static_cast<std::size_t>(degree_bound)] = Rat(1);
      edges.emplace_back(num, Poly(std::move(d)));
    }
    const RationalFunction p = detail::cycle_loop_product(edges);
    if ((RationalFunction::one() - p).is_zero()) continue;
    return LoopNetwork(n, std::move(edges));
  }
  throw Error("random_network: exhausted 1000 resampling attempts");
}

// Cyclic relabeling i -> i+t of the nodes; the edge leaving node i becomes
// the edge leaving node ((i-1+t) mod n)+1.
inline LoopNetwork rotated(const LoopNetwork& net, int t) {
  const int n = net.size();
  t = ((t % n) + n) % n;
  std::vector<RationalFunction> edges(static_cast<std::size_t>(n), RationalFunction::one());
  for (int i = 1; i <= n; ++i) edges[static_cast<std::size_t>((i - 1 + t) % n)] = net.edge_from(i);
  return LoopNetwork(n, std::move(edges));
}

}  // namespace loopkit
