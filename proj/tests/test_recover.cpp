#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "helpers.hpp"

using namespace loopkit;

TEST_CASE("plans pick the cheapest witnesses deterministically") {
  const RecoveryPlan pair = plan(Emp(4, {2, 4}, {1, 3}));
  CHECK(pair.mode == RecoveryPlan::Mode::PairMode);
  CHECK(pair.r1 == 1);
  CHECK(pair.r2 == 3);
  CHECK(pair.reference == 3);

  const RecoveryPlan both = plan(Emp(5, {1, 2, 3}, {3, 4, 5}));
  CHECK(both.mode == RecoveryPlan::Mode::BothNode);
  CHECK(both.both_node == 3);
  CHECK(both.reference == 3);

  CHECK_THROWS_AS(plan(Emp(5, {1, 2, 3}, {4, 5})), NotIdentifiableError);
  CHECK_THROWS_AS(plan(Emp(4, {1, 2, 3, 4}, {})), NotIdentifiableError);

  // forcing a mode whose witnesses are absent is a usage error
  CHECK_THROWS_AS(plan(Emp(4, {2, 4}, {1, 3}), RecoveryPlan::Mode::BothNode), InputError);
  CHECK_THROWS_AS(make_both_plan(Emp(4, {2, 4}, {1, 3}), 2), InputError);
  CHECK_THROWS_AS(make_pair_plan(Emp(5, {1, 2, 3}, {3, 4, 5}), 4, 4), InputError);
}

TEST_CASE("loop product recovered from the map alone") {
  // both-node route: P = 1 - 1/M[j,j]
  const LoopNetwork n2 = random_network(2, 21, 1);
  const Emp e2(2, {1, 2}, {1});
  const IoMap m2 = io_map(n2, e2);
  const RecoveryPlan p2 = plan(e2);
  CHECK(p2.both_node == 1);
  CHECK(loop_product_from_map(m2, p2) == n2.edge_from(1) * n2.edge_from(2));

  const LoopNetwork n4 = random_network(4, 33, 1);
  const Emp e4(4, {1, 2, 3, 4}, {2});
  CHECK(loop_product_from_map(io_map(n4, e4), plan(e4)) == loop_product(n4));

  // pair route: the quadruple ratio telescopes to P
  const LoopNetwork n6 = random_network(6, 55, 1);
  const Emp e6(6, {2, 4, 6}, {1, 3, 5});
  CHECK(loop_product_from_map(io_map(n6, e6), plan(e6)) == loop_product(n6));

  // a zero required entry is a non-generic instance
  IoMap zeroed = io_map(n2, e2);
  zeroed.entries[0][0] = RationalFunction();
  CHECK_THROWS_AS(loop_product_from_map(zeroed, p2), NonGenericError);
}

TEST_CASE("reference products equal the true path products") {
  // both-node reference
  const LoopNetwork n5 = random_network(5, 91, 1);
  const Emp e5(5, {1, 2, 3}, {3, 4, 5});
  const RecoveryPlan p5 = plan(e5);
  const IoMap m5 = io_map(n5, e5);
  const auto q5 = reference_products(m5, p5, loop_product_from_map(m5, p5));
  for (int i = 1; i <= 5; ++i) {
    if (i == p5.reference) continue;
    REQUIRE(q5.at(i) == path_product(n5, p5.reference, i));
  }

  // pair reference; the successor of r comes straight from row r
  const LoopNetwork n6 = random_network(6, 92, 1);
  const Emp e6(6, {2, 4, 6}, {1, 3, 5});
  const RecoveryPlan p6 = plan(e6);
  const IoMap m6 = io_map(n6, e6);
  const RationalFunction loop_p = loop_product_from_map(m6, p6);
  const auto q6 = reference_products(m6, p6, loop_p);
  const int r = p6.reference, s = r % 6 + 1;
  CHECK(q6.at(s) == m6.entry(r, s) * (RationalFunction::one() - loop_p));
  for (int i = 1; i <= 6; ++i) {
    if (i == r) continue;
    REQUIRE(q6.at(i) == path_product(n6, r, i));
  }
  const int before_r = (r + 6 - 2) % 6 + 1;
  CHECK(q6.at(before_r) == path_product(n6, r, before_r));
}

TEST_CASE("edge recovery on the 2-node full pattern") {
  const LoopNetwork n2 = random_network(2, 123, 1);
  const Emp full(2, {1, 2}, {1, 2});
  const IoMap m = io_map(n2, full);
  const LoopNetwork rec = recover_edges(m, full);
  CHECK(rec == n2);
  // the classical ratios: G21 = T21/T11 and G12 = T12/T11
  CHECK(rec.edge_from(1) == m.entry(2, 1) / m.entry(1, 1));
  CHECK(rec.edge_from(2) == m.entry(1, 2) / m.entry(1, 1));
}

TEST_CASE("recovery round trips exactly") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 8; ++iter) {
    const int n = 7;
    const LoopNetwork net = random_network(n, rng(), 1);
    // random valid pattern
    Emp emp = Emp::from_masks(n, 0, 0);
    for (;;) {
      const std::uint64_t ex = rng() & ((1ULL << n) - 1);
      const std::uint64_t me = rng() & ((1ULL << n) - 1);
      emp = Emp::from_masks(n, ex, me);
      EmpClass cls = nsc_check(emp);
      if (cls.valid()) break;
    }
    REQUIRE(recover_edges(io_map(net, emp), emp) == net);
  }
}

TEST_CASE("recovery step identity on the 3-node full pattern") {
  const LoopNetwork n3 = random_network(3, 17, 1);
  const Emp full(3, {1, 2, 3}, {1, 2, 3});
  const IoMap m = io_map(n3, full);
  const RationalFunction p = loop_product(n3);
  const RationalFunction g21 = n3.edge_from(1);
  // the step-by-step identity: G32 = T31 (1 - P) / G21
  CHECK(n3.edge_from(2) == m.entry(3, 1) * (RationalFunction::one() - p) / g21);
  CHECK(recover_edges(m, full) == n3);
}

TEST_CASE("recovery rejects mismatched maps") {
  const LoopNetwork n4 = random_network(4, 5, 1);
  const Emp a(4, {1, 2}, {2, 3, 4});
  const Emp b(4, {1, 3}, {2, 3, 4});
  const IoMap m = io_map(n4, a);
  CHECK_THROWS_AS(recover_edges(m, b), InputError);
  CHECK_THROWS_AS(recover_edges(m, Emp(5, {1, 2}, {2, 3, 4, 5})), InputError);

  // invalid pattern reaches the planner, not the dimension checks
  const Emp bad(4, {1, 2}, {3, 4});
  CHECK_THROWS_AS(recover_edges(io_map(n4, bad), bad), NotIdentifiableError);
}

TEST_CASE("plan independence when both conditions hold") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3, 4, 5, 6}) {
    const LoopNetwork net = random_network(n, rng(), 1);
    // all nodes both excited and measured: both routes available
    std::vector<int> all;
    for (int i = 1; i <= n; ++i) all.push_back(i);
    const Emp emp(n, all, all);
    const IoMap m = io_map(net, emp);
    const LoopNetwork via_both = recover_with_plan(m, emp, plan(emp, RecoveryPlan::Mode::BothNode));
    const LoopNetwork via_pair = recover_with_plan(m, emp, plan(emp, RecoveryPlan::Mode::PairMode));
    REQUIRE(via_both == via_pair);
    REQUIRE(via_both == net);
  }

  // exhaustively over every pattern offering both routes, for small loops
  for (int n : {4, 5}) {
    std::uint64_t index = 0;
    enumerate(n, ClassFilter::Valid, [&](const Emp& emp, const EmpClass&) {
      ++index;
      if ((emp.excited_mask() & emp.measured_mask()) == 0) return;
      if (measured_excited_pairs(emp).size() < 2) return;
      const LoopNetwork net = random_network(n, 7000 + index, 1);
      const IoMap m = io_map(net, emp);
      REQUIRE(recover_with_plan(m, emp, plan(emp, RecoveryPlan::Mode::BothNode)) == net);
      REQUIRE(recover_with_plan(m, emp, plan(emp, RecoveryPlan::Mode::PairMode)) == net);
    });
  }
}

TEST_CASE("any admissible reference yields the same network") {
  const int n = 6;
  const LoopNetwork net = random_network(n, 404, 1);
  std::vector<int> all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  const Emp emp(n, all, all);
  const IoMap m = io_map(net, emp);

  for (int j = 1; j <= n; ++j)
    REQUIRE(recover_with_plan(m, emp, make_both_plan(emp, j)) == net);

  const auto pairs = measured_excited_pairs(emp);
  REQUIRE(pairs.size() == static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (a == b) continue;
      REQUIRE(recover_with_plan(m, emp, make_pair_plan(emp, pairs[a].first, pairs[b].first)) == net);
    }

  // P through the quadruple ratio equals P through any both-node
  const RationalFunction p_both = loop_product_from_map(m, make_both_plan(emp, 3));
  const RationalFunction p_pair = loop_product_from_map(m, make_pair_plan(emp, 1, 4));
  CHECK(p_both == p_pair);
  CHECK(p_both == loop_product(net));
}

TEST_CASE("zero entries in the map surface as non-generic errors") {
  const LoopNetwork n5 = random_network(5, 81, 1);
  const Emp emp(5, {1, 2, 3}, {3, 4, 5});
  const RecoveryPlan p = plan(emp);
  IoMap m = io_map(n5, emp);
  const RationalFunction loop_p = loop_product_from_map(m, p);

  // zero out the column-r entry a measured-only node relies on
  IoMap broken = m;
  broken.entries[2][2] = RationalFunction();  // row of node 5, column of node 3 = reference
  CHECK_THROWS_AS(reference_products(broken, p, loop_p), NonGenericError);
}

TEST_CASE("roundtrip report on valid, contiguous and covered-violating patterns") {
  const LoopNetwork n5 = random_network(5, 31, 1);

  const RoundtripReport ok = verify_roundtrip(n5, Emp(5, {1, 2, 3}, {3, 4, 5}));
  CHECK(ok.emp_valid);
  CHECK(ok.full_match);
  CHECK(ok.recovered_count == 5);
  for (const auto& e : ok.edges) {
    CHECK(e.recovered);
    CHECK(e.equal);
  }

  // contiguous invalid with k = 3: the interior edges come back, the two
  // boundary edges (3->4 and 5->1) stay free
  const RoundtripReport partial = verify_roundtrip(n5, Emp(5, {1, 2, 3}, {4, 5}));
  CHECK_FALSE(partial.emp_valid);
  CHECK(partial.rule == "contiguous-blocks");
  CHECK(partial.recovered_count == 3);
  CHECK(partial.error.empty());
  for (const auto& e : partial.edges) {
    const bool boundary = (e.from == 3 && e.to == 4) || (e.from == 5 && e.to == 1);
    CHECK(e.recovered == !boundary);
    CHECK(e.equal == !boundary);
  }

  // rotated version of the same shape
  const RoundtripReport rot = verify_roundtrip(n5, Emp(5, {4, 5, 1}, {2, 3}));
  CHECK(rot.recovered_count == 3);
  for (const auto& e : rot.edges) {
    const bool boundary = (e.from == 1 && e.to == 2) || (e.from == 3 && e.to == 4);
    CHECK(e.recovered == !boundary);
  }

  const RoundtripReport uncovered = verify_roundtrip(n5, Emp(5, {1, 2}, {3, 4}));
  CHECK_FALSE(uncovered.emp_valid);
  CHECK(uncovered.rule == "uncovered-node");
  CHECK(uncovered.recovered_count == 0);

  // internal failures surface in the report instead of escaping
  const int old_cap = poly_degree_cap();
  set_poly_degree_cap(1);
  const RoundtripReport capped = verify_roundtrip(n5, Emp(5, {1, 2, 3}, {3, 4, 5}));
  set_poly_degree_cap(old_cap);
  CHECK_FALSE(capped.error.empty());
}
