#include "doctest.h"
#include "pic/catalogue.hpp"
#include "pic/coloring.hpp"
#include "pic/oracle.hpp"

using namespace pic;

namespace {

const CatalogueEntry& entry_named(const std::string& name) {
  for (const auto& e : catalogue_entries())
    if (e.name == name) return e;
  throw std::runtime_error("no entry " + name);
}

}  // namespace

TEST_CASE("keyed oracle on the showcase vertex code") {
  const CatalogueEntry& e = entry_named("n3-cycle");
  const OracleReport rep = oracle_check_private(e.vertices[0].scheme, e.graph);
  CHECK(rep.decodable);
  CHECK(rep.leaks.empty());
  CHECK(rep.enumerated_states == 64);  // 2^(3 messages + 3 key symbols)
}

TEST_CASE("cleartext transmission leaks with an empty conditioning cell") {
  const SideInfoGraph empty2(2, {{}, {}});
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = 1;
  s.G = {GFMatrix(2, {{1}}), GFMatrix(2, {{0}})};
  const OracleReport rep = oracle_check_private(s, empty2);
  CHECK_FALSE(rep.decodable);  // user 2 cannot decode either
  REQUIRE_FALSE(rep.leaks.empty());
  CHECK(rep.leaks.front().user == 2);
  CHECK(rep.leaks.front().witness.find("cell=") != std::string::npos);
}

TEST_CASE("block-2 code on the 5-cycle is clean") {
  const OracleReport rep = oracle_check_private(cycle5_block2_code(), cycle5_graph());
  CHECK(rep.decodable);
  CHECK(rep.leaks.empty());
  CHECK(rep.enumerated_states == (uint64_t(1) << 15));
}

TEST_CASE("weak oracle examples") {
  const WeakOracleReport cover =
      oracle_check_weak(secure_cover_demo_scheme(), secure_cover_demo_graph());
  CHECK(cover.clean());
  CHECK(cover.enumerated_states == 32);

  const WeakOracleReport gen = oracle_check_weak(no_cover_demo_scheme(), no_cover_demo_graph());
  CHECK(gen.clean());
  CHECK(gen.enumerated_states == 128);
}

TEST_CASE("pairwise masking versus split symbols") {
  const SideInfoGraph g(3, {{2}, {1}, {}});
  // single sum x1+x2: user 3 learns nothing about either message alone
  LinearScheme masked;
  masked.q = 2;
  masked.n = 1;
  masked.r = 1;
  masked.G = {GFMatrix(2, {{1}}), GFMatrix(2, {{1}}), GFMatrix(2, {{0}})};
  const WeakOracleReport a = oracle_check_weak(masked, g);
  for (const auto& pv : a.pairs)
    if (pv.i == 3) CHECK_FALSE(pv.leaks);

  // the split (x1, x2) exposes both
  LinearScheme split;
  split.q = 2;
  split.n = 1;
  split.r = 2;
  split.G = {GFMatrix(2, {{1}, {0}}), GFMatrix(2, {{0}, {1}}), GFMatrix(2, {{0}, {0}})};
  const WeakOracleReport b = oracle_check_weak(split, g);
  for (const auto& pv : b.pairs)
    if (pv.i == 3) CHECK(pv.leaks);
}

TEST_CASE("multicast oracle on the 5-cycle plan") {
  const MulticastPlan plan = multicast_min_sessions(cycle5_graph());
  const MulticastScheme ms = multicast_scheme_from_coloring(cycle5_graph(), plan.coloring);
  const OracleReport rep = oracle_check_multicast(ms, cycle5_graph());
  CHECK(rep.decodable);
  CHECK(rep.leaks.empty());
  CHECK(rep.enumerated_states == 1024);  // 2^(5 users x 2 blocks)
}

TEST_CASE("multicast failures") {
  // broadcasting x1 to everyone leaks at user 2
  MulticastScheme ms;
  ms.q = 2;
  ms.n = 1;
  ms.n_users = 2;
  ms.sessions = {{{1, 2}, {{1, 1, 1}}}};
  const SideInfoGraph empty2(2, {{}, {}});
  const OracleReport rep = oracle_check_multicast(ms, empty2);
  REQUIRE_FALSE(rep.leaks.empty());
  CHECK(rep.leaks.front().user == 2);

  // no sessions: the single user cannot be served
  MulticastScheme none;
  none.q = 2;
  none.n = 1;
  none.n_users = 1;
  const SideInfoGraph single(1, {{}});
  CHECK_FALSE(oracle_check_multicast(none, single).decodable);
}

TEST_CASE("state limit enforced") {
  const CatalogueEntry& e = entry_named("n3-cycle");
  CHECK_THROWS_AS(oracle_check_private(e.vertices[0].scheme, e.graph, 32), ModelError);
}

TEST_CASE("reports are deterministic") {
  const WeakOracleReport a = oracle_check_weak(no_cover_demo_scheme(), no_cover_demo_graph());
  const WeakOracleReport b = oracle_check_weak(no_cover_demo_scheme(), no_cover_demo_graph());
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].leaks == b.pairs[i].leaks);
    CHECK(a.pairs[i].witness == b.pairs[i].witness);
  }
}
