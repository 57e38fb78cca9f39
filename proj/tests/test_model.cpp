#include <random>

#include "doctest.h"
#include "pic/catalogue.hpp"
#include "pic/model.hpp"

using namespace pic;

TEST_CASE("rational parsing and rendering") {
  CHECK(rat_to_string(rat_from_string("10/3")) == "10/3");
  CHECK(rat_to_string(rat_from_string("-4/6")) == "-2/3");
  CHECK(rat_to_string(rat_from_string("7")) == "7");
  CHECK(rat_to_string(rat_from_string("0/5")) == "0");
  CHECK(rat_from_string("5/2") == Rat(5, 2));
  CHECK_THROWS(rat_from_string(""));
  CHECK_THROWS(rat_from_string("1/0"));
  CHECK_THROWS(rat_from_string("a/b"));
  CHECK_THROWS(rat_from_string("1/2/3"));
  CHECK_THROWS(rat_from_string("1.5"));
}

TEST_CASE("graph parsing") {
  const SideInfoGraph g = parse_graph(R"({"n":3,"side_info":[[2],[3],[1]]})");
  CHECK(g.n() == 3);
  CHECK(g.s(1) == std::vector<int>{2});
  CHECK(g.s(2) == std::vector<int>{3});
  CHECK(g.s(3) == std::vector<int>{1});

  const SideInfoGraph single = parse_graph(R"({"n":1,"side_info":[[]]})");
  CHECK(single.n() == 1);

  CHECK_THROWS_AS(parse_graph(R"({"n":2,"side_info":[[1],[]]})"), ModelError);  // self-loop
  CHECK_THROWS_AS(parse_graph(R"({"n":2,"side_info":[[3],[]]})"), ModelError);  // range
  CHECK_THROWS_AS(parse_graph(R"({"n":2,"side_info":[[2]]})"), ModelError);     // count
  CHECK_THROWS_AS(parse_graph("not json"), ModelError);
}

TEST_CASE("key patterns") {
  const KeyPattern p = KeyPattern::from_string("110");
  CHECK(p.mask() == 3);
  CHECK(p.str() == "110");
  CHECK(p.has_user(1));
  CHECK(p.has_user(2));
  CHECK_FALSE(p.has_user(3));
  CHECK_THROWS_AS(KeyPattern::from_string("000"), ModelError);
  CHECK_THROWS_AS(KeyPattern::from_string("111"), ModelError);
  CHECK_THROWS_AS(KeyPattern::from_string("1x0"), ModelError);
  CHECK(all_key_patterns(3).size() == 6);
  CHECK(all_key_patterns(1).empty());
}

TEST_CASE("scheme parsing and validation") {
  const std::string text = R"({
    "q": 2, "n": 1, "r": 2,
    "G": [[[1],[0]], [[1],[1]], [[0],[1]]],
    "keys": [{"pattern": "110", "H": [[1],[1]]},
             {"pattern": "101", "H": [[1],[0]]},
             {"pattern": "011", "H": [[0],[1]]}]
  })";
  const LinearScheme s = parse_scheme(text);
  CHECK(s.n_users() == 3);
  CHECK(s.r == 2);
  CHECK(s.keys.size() == 3);
  CHECK(s.key_block(KeyPattern::from_string("110").mask()) != nullptr);

  CHECK_THROWS_AS(parse_scheme(R"({"q":4,"n":1,"r":1,"G":[[[1]]],"keys":[]})"), ModelError);
  CHECK_THROWS_AS(parse_scheme(R"({"q":2,"n":1,"r":2,"G":[[[1],[0]]],
    "keys":[{"pattern":"10","H":[[1],[0],[0]]}]})"),
                  ModelError);  // H has 3 rows but r = 2... pattern length also wrong
  CHECK_THROWS_AS(parse_scheme(R"({"q":2,"n":1,"r":1,"G":[[[1]],[[1]]],
    "keys":[{"pattern":"10","H":[[1]]},{"pattern":"10","H":[[1]]}]})"),
                  ModelError);  // duplicate pattern
  CHECK_THROWS_AS(parse_scheme(R"({"q":3,"n":1,"r":1,"G":[[[5]],[[1]]],"keys":[]})"),
                  ModelError);  // entry >= q
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const int n = 1 + int(rng() % 4);
    std::vector<std::vector<int>> sets(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (j != i && rng() % 2) sets[i - 1].push_back(j);
    const SideInfoGraph g(n, sets);
    CHECK(parse_graph(serialize_graph(g)) == g);
  }

  const LinearScheme s = circulant5_code();
  const LinearScheme back = parse_scheme(serialize_scheme(s));
  CHECK(back.q == s.q);
  CHECK(back.G == s.G);
  CHECK(back.keys.size() == s.keys.size());
  CHECK(serialize_scheme(back) == serialize_scheme(s));

  RateTuple t;
  t.n_users = 3;
  t.transmission_rate = Rat(5, 2);
  t.key_rates[KeyPattern::from_string("110").mask()] = Rat(1, 2);
  const RateTuple t2 = parse_rate_tuple(serialize_rate_tuple(t));
  CHECK(t2 == t);

  const MulticastScheme ms = parse_multicast(
      R"({"q":2,"n":1,"n_users":2,"sessions":[{"recipients":[1,2],"terms":[[1,1,1],[2,1,1]]}]})");
  CHECK(serialize_multicast(parse_multicast(serialize_multicast(ms))) ==
        serialize_multicast(ms));
}

TEST_CASE("derived sets") {
  const SideInfoGraph cyc = parse_graph(R"({"n":3,"side_info":[[2],[3],[1]]})");
  const DerivedSets d = derived_sets(cyc);
  CHECK(d.a_sets[0] == std::vector<int>{1, 2});
  CHECK(d.a_sets[1] == std::vector<int>{2, 3});
  CHECK(d.a_sets[2] == std::vector<int>{1, 3});
  CHECK(d.pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}});

  // complete bidirectional graph: nothing to cover
  const SideInfoGraph k3(3, {{2, 3}, {1, 3}, {1, 2}});
  CHECK(derived_sets(k3).pairs.empty());

  const SideInfoGraph empty2(2, {{}, {}});
  CHECK(derived_sets(empty2).pairs ==
        std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
}

TEST_CASE("derived sets are permutation equivariant") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 2 + int(rng() % 4);
    std::vector<std::vector<int>> sets(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (j != i && rng() % 2) sets[i - 1].push_back(j);
    const SideInfoGraph g(n, sets);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);  // user i -> perm[i-1]

    std::vector<std::vector<int>> psets(n);
    for (int i = 1; i <= n; ++i)
      for (int j : g.s(i)) psets[perm[i - 1] - 1].push_back(perm[j - 1]);
    const SideInfoGraph pg(n, psets);

    auto mapped = derived_sets(g).pairs;
    for (auto& [a, b] : mapped) {
      a = perm[a - 1];
      b = perm[b - 1];
    }
    std::sort(mapped.begin(), mapped.end());
    auto direct = derived_sets(pg).pairs;
    std::sort(direct.begin(), direct.end());
    CHECK(mapped == direct);
  }
}
