#include <random>

#include "doctest.h"
#include "pic/catalogue.hpp"
#include "pic/oracle.hpp"
#include "pic/verifier.hpp"

using namespace pic;

namespace {

const CatalogueEntry& entry_named(const std::string& name) {
  for (const auto& e : catalogue_entries())
    if (e.name == name) return e;
  throw std::runtime_error("no entry " + name);
}

LinearScheme random_scheme(std::mt19937_64& rng, int n_users, int r) {
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = r;
  for (int i = 0; i < n_users; ++i) {
    GFMatrix g(2, r, 1);
    for (int row = 0; row < r; ++row) g.set(row, 0, int(rng() % 2));
    s.G.push_back(std::move(g));
  }
  for (const auto& pat : all_key_patterns(n_users)) {
    const int w = int(rng() % 3);  // width 0..2
    if (w == 0) continue;
    GFMatrix h(2, r, w);
    for (int row = 0; row < r; ++row)
      for (int c = 0; c < w; ++c) h.set(row, c, int(rng() % 2));
    s.keys.push_back({pat, std::move(h)});
  }
  return s;
}

}  // namespace

TEST_CASE("the showcase vertex code is accepted") {
  const CatalogueEntry& e = entry_named("n3-cycle");
  CHECK(verify_private(e.vertices[0].scheme, e.graph).ok());
}

TEST_CASE("the 5-user circulant code is accepted with total key rate 4") {
  const Verdict v = verify_private(circulant5_code(), circulant5_graph());
  CHECK(v.ok());
  const RateTuple t = scheme_rate(circulant5_code());
  CHECK(t.transmission_rate == 3);
  CHECK(t.sum_key_rate() == 4);
}

TEST_CASE("removing one key symbol from a transmission leaks") {
  // drop k110 from the first transmission of the showcase vertex code:
  // user 3 subtracts the known x1 and k101 and isolates x2
  const SideInfoGraph cyc(3, {{2}, {3}, {1}});
  const LinearScheme broken = parse_scheme(R"({
    "q":2,"n":1,"r":2,
    "G": [[[1],[0]], [[1],[1]], [[0],[1]]],
    "keys": [{"pattern":"110","H":[[0],[1]]},
             {"pattern":"101","H":[[1],[0]]},
             {"pattern":"011","H":[[0],[1]]}]})");
  const Verdict v = verify_private(broken, cyc);
  CHECK(v.status == Verdict::Status::PrivacyViolation);
  CHECK(v.user == 3);
}

TEST_CASE("weak verifier accepts the 7-user generator and the cover code") {
  CHECK(verify_weak_private(no_cover_demo_scheme(), no_cover_demo_graph()).ok());
  CHECK(verify_weak_private(secure_cover_demo_scheme(), secure_cover_demo_graph()).ok());
}

TEST_CASE("a cleartext transmission violates weak privacy") {
  const SideInfoGraph empty2(2, {{}, {}});
  LinearScheme s;
  s.q = 2;
  s.n = 1;
  s.r = 1;
  s.G = {GFMatrix(2, {{1}}), GFMatrix(2, {{0}})};
  const Verdict v = verify_weak_private(s, empty2);
  CHECK(v.status == Verdict::Status::PrivacyViolation);
  CHECK(v.user == 2);

  LinearScheme keyed = s;
  keyed.keys.push_back({KeyPattern::from_string("10"), GFMatrix(2, {{1}})});
  CHECK_THROWS_AS(verify_weak_private(keyed, empty2), ModelError);
}

TEST_CASE("scheme rates") {
  const CatalogueEntry& e = entry_named("n3-cycle");
  const RateTuple t = scheme_rate(e.vertices[0].scheme);
  CHECK(t.transmission_rate == 2);
  CHECK(t.key_rate(KeyPattern::from_string("110").mask()) == 1);
  CHECK(t.key_rate(KeyPattern::from_string("101").mask()) == 1);
  CHECK(t.key_rate(KeyPattern::from_string("011").mask()) == 1);
  CHECK(t.key_rate(KeyPattern::from_string("100").mask()) == 0);

  const RateTuple b2 = scheme_rate(cycle5_block2_code());
  CHECK(b2.transmission_rate == Rat(5, 2));
  CHECK(b2.key_rates.size() == 5);
  for (const auto& [mask, rate] : b2.key_rates) CHECK(rate == Rat(1, 2));

  LinearScheme empty;
  empty.q = 2;
  empty.n = 1;
  empty.r = 0;
  empty.G = {GFMatrix(2, 0, 1)};
  CHECK(scheme_rate(empty).transmission_rate == 0);
  CHECK(scheme_rate(empty).key_rates.empty());
}

TEST_CASE("verdict invariant under row operations") {
  std::mt19937_64 rng(53);
  const SideInfoGraph cyc(3, {{2}, {3}, {1}});
  for (int iter = 0; iter < 40; ++iter) {
    LinearScheme s = random_scheme(rng, 3, 2);
    const bool before = verify_private(s, cyc).ok();

    // random invertible 2x2 over GF(2)
    static const int mats[6][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 1},
                                   {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};
    const int* a = mats[rng() % 6];
    auto transform = [&](GFMatrix& m) {
      GFMatrix out(2, 2, m.cols());
      for (int c = 0; c < m.cols(); ++c) {
        out.set(0, c, (a[0] * m.at(0, c) + a[1] * m.at(1, c)) % 2);
        out.set(1, c, (a[2] * m.at(0, c) + a[3] * m.at(1, c)) % 2);
      }
      m = out;
    };
    for (auto& g : s.G) transform(g);
    for (auto& kb : s.keys) transform(kb.columns);
    CHECK(verify_private(s, cyc).ok() == before);
  }
}

TEST_CASE("verifier and oracle agree on random single-block schemes") {
  std::mt19937_64 rng(59);
  int checked = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 2 + int(rng() % 2);
    std::vector<std::vector<int>> sets(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (j != i && rng() % 2) sets[i - 1].push_back(j);
    const SideInfoGraph g(n, sets);
    const LinearScheme s = random_scheme(rng, n, 1 + int(rng() % 3));
    const bool algebraic = verify_private(s, g).ok();
    const OracleReport rep = oracle_check_private(s, g);
    CHECK(algebraic == rep.clean());
    ++checked;
  }
  CHECK(checked == 60);
}
