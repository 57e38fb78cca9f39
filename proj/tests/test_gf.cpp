#include <random>

#include "doctest.h"
#include "pic/catalogue.hpp"
#include "pic/gf.hpp"

using namespace pic;

namespace {

GFMatrix columns_of(const GFMatrix& m, const std::vector<int>& idx) {
  GFMatrix out(m.q(), m.rows(), 0);
  for (int c : idx) out.append_column(m.column(c - 1));
  return out;
}

GFMatrix seven_user_generator() {
  const LinearScheme s = no_cover_demo_scheme();
  GFMatrix m(2, 7, 0);
  for (const auto& g : s.G) m.append_columns(g);
  return m;
}

GFMatrix random_matrix(std::mt19937_64& rng, int q, int rows, int cols) {
  GFMatrix m(q, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<int>(rng() % q));
  return m;
}

}  // namespace

TEST_CASE("field inverses over small primes") {
  for (int q : {2, 3, 5, 7, 11}) {
    for (int v = 1; v < q; ++v) CHECK(v * gf_inverse(v, q) % q == 1);
  }
  CHECK_THROWS(gf_inverse(0, 5));
}

TEST_CASE("rref on identity and zero matrices") {
  const GFMatrix id = GFMatrix::identity(2, 3);
  const RrefResult r = rref(id);
  CHECK(r.matrix == id);
  CHECK(r.rank == 3);
  CHECK(r.pivot_columns == std::vector<int>{0, 1, 2});

  const GFMatrix zero(2, 2, 4);
  const RrefResult z = rref(zero);
  CHECK(z.matrix == zero);
  CHECK(z.rank == 0);
  CHECK(z.pivot_columns.empty());
}

TEST_CASE("the 7x7 keyless generator has rank 3") {
  // rows 4..7 are sums of rows 1..3: r4=r1+r2, r5=r1+r3, r6=r1+r2+r3, r7=r2+r3
  const GFMatrix m = seven_user_generator();
  CHECK(rank_of(m) == 3);
  CHECK(rref(m).rank == 3);
}

TEST_CASE("in_span basics") {
  const GFMatrix basis = GFMatrix::identity(2, 2);
  CHECK(in_span({1, 1}, basis));
  const GFMatrix single = GFMatrix(2, {{0}, {1}});
  CHECK_FALSE(in_span({1, 0}, single));
  CHECK_THROWS(in_span({1, 0, 0}, single));

  // empty basis spans only zero
  const GFMatrix empty(2, 2, 0);
  CHECK(in_span({0, 0}, empty));
  CHECK_FALSE(in_span({1, 0}, empty));
}

TEST_CASE("span relations among the 7x7 generator columns") {
  const GFMatrix m = seven_user_generator();
  CHECK(in_span(m.column(0), columns_of(m, {5, 7})));
  CHECK(in_span(m.column(0), columns_of(m, {2, 6})));
  CHECK_FALSE(subspace_contained(columns_of(m, {2, 6}), columns_of(m, {1})));
  CHECK(subspace_contained(columns_of(m, {1}), columns_of(m, {2, 6})));
}

TEST_CASE("subspace containment basics") {
  const GFMatrix zero(2, 3, 2);
  const GFMatrix id = GFMatrix::identity(2, 3);
  CHECK(subspace_contained(zero, id));
  CHECK(subspace_contained(zero, GFMatrix(2, 3, 0)));
  const GFMatrix single = GFMatrix(2, {{1}, {0}, {0}});
  CHECK_FALSE(subspace_contained(id, single));
}

TEST_CASE("rank properties on random matrices") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    const int q = (iter % 2) ? 2 : 3;
    GFMatrix m = random_matrix(rng, q, 1 + int(rng() % 5), 1 + int(rng() % 5));
    CHECK(rank_of(m) == rank_of(m.transposed()));

    // row permutation preserves rank
    GFMatrix p(q, m.rows(), m.cols());
    std::vector<int> perm(m.rows());
    for (int i = 0; i < m.rows(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) p.set(perm[r], c, m.at(r, c));
    CHECK(rank_of(p) == rank_of(m));

    // in_span(v, b) <=> rank(b) == rank([b|v])
    const std::vector<int> v = random_matrix(rng, q, m.rows(), 1).column(0);
    GFMatrix ext = m;
    ext.append_column(v);
    CHECK(in_span(v, m) == (rank_of(ext) == rank_of(m)));

    // containment is reflexive; mutual containment means equal spans
    CHECK(subspace_contained(m, m));
    GFMatrix b = random_matrix(rng, q, m.rows(), 1 + int(rng() % 4));
    GFMatrix c = random_matrix(rng, q, m.rows(), 1 + int(rng() % 4));
    if (subspace_contained(m, b) && subspace_contained(b, c))
      CHECK(subspace_contained(m, c));
  }
}
