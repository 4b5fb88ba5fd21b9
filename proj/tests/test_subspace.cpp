#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qekr/errors.hpp"
#include "qekr/geometry.hpp"
#include "qekr/subspace.hpp"

using namespace qekr;

namespace {

std::vector<Subspace> all_of(const AmbientSpace& s) {
  std::vector<Subspace> out;
  for (int d = -1; d <= s.n; ++d) {
    auto part = enumerate_subspaces(s, d).collect();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::set<int> points_of(const Subspace& u) {
  std::vector<oracle::Vec> gens;
  for (const auto& r : u.rows()) gens.push_back(r);
  return oracle::span_set(u.field(), gens, u.cols());
}

}  // namespace

TEST_CASE("rref_canonicalize examples") {
  Field f = field_make(2);
  Subspace a = rref_canonicalize(f, 2, {{0, 1, 1}, {1, 0, 1}});
  CHECK(a.rows() == Matrix{{1, 0, 1}, {0, 1, 1}});
  CHECK(a.proj_dim() == 1);

  Subspace b = rref_canonicalize(f, 2, {{1, 1, 0}, {1, 1, 0}});
  CHECK(b.rows() == Matrix{{1, 1, 0}});
  CHECK(b.proj_dim() == 0);

  Subspace e = rref_canonicalize(f, 2, {});
  CHECK(e.proj_dim() == -1);
  CHECK(e.empty());
}

TEST_CASE("rref_canonicalize rejects ragged rows") {
  Field f = field_make(3);
  try {
    rref_canonicalize(f, 2, {{1, 0, 0}, {1, 0}});
    FAIL("accepted ragged input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("canonicity under row mixing") {
  Field f = field_make(3);
  Matrix base{{1, 2, 0, 1}, {0, 1, 1, 2}, {2, 2, 1, 0}};
  Subspace ref = rref_canonicalize(f, 3, base);
  auto lin = [&](int a, const std::vector<int>& x, int b, const std::vector<int>& y) {
    std::vector<int> r(4);
    for (int i = 0; i < 4; ++i) r[i] = (a * x[i] + b * y[i]) % 3;
    return r;
  };
  CHECK(rref_canonicalize(f, 3, {base[2], base[0], base[1]}) == ref);
  CHECK(rref_canonicalize(f, 3, {lin(1, base[0], 2, base[1]), base[1], lin(2, base[2], 1, base[0])}) == ref);
  CHECK(rref_canonicalize(f, 3, ref.rows()) == ref);
  CHECK(rref_canonicalize(f, 3, {base[0], base[0], base[1], base[2], {0, 0, 0, 0}}) == ref);
}

TEST_CASE("join, meet, contains examples") {
  Field f = field_make(2);
  Subspace p = rref_canonicalize(f, 2, {{1, 0, 0}});
  Subspace r = rref_canonicalize(f, 2, {{0, 1, 0}});
  CHECK(join(p, r).rows() == Matrix{{1, 0, 0}, {0, 1, 0}});
  CHECK(join(p, p) == p);
  CHECK(meet(p, p) == p);

  Subspace l1 = rref_canonicalize(f, 2, {{1, 0, 0}, {0, 1, 0}});
  Subspace l2 = rref_canonicalize(f, 2, {{1, 0, 0}, {0, 0, 1}});
  CHECK(meet(l1, l2).proj_dim() == 0);
  CHECK(meet(l1, l2) == p);

  Subspace m1 = rref_canonicalize(f, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  Subspace m2 = rref_canonicalize(f, 3, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(join(m1, m2).proj_dim() == 3);
  CHECK(meet(m1, m2).proj_dim() == -1);

  Subspace plane = rref_canonicalize(f, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  Subspace line = rref_canonicalize(f, 3, {{1, 0, 1, 0}, {0, 1, 1, 0}});
  CHECK(contains(plane, line));
  CHECK(contains(plane, Subspace(f, 3)));
  CHECK_FALSE(contains(rref_canonicalize(f, 3, {{1, 0, 0, 0}}), line));
}

TEST_CASE("ambient mismatch") {
  Subspace a = rref_canonicalize(field_make(2), 2, {{1, 0, 0}});
  Subspace b = rref_canonicalize(field_make(2), 3, {{1, 0, 0, 0}});
  Subspace c = rref_canonicalize(field_make(3), 2, {{1, 0, 0}});
  for (const auto* other : {&b, &c}) {
    try {
      join(a, *other);
      FAIL("join accepted mismatched spaces");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::AmbientMismatch);
    }
    CHECK_THROWS_AS(meet(a, *other), Error);
    CHECK_THROWS_AS(contains(a, *other), Error);
  }
}

TEST_CASE("Grassmann identity over all pairs in PG(3,2)") {
  auto all = all_of(AmbientSpace::make(SpaceKind::PG, 3, 2));
  REQUIRE(all.size() == 67);
  int bad = 0;
  for (const auto& u : all)
    for (const auto& v : all) {
      Subspace m = meet(u, v), j = join(u, v);
      if (m.proj_dim() + j.proj_dim() != u.proj_dim() + v.proj_dim()) ++bad;
      if (meet_dim(u, v) != m.proj_dim()) ++bad;
      if (!contains(u, m) || !contains(v, m) || !contains(j, u) || !contains(j, v)) ++bad;
      if (contains(u, v) != (m == v)) ++bad;
    }
  CHECK(bad == 0);
}

TEST_CASE("meet and join agree with point sets") {
  for (int q : {2, 3}) {
    auto all = all_of(AmbientSpace::make(SpaceKind::PG, 2, q));
    int bad = 0;
    for (const auto& u : all)
      for (const auto& v : all) {
        auto pu = points_of(u), pv = points_of(v);
        std::set<int> inter;
        for (int x : pu)
          if (pv.count(x)) inter.insert(x);
        if (points_of(meet(u, v)) != inter) ++bad;
        auto pj = points_of(join(u, v));
        bool sup = true;
        for (int x : pu) sup &= pj.count(x) > 0;
        for (int x : pv) sup &= pj.count(x) > 0;
        if (!sup) ++bad;
      }
    CHECK(bad == 0);
  }
}

TEST_CASE("lattice laws on triples in PG(2,2) and PG(2,3)") {
  for (int q : {2, 3}) {
    CAPTURE(q);
    auto all = all_of(AmbientSpace::make(SpaceKind::PG, 2, q));
    int bad = 0;
    for (const auto& u : all)
      for (const auto& v : all) {
        if (!(meet(u, v) == meet(v, u)) || !(join(u, v) == join(v, u))) ++bad;
        if (!(meet(u, join(u, v)) == u) || !(join(u, meet(u, v)) == u)) ++bad;
        for (const auto& w : all) {
          if (!(meet(meet(u, v), w) == meet(u, meet(v, w)))) ++bad;
          if (!(join(join(u, v), w) == join(u, join(v, w)))) ++bad;
        }
      }
    CHECK(bad == 0);
  }
}
