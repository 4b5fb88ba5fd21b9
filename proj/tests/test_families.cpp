#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "qekr/errors.hpp"
#include "qekr/families.hpp"

using namespace qekr;

namespace {

AmbientSpace PG(int n, int q) { return AmbientSpace::make(SpaceKind::PG, n, q); }
AmbientSpace AG(int n, int q) { return AmbientSpace::make(SpaceKind::AG, n, q); }
Params P(int q, int n, int k, int t) { return Params{q, n, k, t, std::nullopt, std::nullopt}; }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ParseError;
}

// Right action of an invertible matrix g on row vectors.
Subspace act(const Subspace& s, const Matrix& g) {
  const Field& f = s.field();
  Matrix out;
  for (const auto& row : s.rows()) {
    std::vector<int> r(row.size(), 0);
    for (std::size_t j = 0; j < row.size(); ++j)
      for (std::size_t i = 0; i < row.size(); ++i)
        r[j] = f.add(r[j], f.mul(row[i], g[i][j]));
    out.push_back(r);
  }
  return rref_canonicalize(f, s.ambient_n(), out);
}

// Random invertible matrix; with fix_infinity, it maps {x0 = 0} to itself.
Matrix random_collineation(const Field& f, int n, std::mt19937& rng, bool fix_infinity) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  for (;;) {
    Matrix g(n + 1, std::vector<int>(n + 1));
    for (auto& row : g)
      for (auto& x : row) x = d(rng);
    if (fix_infinity)
      for (int i = 1; i <= n; ++i) g[i][0] = 0;
    if (rref_canonicalize(f, n, g).rank() == n + 1) return g;
  }
}

std::optional<Subspace> act_opt(const std::optional<Subspace>& s, const Matrix& g) {
  if (!s) return std::nullopt;
  return act(*s, g);
}

}  // namespace

TEST_CASE("family basics") {
  auto S = PG(3, 2);
  Subspace a = S.coordinate_span({0, 1});
  Subspace b = S.coordinate_span({2, 3});
  Family f = Family::from_members(S, 1, {b, a, a});
  CHECK(f.size() == 2);
  CHECK(f[0] < f[1]);
  CHECK(f.contains(a));
  CHECK(kind_of([&] { Family::from_members(S, 1, {a, a}, true); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([&] { Family::from_members(S, 2, {a}); }) == ErrorKind::InvariantViolation);
  auto A = AG(3, 2);
  CHECK(kind_of([&] { Family::from_members(A, 1, {A.coordinate_span({1, 2})}); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("make_pencil") {
  auto S = PG(3, 2);
  Subspace pt = S.coordinate_span({3});
  CHECK(make_pencil(S, pt, 1).size() == 7);
  CHECK(make_pencil(S, pt, 0).members() == std::vector<Subspace>{pt});
  auto A = AG(3, 2);
  Family al = make_pencil(A, A.coordinate_span({0}), 1);
  CHECK(al.size() == 7);
  CHECK(kind_of([&] { make_pencil(A, A.coordinate_span({1}), 1); }) == ErrorKind::NotInSpace);
  CHECK(kind_of([&] { make_pencil(S, S.coordinate_span({1, 2}), 0); }) == ErrorKind::DimensionOutOfRange);
}

TEST_CASE("example spot sizes") {
  Family p1 = make_example(ExampleId::P1, PG(4, 2), P(2, 4, 2, 1));
  Family p2 = make_example(ExampleId::P2, PG(4, 2), P(2, 4, 2, 1));
  CHECK(p1.size() == 15);
  CHECK(p1 == p2);
  CHECK(make_example(ExampleId::P1, PG(6, 2), P(2, 6, 3, 1)).size() == 115);
  CHECK(make_example(ExampleId::A1, AG(6, 2), P(2, 6, 3, 1)).size() == 99);
  CHECK(make_example(ExampleId::A2, AG(4, 2), P(2, 4, 2, 1)).size() == 7);
}

TEST_CASE("construction sizes match the closed forms") {
  struct Case {
    int q, n, k, t;
  };
  for (Case c : {Case{2, 4, 2, 1}, Case{2, 5, 2, 1}, Case{2, 5, 3, 2}, Case{3, 4, 2, 1}, Case{2, 6, 3, 1},
                 Case{2, 6, 3, 2}, Case{2, 7, 4, 2}, Case{3, 5, 2, 1}, Case{2, 6, 4, 3}}) {
    CAPTURE(c.q);
    CAPTURE(c.n);
    CAPTURE(c.k);
    CAPTURE(c.t);
    Params p = P(c.q, c.n, c.k, c.t);
    for (auto id : {ExampleId::P1, ExampleId::P2})
      CHECK(CountValue(make_example(id, PG(c.n, c.q), p).size()) == size_example(id, Form::Closed, p));
    for (auto id : {ExampleId::A1, ExampleId::A2})
      CHECK(CountValue(make_example(id, AG(c.n, c.q), p).size()) == size_example(id, Form::Closed, p));
    CHECK(CountValue(make_example(ExampleId::Pencil, PG(c.n, c.q), p).size()) == size_pencil(p));
  }
}

TEST_CASE("P2 and A2 agree with direct filters over all k-spaces") {
  Params p = P(2, 6, 3, 1);
  auto S = PG(6, 2);
  Anchors a = canonical_anchors(ExampleId::P2, S, p);
  std::vector<Subspace> filtered;
  for (const auto& s : enumerate_subspaces(S, 3).collect())
    if (meet_dim(s, *a.gamma) >= 2) filtered.push_back(s);
  CHECK(make_example(ExampleId::P2, S, p) == Family::from_members(S, 3, filtered));

  for (Params pa : {P(2, 4, 2, 1), P(2, 6, 3, 1)}) {
    auto A = AG(pa.n, 2);
    Anchors b = canonical_anchors(ExampleId::A2, A, pa);
    std::set<Subspace> r;
    for (const auto& s : enumerate_within(A, *b.gamma, pa.t + 1).collect())
      if (contains(s, *b.base_point)) r.insert(s);
    std::vector<Subspace> expect;
    for (const auto& s : enumerate_subspaces(A, pa.k).collect())
      if (contains(s, *b.gamma) || r.count(meet(s, *b.gamma))) expect.push_back(s);
    CHECK(make_example(ExampleId::A2, A, pa) == Family::from_members(A, pa.k, expect));
  }
}

TEST_CASE("examples are t-intersecting, maximal and not pencils") {
  struct Case {
    ExampleId id;
    int q, n, k, t;
  };
  for (Case c : {Case{ExampleId::P1, 2, 4, 2, 1}, Case{ExampleId::P2, 2, 4, 2, 1}, Case{ExampleId::P1, 2, 5, 2, 1},
                 Case{ExampleId::P2, 2, 5, 3, 2}, Case{ExampleId::A1, 2, 4, 2, 1}, Case{ExampleId::A2, 2, 4, 2, 1},
                 Case{ExampleId::A1, 2, 5, 3, 2}, Case{ExampleId::A2, 2, 5, 2, 1}, Case{ExampleId::A1, 3, 4, 2, 1},
                 Case{ExampleId::P1, 2, 6, 3, 1}}) {
    CAPTURE(example_name(c.id));
    CAPTURE(c.n);
    CAPTURE(c.k);
    CAPTURE(c.t);
    bool pg = c.id == ExampleId::P1 || c.id == ExampleId::P2;
    auto space = pg ? PG(c.n, c.q) : AG(c.n, c.q);
    Params p = P(c.q, c.n, c.k, c.t);
    Family f = make_example(c.id, space, p);
    CHECK(is_pairwise_t_intersecting(f, c.t).ok);
    CHECK(is_maximal(f, c.t).maximal);
    CHECK_FALSE(is_t_pencil(f, c.t));
    Anchors a = canonical_anchors(c.id, space, p);
    Family pencil = make_pencil(space, *a.delta, c.k);
    CHECK(is_t_pencil(pencil, c.t));
    std::size_t outside = 0;
    for (const auto& m : f.members()) outside += !pencil.contains(m);
    CHECK(outside > 0);
  }
}

TEST_CASE("A1 trace conditions and A2 pattern conditions hold literally") {
  for (Params p : {P(2, 6, 3, 1), P(3, 4, 2, 1), P(2, 5, 3, 2)}) {
    auto A = AG(p.n, p.q);
    Anchors a = canonical_anchors(ExampleId::A1, A, p);
    Subspace sigma = join(*a.pi, *a.delta);
    Subspace delta_inf = trace_at_infinity(A, *a.delta);
    Family f = make_example(ExampleId::A1, A, p);
    std::set<Subspace> traces;
    std::size_t s1 = 0;
    for (const auto& m : f.members()) {
      if (contains(m, *a.delta)) continue;
      ++s1;
      CHECK(contains(sigma, m));
      Subspace tr = trace_at_infinity(A, m);
      CHECK_FALSE(contains(tr, delta_inf));
      traces.insert(tr);
    }
    CHECK(traces.size() == s1);
    CHECK(CountValue(s1) == theta(p.k, p.q) - theta(p.k - p.t, p.q));
    CHECK(f.contains(*a.pi));
  }
  for (Params p : {P(2, 4, 2, 1), P(3, 6, 3, 1), P(2, 6, 3, 2)}) {
    auto A = AG(p.n, p.q);
    Anchors a = canonical_anchors(ExampleId::A2, A, p);
    Family f = make_example(ExampleId::A2, A, p);
    std::set<Subspace> r;
    for (const auto& m : f.members()) {
      Subspace x = meet(m, *a.gamma);
      CHECK(x.proj_dim() >= p.t + 1);
      if (x.proj_dim() == p.t + 1) r.insert(x);
    }
    CHECK(CountValue(r.size()) == theta(p.t + 1, p.q));
    std::vector<Subspace> rv(r.begin(), r.end());
    std::set<Subspace> traces;
    for (std::size_t i = 0; i < rv.size(); ++i) {
      traces.insert(trace_at_infinity(A, rv[i]));
      for (std::size_t j = i + 1; j < rv.size(); ++j) CHECK(affine_intersection_dim(rv[i], rv[j]) == p.t);
    }
    CHECK(traces.size() == rv.size());
  }
}

TEST_CASE("anchors under random collineations give the same sizes") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 6; ++trial) {
    for (Params p : {P(2, 5, 2, 1), P(3, 4, 2, 1), P(2, 5, 3, 2)}) {
      for (bool affine : {false, true}) {
        auto space = affine ? AG(p.n, p.q) : PG(p.n, p.q);
        Matrix g = random_collineation(space.field, p.n, rng, affine);
        for (auto id : affine ? std::vector{ExampleId::A1, ExampleId::A2} : std::vector{ExampleId::P1, ExampleId::P2}) {
          Anchors a = canonical_anchors(id, space, p);
          Anchors b;
          b.delta = act_opt(a.delta, g);
          b.pi = act_opt(a.pi, g);
          b.gamma = act_opt(a.gamma, g);
          b.base_point = act_opt(a.base_point, g);
          Family moved = make_example(id, space, p, &b);
          CHECK(CountValue(moved.size()) == size_example(id, Form::Closed, p));
          CHECK(is_pairwise_t_intersecting(moved, p.t).ok);
          // The image of the canonical family is the family of the image anchors.
          std::vector<Subspace> image;
          Family canonical = make_example(id, space, p);
          for (const auto& m : canonical.members()) image.push_back(act(m, g));
          CHECK(moved == Family::from_members(space, p.k, image));
        }
      }
    }
  }
}

TEST_CASE("bad anchors and hypotheses") {
  auto S = PG(4, 2);
  Params p = P(2, 4, 2, 1);
  Anchors a = canonical_anchors(ExampleId::P1, S, p);
  a.pi = S.coordinate_span({0, 1, 2});  // misses delta entirely
  CHECK(kind_of([&] { make_example(ExampleId::P1, S, p, &a); }) == ErrorKind::BadAnchors);
  Anchors g;
  g.gamma = S.coordinate_span({0, 1});
  CHECK(kind_of([&] { make_example(ExampleId::P2, S, p, &g); }) == ErrorKind::BadAnchors);
  CHECK(kind_of([&] { make_example(ExampleId::P1, S, P(2, 4, 2, 2)); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { make_example(ExampleId::P1, S, P(2, 3, 2, 1)); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { make_example(ExampleId::A1, S, p); }) == ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { make_example(ExampleId::A2, AG(4, 2), P(2, 4, 1, 0)); }) == ErrorKind::HypothesisViolation);

  auto A = AG(4, 2);
  Anchors b = canonical_anchors(ExampleId::A1, A, p);
  b.pi = A.coordinate_span({0, 1, 4});  // trace of pi contains the trace of delta
  CHECK(kind_of([&] { make_example(ExampleId::A1, A, p, &b); }) == ErrorKind::BadAnchors);
  Anchors c = canonical_anchors(ExampleId::A1, A, p);
  c.base_point = A.coordinate_span({0});  // inside delta
  CHECK(kind_of([&] { make_example(ExampleId::A1, A, p, &c); }) == ErrorKind::BadAnchors);
}

TEST_CASE("pairwise intersection witnesses") {
  auto S = PG(3, 2);
  Subspace l1 = S.coordinate_span({0, 1}), l2 = S.coordinate_span({2, 3}), l3 = S.coordinate_span({0, 2});
  Family f = Family::from_members(S, 1, {l1, l2, l3});
  auto r = is_pairwise_t_intersecting(f, 0);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  CHECK(meet_dim(r.witness->first, r.witness->second) < 0);
  CHECK(is_pairwise_t_intersecting(make_pencil(S, S.coordinate_span({0}), 1), 0).ok);
  CHECK(kind_of([&] { is_maximal(f, 0); }) == ErrorKind::NotIntersecting);
}

TEST_CASE("maximality of pencils and defects") {
  auto S = PG(3, 2);
  Family pencil = make_pencil(S, S.coordinate_span({0}), 1);
  CHECK(is_maximal(pencil, 0).maximal);
  for (std::size_t drop = 0; drop < pencil.size(); ++drop) {
    auto ms = pencil.members();
    Subspace removed = ms[drop];
    ms.erase(ms.begin() + drop);
    auto r = is_maximal(Family::from_members(S, 1, ms), 0);
    CHECK_FALSE(r.maximal);
    REQUIRE(r.extension);
    // Six lines through a point can also be completed by other lines only
    // if they meet all six; the removed one always works.
    CHECK(meets_all(Family::from_members(S, 1, ms), removed, 0));
  }
}

TEST_CASE("cover analysis") {
  auto S = PG(4, 2);
  Params p = P(2, 4, 2, 1);
  Anchors a = canonical_anchors(ExampleId::P2, S, p);
  Family pencil = make_pencil(S, *a.delta, 2);
  auto rp = cover_analysis(pencil, 1);
  CHECK(rp.found);
  CHECK(rp.psi == 1);
  CHECK(rp.covers.contains(*a.delta));

  for (auto id : {ExampleId::P1, ExampleId::P2}) {
    Family f = make_example(id, S, p);
    auto r = cover_analysis(f, 1);
    CHECK(r.found);
    CHECK(r.psi == 2);
    CHECK(r.covers.size() >= 3);
    Subspace span = S.empty();
    for (const auto& c : r.covers.members()) {
      span = join(span, c);
      CHECK_FALSE(cover_membership_violation(f, c).has_value());
    }
    CHECK(span.proj_dim() == 3);
    CHECK(contains(*a.gamma, span));
  }

  Family p1 = make_example(ExampleId::P1, PG(6, 2), P(2, 6, 3, 1));
  auto r6 = cover_analysis(p1, 1);
  CHECK(r6.psi == 2);
  for (const auto& c : r6.covers.members()) CHECK_FALSE(cover_membership_violation(p1, c).has_value());

  auto A = AG(4, 2);
  Family a2 = make_example(ExampleId::A2, A, p);
  auto ra = cover_analysis(a2, 1);
  CHECK(ra.psi == 2);
  for (const auto& c : ra.covers.members()) CHECK_FALSE(cover_membership_violation(a2, c).has_value());

  auto capped = cover_analysis(make_example(ExampleId::P1, S, p), 1, 1);
  CHECK_FALSE(capped.found);
  CHECK(capped.psi == 1);
  CHECK(kind_of([&] { cover_analysis(Family(S, 2), 1); }) == ErrorKind::EmptyFamily);
  CHECK(kind_of([&] { cover_analysis(pencil, 1, 3); }) == ErrorKind::DimensionOutOfRange);
}

TEST_CASE("identify_example recovers anchors") {
  auto S = PG(4, 2);
  Family p2 = make_example(ExampleId::P2, S, P(2, 4, 2, 1));
  auto id = identify_example(p2, 1);
  REQUIRE(id);
  CHECK((id->first == ExampleId::P1 || id->first == ExampleId::P2));

  Family p1 = make_example(ExampleId::P1, PG(5, 2), P(2, 5, 2, 1));
  auto id1 = identify_example(p1, 1);
  REQUIRE(id1);
  CHECK(id1->first == ExampleId::P1);

  auto A = AG(4, 2);
  Family a2 = make_example(ExampleId::A2, A, P(2, 4, 2, 1));
  auto id2 = identify_example(a2, 1);
  REQUIRE(id2);
  CHECK(make_example(id2->first, A, P(2, 4, 2, 1), &id2->second) == a2);

  Family a1 = make_example(ExampleId::A1, AG(5, 2), P(2, 5, 2, 1));
  auto id3 = identify_example(a1, 1);
  REQUIRE(id3);
  CHECK(id3->first == ExampleId::A1);

  CHECK_FALSE(identify_example(make_pencil(S, S.coordinate_span({3, 4}), 2), 1).has_value());
}

TEST_CASE("family file round trip") {
  auto S = PG(3, 2);
  Family pencil = make_pencil(S, S.coordinate_span({0}), 1);
  std::stringstream ss;
  family_save(pencil, ss);
  CHECK(ss.str().rfind("{\n  \"space\": \"PG\",\n  \"q\": 2,\n  \"n\": 3,\n  \"k\": 1,\n  \"subspaces\": [", 0) == 0);
  Family back = family_load(ss);
  CHECK(back == pencil);

  Family a2 = make_example(ExampleId::A2, AG(4, 3), P(3, 4, 2, 1));
  std::stringstream s2;
  family_save(a2, s2);
  CHECK(family_load(s2) == a2);
}

TEST_CASE("family loading errors") {
  auto load = [](const std::string& text) {
    std::istringstream in(text);
    return family_load(in);
  };
  // Dependent rows are canonicalized, then the dimension no longer matches.
  CHECK(kind_of([&] { load(R"({"space":"PG","q":2,"n":2,"k":1,"subspaces":[[[1,0,0],[1,0,0]]]})"); }) ==
        ErrorKind::InvariantViolation);
  CHECK(load(R"({"space":"PG","q":2,"n":2,"k":1,"subspaces":[[[1,1,0],[0,1,0]]]})").size() == 1);
  CHECK(kind_of([&] { load(R"({"space":"PG","q":6,"n":2,"k":1,"subspaces":[]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { load(R"({"space":"XG","q":2,"n":2,"k":1,"subspaces":[]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { load(R"({"space":"PG","q":2,"n":2,"k":1,"subspaces":[[[1,0]]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { load(R"({"space":"PG","q":2,"n":2,"k":1,"subspaces":[[[1,0,2]]]})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { load("{not json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { load(R"({"space":"PG","q":2,"n":2,"k":0,"subspaces":[[[1,0,0]],[[1,0,0]]]})"); }) ==
        ErrorKind::InvariantViolation);
  CHECK(kind_of([&] { load(R"({"space":"AG","q":2,"n":2,"k":0,"subspaces":[[[0,1,0]]]})"); }) ==
        ErrorKind::InvariantViolation);
}
