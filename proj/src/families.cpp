#include "qekr/families.hpp"

#include <algorithm>
#include <set>

#include "qekr/errors.hpp"
#include "qekr/parallel.hpp"

namespace qekr {

Family Family::from_members(const AmbientSpace& space, int k, std::vector<Subspace> members, bool reject_duplicates) {
  for (const auto& m : members) {
    if (m.ambient_n() != space.n || !(m.field() == space.field))
      throw Error(ErrorKind::InvariantViolation, "member outside the ambient space");
    if (m.proj_dim() != k)
      throw Error(ErrorKind::InvariantViolation,
                  "member of dimension " + std::to_string(m.proj_dim()) + ", expected " + std::to_string(k));
    if (space.kind == SpaceKind::AG && !is_affine(m))
      throw Error(ErrorKind::InvariantViolation, "member lies in the hyperplane at infinity");
  }
  std::sort(members.begin(), members.end());
  auto dup = std::adjacent_find(members.begin(), members.end());
  if (dup != members.end()) {
    if (reject_duplicates) throw Error(ErrorKind::InvariantViolation, "duplicate member " + dup->str());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  Family f(space, k);
  f.members_ = std::move(members);
  return f;
}

bool Family::contains(const Subspace& s) const { return std::binary_search(members_.begin(), members_.end(), s); }

namespace {

[[noreturn]] void bad_anchors(const std::string& what) { throw Error(ErrorKind::BadAnchors, what); }
[[noreturn]] void violate(const std::string& what) { throw Error(ErrorKind::HypothesisViolation, what); }

bool projective_example(ExampleId id) { return id == ExampleId::P1 || id == ExampleId::P2; }

void check_example_setup(ExampleId id, const AmbientSpace& space, const Params& p) {
  if (p.n != space.n || p.q != space.q()) violate("params do not describe the ambient space");
  if (id == ExampleId::Pencil) {
    if (!(0 <= p.t && p.t <= p.k && p.k <= p.n)) violate("pencil needs 0 <= t <= k <= n");
    return;
  }
  bool pg = projective_example(id);
  if (pg != (space.kind == SpaceKind::PG))
    violate(std::string(example_name(id)) + " lives in " + (pg ? "PG" : "AG"));
  if (p.t < 0 || !(p.t < p.k)) violate("needs 0 <= t < k");
  if (!(p.n > 2 * p.k - p.t)) violate("needs n > 2k - t");
  if (!pg && p.t < 1) violate("affine examples need t >= 1");
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Subspace point_of(const AmbientSpace& space, std::vector<int> coords) { return space.span({std::move(coords)}); }

// Least affine point of u outside avoid, in enumeration order.
Subspace first_point_outside(const AmbientSpace& space, const Subspace& u, const Subspace& avoid) {
  auto stream = enumerate_within(space, u, 0);
  while (auto pt = stream.next())
    if (!contains(avoid, *pt)) return *pt;
  bad_anchors("no admissible base point");
}

void require_dim(const std::optional<Subspace>& s, const AmbientSpace& space, int d, const char* name) {
  if (!s) bad_anchors(std::string("missing anchor ") + name);
  if (s->ambient_n() != space.n || !(s->field() == space.field)) bad_anchors(std::string(name) + " is not in the space");
  if (s->proj_dim() != d) bad_anchors(std::string(name) + " must have dimension " + std::to_string(d));
  if (space.kind == SpaceKind::AG && !is_affine(*s)) bad_anchors(std::string(name) + " must be affine");
}

std::vector<Subspace> through_meeting(const AmbientSpace& space, const Subspace& delta, const Subspace& sigma, int k,
                                      int t) {
  std::vector<Subspace> out;
  auto stream = enumerate_through(space, delta, k);
  while (auto s = stream.next())
    if (meet_dim(*s, sigma) >= t + 1) out.push_back(std::move(*s));
  return out;
}

Family build_p1(const AmbientSpace& space, const Params& p, const Anchors& a) {
  require_dim(a.delta, space, p.t, "delta");
  require_dim(a.pi, space, p.k, "pi");
  if (meet_dim(*a.pi, *a.delta) != p.t - 1) bad_anchors("dim(pi meet delta) must be t - 1");
  Subspace sigma = join(*a.pi, *a.delta);
  std::vector<Subspace> members = enumerate_within(space, sigma, p.k).collect();
  auto s2 = through_meeting(space, *a.delta, sigma, p.k, p.t);
  members.insert(members.end(), s2.begin(), s2.end());
  return Family::from_members(space, p.k, std::move(members));
}

Family build_a1(const AmbientSpace& space, const Params& p, const Anchors& a) {
  require_dim(a.delta, space, p.t, "delta");
  require_dim(a.pi, space, p.k, "pi");
  const Subspace& delta = *a.delta;
  const Subspace& pi = *a.pi;
  if (affine_intersection_dim(pi, delta) != p.t - 1 || meet_dim(pi, delta) != p.t - 1)
    bad_anchors("pi and delta must meet in an affine (t-1)-space");
  Subspace delta_inf = trace_at_infinity(space, delta);
  if (contains(trace_at_infinity(space, pi), delta_inf)) bad_anchors("trace of pi contains the trace of delta");
  Subspace sigma = join(pi, delta);

  std::vector<Subspace> s1;
  if (a.s1) {
    s1 = *a.s1;
    std::set<Subspace> traces;
    for (const auto& m : s1) {
      require_dim(m, space, p.k, "S1 member");
      if (!contains(sigma, m)) bad_anchors("S1 member outside <pi, delta>");
      Subspace tr = trace_at_infinity(space, m);
      if (contains(tr, delta_inf)) bad_anchors("S1 member trace contains the trace of delta");
      if (!traces.insert(tr).second) bad_anchors("S1 traces are not distinct");
    }
    if (std::find(s1.begin(), s1.end(), pi) == s1.end()) bad_anchors("S1 must contain pi");
    if (CountValue(s1.size()) != theta(p.k, p.q) - theta(p.k - p.t, p.q)) bad_anchors("S1 is not maximal");
  } else {
    Subspace o = a.base_point ? *a.base_point : first_point_outside(space, pi, delta);
    require_dim(o, space, 0, "base point");
    if (!contains(pi, o) || contains(delta, o)) bad_anchors("base point must lie in pi and not in delta");
    auto stream = enumerate_within(space, sigma, p.k);
    while (auto s = stream.next())
      if (contains(*s, o) && !contains(trace_at_infinity(space, *s), delta_inf)) s1.push_back(std::move(*s));
  }
  auto s2 = through_meeting(space, delta, sigma, p.k, p.t);
  s1.insert(s1.end(), s2.begin(), s2.end());
  return Family::from_members(space, p.k, std::move(s1));
}

Family build_p2(const AmbientSpace& space, const Params& p, const Anchors& a) {
  require_dim(a.gamma, space, p.t + 2, "gamma");
  std::vector<Subspace> members;
  for (const auto& tau : enumerate_within(space, *a.gamma, p.t + 1).collect()) {
    auto part = enumerate_through(space, tau, p.k).collect();
    members.insert(members.end(), part.begin(), part.end());
  }
  return Family::from_members(space, p.k, std::move(members));
}

Family build_a2(const AmbientSpace& space, const Params& p, const Anchors& a) {
  require_dim(a.gamma, space, p.t + 2, "gamma");
  const Subspace& gamma = *a.gamma;
  std::vector<Subspace> r;
  if (a.r) {
    r = *a.r;
    std::set<Subspace> traces;
    for (const auto& s : r) {
      require_dim(s, space, p.t + 1, "R member");
      if (!contains(gamma, s)) bad_anchors("R member outside gamma");
      if (!traces.insert(trace_at_infinity(space, s)).second) bad_anchors("R traces are not distinct");
    }
    if (CountValue(r.size()) != theta(p.t + 1, p.q)) bad_anchors("R is not maximal");
  } else {
    Subspace o = a.base_point ? *a.base_point : first_point_outside(space, gamma, space.empty());
    require_dim(o, space, 0, "base point");
    if (!contains(gamma, o)) bad_anchors("base point must lie in gamma");
    r = enumerate_within(space, gamma, p.t + 1).collect();
    std::erase_if(r, [&](const Subspace& s) { return !contains(s, o); });
  }
  std::vector<Subspace> members;
  for (const auto& sigma : r) {
    auto part = enumerate_through(space, sigma, p.k).collect();
    members.insert(members.end(), part.begin(), part.end());
  }
  return Family::from_members(space, p.k, std::move(members));
}

}  // namespace

Anchors canonical_anchors(ExampleId id, const AmbientSpace& space, const Params& p) {
  check_example_setup(id, space, p);
  int n = p.n, k = p.k, t = p.t;
  Anchors a;
  if (space.kind == SpaceKind::PG) {
    a.delta = space.coordinate_span(range(n - t, n));
    if (id == ExampleId::Pencil) return a;
    a.pi = space.coordinate_span(cat(range(n - t + 1, n), range(0, k - t)));
    a.gamma = space.coordinate_span(cat({0, 1}, range(n - t, n)));
  } else {
    a.delta = space.coordinate_span(cat({0}, range(n - t + 1, n)));
    if (id == ExampleId::Pencil) return a;
    a.pi = space.coordinate_span(cat(cat({0}, range(n - t + 2, n)), range(1, k - t + 1)));
    a.gamma = space.coordinate_span(cat({0, 1, 2}, range(n - t + 1, n)));
    std::vector<int> o(n + 1, 0);
    o[0] = 1;
    if (id == ExampleId::A1) o[1] = 1;
    a.base_point = point_of(space, o);
  }
  return a;
}

Family make_pencil(const AmbientSpace& space, const Subspace& delta, int k) {
  if (!space.admits(delta)) throw Error(ErrorKind::NotInSpace, "pencil base is not in the space");
  return Family::from_members(space, k, enumerate_through(space, delta, k).collect());
}

Family make_example(ExampleId id, const AmbientSpace& space, const Params& p, const Anchors* anchors) {
  check_example_setup(id, space, p);
  Anchors a = anchors ? *anchors : canonical_anchors(id, space, p);
  switch (id) {
    case ExampleId::Pencil:
      require_dim(a.delta, space, p.t, "delta");
      return make_pencil(space, *a.delta, p.k);
    case ExampleId::P1: return build_p1(space, p, a);
    case ExampleId::A1: return build_a1(space, p, a);
    case ExampleId::P2: return build_p2(space, p, a);
    case ExampleId::A2: return build_a2(space, p, a);
  }
  return Family(space, p.k);
}

IntersectionCheck is_pairwise_t_intersecting(const Family& fam, int t) {
  const auto& m = fam.members();
  const auto& space = fam.space();
  auto bad_from = [&](std::size_t i) -> std::optional<std::size_t> {
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (intersection_dim(space, m[i], m[j]) < t) return j;
    return std::nullopt;
  };
  auto i = parallel_find_first(m.size(), [&](std::size_t i) { return bad_from(i).has_value(); }, 4);
  IntersectionCheck r;
  if (i) {
    r.ok = false;
    r.witness = std::make_pair(m[*i], m[*bad_from(*i)]);
  }
  return r;
}

bool meets_all(const Family& fam, const Subspace& s, int t) {
  for (const auto& m : fam.members())
    if (intersection_dim(fam.space(), m, s) < t) return false;
  return true;
}

MaximalityCheck is_maximal(const Family& fam, int t) {
  if (!is_pairwise_t_intersecting(fam, t).ok) throw Error(ErrorKind::NotIntersecting, "family is not t-intersecting");
  auto candidates = enumerate_subspaces(fam.space(), fam.k()).collect();
  auto hit = parallel_find_first(candidates.size(), [&](std::size_t i) {
    return !fam.contains(candidates[i]) && meets_all(fam, candidates[i], t);
  });
  MaximalityCheck r;
  if (hit) {
    r.maximal = false;
    r.extension = candidates[*hit];
  }
  return r;
}

CoverReport cover_analysis(const Family& fam, int t, std::optional<int> max_dim) {
  if (fam.empty()) throw Error(ErrorKind::EmptyFamily, "cover analysis of an empty family");
  int top = max_dim.value_or(fam.k());
  if (top > fam.k()) throw Error(ErrorKind::DimensionOutOfRange, "max_dim exceeds k");
  CoverReport rep;
  rep.psi = top;
  rep.covers = Family(fam.space(), top);
  for (int d = std::max(t, 0); d <= top; ++d) {
    auto candidates = enumerate_subspaces(fam.space(), d).collect();
    std::vector<char> ok(candidates.size(), 0);
    parallel_for(candidates.size(), [&](std::size_t i) { ok[i] = meets_all(fam, candidates[i], t); });
    std::vector<Subspace> covers;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (ok[i]) covers.push_back(candidates[i]);
    if (!covers.empty()) {
      rep.psi = d;
      rep.found = true;
      rep.covers = Family::from_members(fam.space(), d, std::move(covers));
      break;
    }
  }
  return rep;
}

std::optional<Subspace> cover_membership_violation(const Family& fam, const Subspace& cover) {
  auto stream = enumerate_through(fam.space(), cover, fam.k());
  while (auto s = stream.next())
    if (!fam.contains(*s)) return s;
  return std::nullopt;
}

Subspace common_meet(const Family& fam) {
  Subspace acc = fam.space().whole();
  for (const auto& m : fam.members()) acc = meet(acc, m);
  return acc;
}

bool is_t_pencil(const Family& fam, int t) {
  if (fam.empty()) return false;
  Subspace m = common_meet(fam);
  int dim = m.proj_dim();
  if (fam.space().kind == SpaceKind::AG && !is_affine(m)) dim = -1;
  if (dim < t) return false;
  return CountValue(fam.size()) == gaussian(fam.space().n - t, fam.k() - t, fam.space().q());
}

namespace {

std::optional<Family> try_make(ExampleId id, const AmbientSpace& space, const Params& p, const Anchors& a) {
  try {
    return make_example(id, space, p, &a);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadAnchors) return std::nullopt;
    throw;
  }
}

}  // namespace

std::optional<std::pair<ExampleId, Anchors>> identify_example(const Family& fam, int t) {
  const AmbientSpace& space = fam.space();
  Params p{space.q(), space.n, fam.k(), t, std::nullopt, std::nullopt};
  bool pg = space.kind == SpaceKind::PG;
  ExampleId first = pg ? ExampleId::P1 : ExampleId::A1;
  ExampleId second = pg ? ExampleId::P2 : ExampleId::A2;
  try {
    check_example_setup(first, space, p);
  } catch (const Error&) {
    return std::nullopt;
  }
  const auto& members = fam.members();

  if (CountValue(fam.size()) == size_example(first, Form::Closed, p)) {
    for (const auto& delta : enumerate_subspaces(space, t).collect()) {
      std::vector<Subspace> without;
      for (const auto& m : members)
        if (!contains(m, delta)) without.push_back(m);
      if (without.empty()) continue;
      Subspace sigma = space.empty();
      for (const auto& w : without) sigma = join(sigma, w);
      if (sigma.proj_dim() != p.k + 1 || !contains(sigma, delta)) continue;
      Anchors a;
      a.delta = delta;
      a.pi = without.front();
      if (!pg) a.s1 = without;
      if (auto f = try_make(first, space, p, a); f && *f == fam) return std::make_pair(first, a);
    }
  }

  if (CountValue(fam.size()) == size_example(second, Form::Closed, p)) {
    for (const auto& gamma : enumerate_subspaces(space, t + 2).collect()) {
      std::set<Subspace> pattern;
      bool ok = true;
      for (const auto& m : members) {
        if (intersection_dim(space, m, gamma) < t + 1) {
          ok = false;
          break;
        }
        Subspace x = meet(m, gamma);
        if (x.proj_dim() == t + 1) pattern.insert(x);
      }
      if (!ok) continue;
      Anchors a;
      a.gamma = gamma;
      if (!pg) a.r = std::vector<Subspace>(pattern.begin(), pattern.end());
      if (auto f = try_make(second, space, p, a); f && *f == fam) return std::make_pair(second, a);
    }
  }
  return std::nullopt;
}

}  // namespace qekr
