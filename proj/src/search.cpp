#include "qekr/search.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "qekr/errors.hpp"
#include "qekr/parallel.hpp"

namespace qekr {

bool Bitset::none() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

std::size_t Bitset::next(std::size_t from) const {
  if (from >= bits_) return bits_;
  std::size_t i = from >> 6;
  std::uint64_t w = w_[i] & (~std::uint64_t{0} << (from & 63));
  for (;;) {
    if (w) return std::min(bits_, (i << 6) + std::countr_zero(w));
    if (++i == w_.size()) return bits_;
    w = w_[i];
  }
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

Bitset& Bitset::and_not(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  return *this;
}

Family IntersectionGraph::family_of(const std::vector<int>& ids) const {
  std::vector<Subspace> m;
  m.reserve(ids.size());
  for (int i : ids) m.push_back(vertices[i]);
  return Family::from_members(space, k, std::move(m));
}

IntersectionGraph build_intersection_graph(const AmbientSpace& space, int k, int t, std::size_t cap) {
  if (k < 0 || k > space.n) throw Error(ErrorKind::DimensionOutOfRange, "k outside [0, n]");
  CountValue count = gaussian(space.n + 1, k + 1, space.q());
  if (space.kind == SpaceKind::AG) count -= gaussian(space.n, k + 1, space.q());
  // The adjacency matrix is V^2 bits; keep it under 1 GiB regardless of cap.
  if (count > CountValue(static_cast<unsigned long>(cap)) || count > 92000)
    throw Error(ErrorKind::TooLarge, count.get_str() + " vertices exceed the enumeration cap");
  IntersectionGraph g;
  g.space = space;
  g.k = k;
  g.t = t;
  g.vertices = enumerate_subspaces(space, k).collect();
  std::size_t v = g.vertices.size();
  g.adj.assign(v, Bitset(v));
  parallel_for(
      v,
      [&](std::size_t i) {
        for (std::size_t j = 0; j < v; ++j)
          if (i != j && intersection_dim(space, g.vertices[i], g.vertices[j]) >= t) g.adj[i].set(j);
      },
      8);
  return g;
}

namespace {

// Branch and bound over a degeneracy-ordered copy of the graph.
class CliqueSolver {
 public:
  CliqueSolver(const IntersectionGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {
    std::size_t v = g.size();
    std::vector<std::size_t> deg(v);
    for (std::size_t i = 0; i < v; ++i) deg[i] = g.adj[i].count();
    std::vector<char> gone(v, 0);
    std::vector<int> removed;
    removed.reserve(v);
    for (std::size_t step = 0; step < v; ++step) {
      std::size_t pick = v;
      for (std::size_t i = 0; i < v; ++i)
        if (!gone[i] && (pick == v || deg[i] < deg[pick])) pick = i;
      gone[pick] = 1;
      removed.push_back(static_cast<int>(pick));
      for (std::size_t j = g.adj[pick].next(); j < v; j = g.adj[pick].next(j + 1))
        if (!gone[j]) --deg[j];
    }
    order_.assign(removed.rbegin(), removed.rend());
    pos_.assign(v, 0);
    for (std::size_t p = 0; p < v; ++p) pos_[order_[p]] = static_cast<int>(p);
    padj_.assign(v, Bitset(v));
    for (std::size_t p = 0; p < v; ++p) {
      const Bitset& a = g.adj[order_[p]];
      for (std::size_t j = a.next(); j < v; j = a.next(j + 1)) padj_[p].set(pos_[j]);
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

  // Largest clique inside `allowed` (original ids), or the first one found
  // with at least stop_at members when stop_at > 0.
  std::vector<int> run(const Bitset& allowed, std::size_t stop_at) {
    Bitset p(g_.size());
    for (std::size_t i = allowed.next(); i < allowed.bits(); i = allowed.next(i + 1)) p.set(pos_[i]);
    best_ = stop_at ? stop_at - 1 : 0;
    stop_at_ = stop_at;
    best_clique_.clear();
    cur_.clear();
    if (!p.none()) expand(p);
    std::vector<int> out;
    for (int x : best_clique_) out.push_back(order_[x]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void colour(const Bitset& p, std::vector<int>& verts, std::vector<int>& colours) const {
    Bitset u = p;
    int c = 0;
    while (!u.none()) {
      ++c;
      Bitset q = u;
      for (std::size_t v = q.next(); v < q.bits(); v = q.next(v + 1)) {
        q.and_not(padj_[v]);
        u.reset(v);
        verts.push_back(static_cast<int>(v));
        colours.push_back(c);
      }
    }
  }

  void expand(Bitset& p) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<int> verts, colours;
    colour(p, verts, colours);
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (cur_.size() + colours[i] <= best_) return;
      int v = verts[i];
      cur_.push_back(v);
      Bitset np = p;
      np &= padj_[v];
      if (np.none()) {
        if (cur_.size() > best_) {
          best_ = cur_.size();
          best_clique_ = cur_;
        }
      } else {
        expand(np);
      }
      cur_.pop_back();
      if (aborted_ || (stop_at_ && best_clique_.size() >= stop_at_)) return;
      p.reset(v);
    }
  }

  const IntersectionGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> order_, pos_;
  std::vector<Bitset> padj_;
  std::size_t best_ = 0, stop_at_ = 0;
  std::vector<int> cur_, best_clique_;
};

std::vector<int> greedy_clique(const IntersectionGraph& g) {
  std::vector<int> best;
  for (std::size_t s = 0; s < g.size(); ++s) {
    std::vector<int> c{static_cast<int>(s)};
    Bitset cand = g.adj[s];
    for (std::size_t w = cand.next(); w < cand.bits(); w = cand.next(w + 1)) {
      c.push_back(static_cast<int>(w));
      cand &= g.adj[w];
    }
    if (c.size() > best.size()) best = c;
  }
  return best;
}

}  // namespace

CliqueResult max_clique(const IntersectionGraph& g, std::uint64_t budget) {
  CliqueResult r;
  if (g.size() == 0) {
    r.witness = Family(g.space, g.k);
    r.optimal = true;
    return r;
  }
  CliqueSolver solver(g, budget);
  Bitset all(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) all.set(i);
  std::vector<int> best = solver.run(all, 0);
  if (solver.aborted()) {
    std::vector<int> greedy = greedy_clique(g);
    if (greedy.size() > best.size()) best = greedy;
    r.size = best.size();
    r.witness = g.family_of(best);
    r.nodes = solver.nodes();
    return r;
  }
  r.optimal = true;
  std::size_t omega = best.size();

  // Fix vertices one at a time in increasing order, keeping one only when
  // the remaining candidates still hold a clique of the missing size.
  std::vector<int> chosen;
  Bitset cand = all;
  for (std::size_t v = 0; v < g.size() && chosen.size() < omega; ++v) {
    if (!cand.test(v)) continue;
    Bitset rest = cand;
    rest &= g.adj[v];
    for (std::size_t u = 0; u <= v; ++u) rest.reset(u);
    std::size_t need = omega - chosen.size() - 1;
    bool ok = need == 0;
    if (!ok && rest.count() >= need) {
      ok = solver.run(rest, need).size() >= need;
      if (solver.aborted()) break;
    }
    if (ok) {
      chosen.push_back(static_cast<int>(v));
      cand = rest;
    }
  }
  r.size = omega;
  r.witness = g.family_of(chosen.size() == omega ? chosen : best);
  r.nodes = solver.nodes();
  return r;
}

CliqueResult max_clique(const AmbientSpace& space, int k, int t, std::uint64_t budget, std::size_t cap) {
  return max_clique(build_intersection_graph(space, k, t, cap), budget);
}

namespace {

struct BronKerbosch {
  const IntersectionGraph& g;
  std::uint64_t budget;
  const std::function<void(const std::vector<int>&)>& fn;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::vector<int> r;

  void step(Bitset p, Bitset x) {
    if (aborted) return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (p.none()) {
      if (x.none()) {
        std::vector<int> c = r;
        std::sort(c.begin(), c.end());
        fn(c);
      }
      return;
    }
    std::size_t pivot = p.bits(), most = 0;
    for (const Bitset* s : {&p, &x})
      for (std::size_t u = s->next(); u < s->bits(); u = s->next(u + 1)) {
        Bitset m = p;
        m &= g.adj[u];
        std::size_t c = m.count();
        if (pivot == p.bits() || c > most) {
          pivot = u;
          most = c;
        }
      }
    Bitset todo = p;
    todo.and_not(g.adj[pivot]);
    for (std::size_t v = todo.next(); v < todo.bits(); v = todo.next(v + 1)) {
      Bitset np = p, nx = x;
      np &= g.adj[v];
      nx &= g.adj[v];
      r.push_back(static_cast<int>(v));
      step(np, nx);
      r.pop_back();
      if (aborted) return;
      p.reset(v);
      x.set(v);
    }
  }
};

}  // namespace

bool for_each_maximal_clique(const IntersectionGraph& g, std::uint64_t budget,
                             const std::function<void(const std::vector<int>&)>& fn) {
  BronKerbosch bk{g, budget, fn, 0, false, {}};
  Bitset p(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) p.set(i);
  bk.step(p, Bitset(g.size()));
  return !bk.aborted;
}

Family extend_to_maximal(const Family& fam, int t) {
  if (!is_pairwise_t_intersecting(fam, t).ok) throw Error(ErrorKind::NotIntersecting, "family is not t-intersecting");
  std::vector<Subspace> members = fam.members();
  auto stream = enumerate_subspaces(fam.space(), fam.k());
  while (auto s = stream.next()) {
    if (fam.contains(*s)) continue;
    bool ok = true;
    for (const auto& m : members)
      if (intersection_dim(fam.space(), m, *s) < t) {
        ok = false;
        break;
      }
    if (ok) members.push_back(std::move(*s));
  }
  return Family::from_members(fam.space(), fam.k(), std::move(members));
}

ProbeReport second_largest_probe(const IntersectionGraph& g, Seeding seeding, std::uint64_t budget) {
  ProbeReport rep;
  std::set<std::vector<int>> found;
  if (seeding == Seeding::Pairs) {
    for (std::size_t u = 0; u < g.size() && rep.seeds < budget; ++u) {
      const Bitset& nu = g.adj[u];
      for (std::size_t v = nu.next(u + 1); v < g.size() && rep.seeds < budget; v = nu.next(v + 1)) {
        ++rep.seeds;
        std::vector<int> c{static_cast<int>(u), static_cast<int>(v)};
        Bitset cand = nu;
        cand &= g.adj[v];
        for (std::size_t w = cand.next(); w < cand.bits(); w = cand.next(w + 1)) {
          c.push_back(static_cast<int>(w));
          cand &= g.adj[w];
        }
        std::sort(c.begin(), c.end());
        found.insert(std::move(c));
      }
    }
  } else {
    bool complete = for_each_maximal_clique(g, budget, [&](const std::vector<int>& c) {
      if (c.size() < 2) return;
      ++rep.seeds;
      found.insert(c);
    });
    rep.heuristic = !complete;
  }

  std::vector<const std::vector<int>*> cliques;
  for (const auto& c : found) cliques.push_back(&c);
  std::vector<char> pencil(cliques.size());
  parallel_for(
      cliques.size(), [&](std::size_t i) { pencil[i] = is_t_pencil(g.family_of(*cliques[i]), g.t); }, 4);

  rep.maximal_families = cliques.size();
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (pencil[i]) {
      ++rep.pencils;
      continue;
    }
    ++rep.histogram[cliques[i]->size()];
    rep.max_size = std::max(rep.max_size, cliques[i]->size());
  }
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    if (pencil[i] || cliques[i]->size() != rep.max_size) continue;
    ++rep.witness_count;
    if (picks.size() < kMaxProbeWitnesses) picks.push_back(i);
  }
  rep.witnesses.resize(picks.size());
  parallel_for(
      picks.size(),
      [&](std::size_t w) {
        ProbeWitness& pw = rep.witnesses[w];
        pw.family = g.family_of(*cliques[picks[w]]);
        Subspace span = g.space.empty();
        for (const auto& m : pw.family.members()) span = join(span, m);
        pw.in_k_plus_1_space = span.proj_dim() <= g.k + 1;
        if (auto id = identify_example(pw.family, g.t)) pw.matches = id->first;
      },
      1);
  return rep;
}

ProbeReport second_largest_probe(const AmbientSpace& space, int k, int t, Seeding seeding, std::uint64_t budget,
                                 std::size_t cap) {
  return second_largest_probe(build_intersection_graph(space, k, t, cap), seeding, budget);
}

}  // namespace qekr
