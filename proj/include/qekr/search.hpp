#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qekr/families.hpp"

namespace qekr {

inline constexpr std::size_t kDefaultVertexCap = 200000;
inline constexpr std::uint64_t kDefaultBudget = 50000000;

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  std::size_t bits() const { return bits_; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  bool none() const;
  std::size_t count() const;
  // Lowest set bit at or after `from`, or bits() if none.
  std::size_t next(std::size_t from = 0) const;
  Bitset& operator&=(const Bitset& o);
  Bitset& and_not(const Bitset& o);
  std::vector<std::uint64_t>& words() { return w_; }
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> w_;
};

// Vertices are the k-spaces (affine ones for AG) in enumeration order; two
// are adjacent when they meet in at least a t-space.
struct IntersectionGraph {
  AmbientSpace space;
  int k = 0, t = 0;
  std::vector<Subspace> vertices;
  std::vector<Bitset> adj;

  std::size_t size() const { return vertices.size(); }
  Family family_of(const std::vector<int>& ids) const;
};

IntersectionGraph build_intersection_graph(const AmbientSpace& space, int k, int t,
                                           std::size_t cap = kDefaultVertexCap);

struct CliqueResult {
  std::size_t size = 0;
  Family witness;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

// Exact maximum when optimal; the witness is then the lexicographically
// least maximum clique in vertex enumeration order.
CliqueResult max_clique(const AmbientSpace& space, int k, int t, std::uint64_t budget = kDefaultBudget,
                        std::size_t cap = kDefaultVertexCap);
CliqueResult max_clique(const IntersectionGraph& g, std::uint64_t budget = kDefaultBudget);

// Calls fn(ids) for every maximal clique (ids ascending) until the node
// budget runs out; returns true when the enumeration completed.
bool for_each_maximal_clique(const IntersectionGraph& g, std::uint64_t budget,
                             const std::function<void(const std::vector<int>&)>& fn);

Family extend_to_maximal(const Family& fam, int t);

enum class Seeding { Pairs, Exhaustive };

struct ProbeWitness {
  Family family;
  bool in_k_plus_1_space = false;
  std::optional<ExampleId> matches;
};

struct ProbeReport {
  bool heuristic = true;
  std::size_t seeds = 0;
  std::size_t maximal_families = 0;
  std::size_t pencils = 0;
  std::map<std::size_t, std::size_t> histogram;  // non-pencil sizes
  std::size_t max_size = 0;
  std::size_t witness_count = 0;
  // The lexicographically least maximum-size non-pencil families, at most kMaxProbeWitnesses.
  std::vector<ProbeWitness> witnesses;
};

inline constexpr std::size_t kMaxProbeWitnesses = 32;

// Pairs: greedy extension of every adjacent pair, at most `budget` seeds.
// Exhaustive: every maximal clique with at least two members, within a node budget.
ProbeReport second_largest_probe(const AmbientSpace& space, int k, int t, Seeding seeding,
                                 std::uint64_t budget = kDefaultBudget, std::size_t cap = kDefaultVertexCap);
ProbeReport second_largest_probe(const IntersectionGraph& g, Seeding seeding, std::uint64_t budget = kDefaultBudget);

}  // namespace qekr
