#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qekr/subspace.hpp"

namespace qekr {

enum class SpaceKind { PG, AG };

const char* space_kind_name(SpaceKind kind);

struct AmbientSpace {
  SpaceKind kind = SpaceKind::PG;
  int n = 1;
  Field field;

  static AmbientSpace make(SpaceKind kind, int n, int q);

  int q() const { return field.q(); }
  Subspace whole() const;
  Subspace empty() const { return Subspace(field, n); }
  // {x0 = 0}; in the AG model this is the deleted hyperplane.
  Subspace hyperplane_at_infinity() const;
  // Same PG(n,q), and affine when kind == AG.
  bool admits(const Subspace& u) const;
  // Span of the standard points e_i for i in idx.
  Subspace coordinate_span(const std::vector<int>& idx) const;
  Subspace span(const Matrix& rows) const { return rref_canonicalize(field, n, rows); }

  friend bool operator==(const AmbientSpace& a, const AmbientSpace& b) {
    return a.kind == b.kind && a.n == b.n && a.field == b.field;
  }
};

// Nonempty and not inside {x0 = 0}: the first pivot sits in column 0.
bool is_affine(const Subspace& u);

// Generates canonical RREF matrices with r rows over m columns, by pivot
// pattern in lexicographic order and then free entries as an odometer.
class RrefGenerator {
 public:
  RrefGenerator(Field f, int m, int r, bool pivot_at_zero);
  // Writes r*m entries; false when exhausted.
  bool next(std::vector<std::uint8_t>& out);

 private:
  bool next_pattern();
  void load_pattern();

  Field field_;
  int m_, r_;
  bool pivot0_;
  bool done_ = false;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_;
  std::vector<std::uint8_t> values_;
};

// Single-consumer, duplicate-free producer of d-spaces.
class SubspaceStream {
 public:
  using Lift = std::function<Subspace(std::vector<std::uint8_t>&)>;
  using Keep = std::function<bool(const Subspace&)>;

  SubspaceStream(RrefGenerator gen, Lift lift, Keep keep = {});

  std::optional<Subspace> next();
  std::vector<Subspace> collect();
  std::size_t count();

 private:
  RrefGenerator gen_;
  Lift lift_;
  Keep keep_;
  std::vector<std::uint8_t> buf_;
};

SubspaceStream enumerate_subspaces(const AmbientSpace& space, int d);
SubspaceStream enumerate_through(const AmbientSpace& space, const Subspace& base, int d);
SubspaceStream enumerate_disjoint_from(const AmbientSpace& space, const Subspace& fixed, int d);
// d-spaces contained in `container` (affine ones only for AG).
SubspaceStream enumerate_within(const AmbientSpace& space, const Subspace& container, int d);

Subspace trace_at_infinity(const AmbientSpace& space, const Subspace& u);
int affine_intersection_dim(const Subspace& u, const Subspace& v);
// Projective meet dimension for PG, affine one for AG.
int intersection_dim(const AmbientSpace& space, const Subspace& u, const Subspace& v);

}  // namespace qekr
