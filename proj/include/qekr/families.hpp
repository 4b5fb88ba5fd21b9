#pragma once

#include <istream>
#include <optional>
#include <string>
#include <ostream>
#include <utility>
#include <vector>

#include "qekr/counting.hpp"
#include "qekr/geometry.hpp"

namespace qekr {

// Deduplicated, sorted set of k-spaces of one ambient space.
class Family {
 public:
  Family() = default;
  Family(AmbientSpace space, int k) : space_(std::move(space)), k_(k) {}

  // Validates dimension and (for AG) affineness; duplicates are merged, or
  // rejected with InvariantViolation when reject_duplicates is set.
  static Family from_members(const AmbientSpace& space, int k, std::vector<Subspace> members,
                             bool reject_duplicates = false);

  const AmbientSpace& space() const { return space_; }
  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Subspace>& members() const { return members_; }
  const Subspace& operator[](std::size_t i) const { return members_[i]; }
  bool contains(const Subspace& s) const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.space_ == b.space_ && a.k_ == b.k_ && a.members_ == b.members_;
  }

 private:
  AmbientSpace space_;
  int k_ = 0;
  std::vector<Subspace> members_;
};

struct Anchors {
  std::optional<Subspace> delta, pi, gamma, base_point;
  // User-chosen S1 for A1 and R for A2; synthesized from base_point otherwise.
  std::optional<std::vector<Subspace>> s1, r;
};

Anchors canonical_anchors(ExampleId id, const AmbientSpace& space, const Params& p);

Family make_pencil(const AmbientSpace& space, const Subspace& delta, int k);
Family make_example(ExampleId id, const AmbientSpace& space, const Params& p, const Anchors* anchors = nullptr);

struct IntersectionCheck {
  bool ok = true;
  std::optional<std::pair<Subspace, Subspace>> witness;
};
IntersectionCheck is_pairwise_t_intersecting(const Family& fam, int t);

struct MaximalityCheck {
  bool maximal = true;
  std::optional<Subspace> extension;
};
MaximalityCheck is_maximal(const Family& fam, int t);

// Does s meet every member in at least a t-space (affinely for AG)?
bool meets_all(const Family& fam, const Subspace& s, int t);

struct CoverReport {
  int psi = -1;
  bool found = false;  // false: nothing up to max_dim, psi holds max_dim
  Family covers;
};
CoverReport cover_analysis(const Family& fam, int t, std::optional<int> max_dim = std::nullopt);

// A k-space through T that is missing from fam, if any.
std::optional<Subspace> cover_membership_violation(const Family& fam, const Subspace& cover);

// Meet of all members (empty family: the whole space).
Subspace common_meet(const Family& fam);
// All k-spaces through one t-space (affine t-space for AG).
bool is_t_pencil(const Family& fam, int t);

// Tries the non-pencil examples of the family's space kind and returns the
// first one that reproduces fam exactly under some anchor choice.
std::optional<std::pair<ExampleId, Anchors>> identify_example(const Family& fam, int t);

void family_save(const Family& fam, std::ostream& out);
// Same layout plus a trailing "report" member holding an already rendered JSON value.
void family_save(const Family& fam, std::ostream& out, const std::string& report);
// One subspace as a JSON array of rows.
std::string subspace_json(const Subspace& s);
Family family_load(std::istream& in);
// Anchor file: object with optional delta, pi, gamma, base_point matrices.
Anchors anchors_load(std::istream& in, const AmbientSpace& space);

}  // namespace qekr
