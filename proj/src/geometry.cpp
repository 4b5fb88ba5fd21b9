#include "qekr/geometry.hpp"

#include "qekr/errors.hpp"

namespace qekr {

const char* space_kind_name(SpaceKind kind) { return kind == SpaceKind::PG ? "PG" : "AG"; }

AmbientSpace AmbientSpace::make(SpaceKind kind, int n, int q) {
  if (n < 1 || n > kMaxAmbient) throw Error(ErrorKind::DimensionOutOfRange, "n = " + std::to_string(n));
  return AmbientSpace{kind, n, field_make(q)};
}

Subspace AmbientSpace::whole() const {
  std::vector<int> idx(n + 1);
  for (int i = 0; i <= n; ++i) idx[i] = i;
  return coordinate_span(idx);
}

Subspace AmbientSpace::hyperplane_at_infinity() const {
  std::vector<int> idx;
  for (int i = 1; i <= n; ++i) idx.push_back(i);
  return coordinate_span(idx);
}

bool AmbientSpace::admits(const Subspace& u) const {
  if (u.ambient_n() != n || !(u.field() == field)) return false;
  return kind == SpaceKind::PG || is_affine(u);
}

Subspace AmbientSpace::coordinate_span(const std::vector<int>& idx) const {
  Matrix rows;
  for (int i : idx) {
    if (i < 0 || i > n) throw Error(ErrorKind::DimensionOutOfRange, "coordinate " + std::to_string(i));
    std::vector<int> row(n + 1, 0);
    row[i] = 1;
    rows.push_back(row);
  }
  return rref_canonicalize(field, n, rows);
}

bool is_affine(const Subspace& u) { return !u.empty() && u.at(0, 0) != 0; }

RrefGenerator::RrefGenerator(Field f, int m, int r, bool pivot_at_zero)
    : field_(f), m_(m), r_(r), pivot0_(pivot_at_zero) {
  if (r < 0 || r > m || (pivot0_ && r == 0)) {
    done_ = true;
    return;
  }
  pivots_.resize(r);
  for (int i = 0; i < r; ++i) pivots_[i] = i;
  load_pattern();
}

void RrefGenerator::load_pattern() {
  free_.clear();
  for (int i = 0; i < r_; ++i) {
    // Free entries of row i: columns right of its pivot that are not pivots.
    for (int c = pivots_[i] + 1; c < m_; ++c) {
      bool is_pivot = false;
      for (int j = i + 1; j < r_; ++j) is_pivot |= pivots_[j] == c;
      if (!is_pivot) free_.emplace_back(i, c);
    }
  }
  values_.assign(free_.size(), 0);
}

bool RrefGenerator::next_pattern() {
  int first = pivot0_ ? 1 : 0;
  for (int i = r_ - 1; i >= first; --i) {
    if (pivots_[i] < m_ - (r_ - i)) {
      ++pivots_[i];
      for (int j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool RrefGenerator::next(std::vector<std::uint8_t>& out) {
  if (done_) return false;
  out.assign(static_cast<std::size_t>(r_) * m_, 0);
  for (int i = 0; i < r_; ++i) out[static_cast<std::size_t>(i) * m_ + pivots_[i]] = 1;
  for (std::size_t k = 0; k < free_.size(); ++k)
    out[static_cast<std::size_t>(free_[k].first) * m_ + free_[k].second] = values_[k];
  // Advance: odometer over the free entries, last position fastest.
  int q = field_.q();
  std::size_t k = free_.size();
  while (k > 0) {
    --k;
    if (++values_[k] < q) return true;
    values_[k] = 0;
  }
  if (next_pattern())
    load_pattern();
  else
    done_ = true;
  return true;
}

SubspaceStream::SubspaceStream(RrefGenerator gen, Lift lift, Keep keep)
    : gen_(std::move(gen)), lift_(std::move(lift)), keep_(std::move(keep)) {}

std::optional<Subspace> SubspaceStream::next() {
  while (gen_.next(buf_)) {
    Subspace s = lift_(buf_);
    if (!keep_ || keep_(s)) return s;
  }
  return std::nullopt;
}

std::vector<Subspace> SubspaceStream::collect() {
  std::vector<Subspace> out;
  while (auto s = next()) out.push_back(std::move(*s));
  return out;
}

std::size_t SubspaceStream::count() {
  std::size_t c = 0;
  while (next()) ++c;
  return c;
}

namespace {

void check_dim(int d, int lo, int hi) {
  if (d < lo || d > hi)
    throw Error(ErrorKind::DimensionOutOfRange,
                "dimension " + std::to_string(d) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void check_in_space(const AmbientSpace& space, const Subspace& u) {
  if (u.ambient_n() != space.n || !(u.field() == space.field))
    throw Error(ErrorKind::AmbientMismatch, "subspace is not in " + std::string(space_kind_name(space.kind)) + "(" +
                                                std::to_string(space.n) + "," + std::to_string(space.q()) + ")");
}

}  // namespace

SubspaceStream enumerate_subspaces(const AmbientSpace& space, int d) {
  check_dim(d, -1, space.n);
  Field f = space.field;
  int n = space.n;
  int r = d + 1;
  return SubspaceStream(RrefGenerator(f, n + 1, r, space.kind == SpaceKind::AG),
                        [f, n, r](std::vector<std::uint8_t>& buf) { return Subspace::from_rref(f, n, r, buf); });
}

SubspaceStream enumerate_through(const AmbientSpace& space, const Subspace& base, int d) {
  check_in_space(space, base);
  if (!space.admits(base)) throw Error(ErrorKind::NotInSpace, "base is not an affine subspace");
  check_dim(d, base.proj_dim(), space.n);
  // Subspaces through `base` correspond to subspaces of the coordinate
  // complement spanned by base's non-pivot columns.
  std::vector<bool> is_pivot(space.n + 1, false);
  for (int r = 0; r < base.rank(); ++r) is_pivot[base.pivot(r)] = true;
  std::vector<int> cols;
  for (int c = 0; c <= space.n; ++c)
    if (!is_pivot[c]) cols.push_back(c);
  int m = static_cast<int>(cols.size());
  int r = d - base.proj_dim();
  Field f = space.field;
  int n = space.n;
  Matrix base_rows = base.rows();
  return SubspaceStream(RrefGenerator(f, m, r, false),
                        [f, n, m, r, cols, base_rows](std::vector<std::uint8_t>& buf) {
                          Matrix rows = base_rows;
                          for (int i = 0; i < r; ++i) {
                            std::vector<int> row(n + 1, 0);
                            for (int j = 0; j < m; ++j) row[cols[j]] = buf[static_cast<std::size_t>(i) * m + j];
                            rows.push_back(std::move(row));
                          }
                          return rref_canonicalize(f, n, rows);
                        });
}

SubspaceStream enumerate_disjoint_from(const AmbientSpace& space, const Subspace& fixed, int d) {
  check_in_space(space, fixed);
  if (fixed.empty()) throw Error(ErrorKind::DimensionOutOfRange, "fixed subspace is empty");
  check_dim(d, 0, space.n);
  Field f = space.field;
  int n = space.n;
  int r = d + 1;
  return SubspaceStream(
      RrefGenerator(f, n + 1, r, space.kind == SpaceKind::AG),
      [f, n, r](std::vector<std::uint8_t>& buf) { return Subspace::from_rref(f, n, r, buf); },
      [fixed](const Subspace& s) { return meet_dim(s, fixed) < 0; });
}

SubspaceStream enumerate_within(const AmbientSpace& space, const Subspace& container, int d) {
  check_in_space(space, container);
  check_dim(d, -1, container.proj_dim());
  Field f = space.field;
  int n = space.n;
  int m = container.rank();
  int r = d + 1;
  Matrix basis = container.rows();
  SubspaceStream::Keep keep;
  if (space.kind == SpaceKind::AG) keep = [](const Subspace& s) { return is_affine(s); };
  return SubspaceStream(
      RrefGenerator(f, m, r, false),
      [f, n, m, r, basis](std::vector<std::uint8_t>& buf) {
        Matrix rows(r, std::vector<int>(n + 1, 0));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < m; ++j) {
            std::uint8_t c = buf[static_cast<std::size_t>(i) * m + j];
            if (!c) continue;
            for (int x = 0; x <= n; ++x)
              rows[i][x] = f.add(static_cast<std::uint8_t>(rows[i][x]), f.mul(c, static_cast<std::uint8_t>(basis[j][x])));
          }
        return rref_canonicalize(f, n, rows);
      },
      keep);
}

Subspace trace_at_infinity(const AmbientSpace& space, const Subspace& u) {
  check_in_space(space, u);
  if (!is_affine(u)) throw Error(ErrorKind::NotAffine, "subspace lies in the hyperplane at infinity");
  std::vector<std::uint8_t> data(u.data().begin() + u.cols(), u.data().end());
  return Subspace::from_rref(u.field(), u.ambient_n(), u.rank() - 1, std::move(data));
}

int affine_intersection_dim(const Subspace& u, const Subspace& v) {
  if (u.ambient_n() != v.ambient_n() || !(u.field() == v.field()))
    throw Error(ErrorKind::AmbientMismatch, "subspaces live in different ambient spaces");
  if (!is_affine(u) || !is_affine(v)) throw Error(ErrorKind::NotAffine, "affine intersection of a non-affine subspace");
  int d = meet_dim(u, v);
  if (d < 0) return -1;
  // The meet is at infinity iff it has the same dimension as the meet of traces.
  auto trace = [](const Subspace& s) {
    std::vector<std::uint8_t> data(s.data().begin() + s.cols(), s.data().end());
    return Subspace::from_rref(s.field(), s.ambient_n(), s.rank() - 1, std::move(data));
  };
  int d_inf = meet_dim(trace(u), trace(v));
  return d_inf == d ? -1 : d;
}

int intersection_dim(const AmbientSpace& space, const Subspace& u, const Subspace& v) {
  return space.kind == SpaceKind::PG ? meet_dim(u, v) : affine_intersection_dim(u, v);
}

}  // namespace qekr
