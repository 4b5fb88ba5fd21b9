#include "qekr/subspace.hpp"

#include <array>
#include <sstream>

#include "qekr/errors.hpp"

namespace qekr {

namespace {

constexpr int kBufCols = 2 * (kMaxAmbient + 1);
constexpr int kBufRows = 2 * (kMaxAmbient + 1);

struct Scratch {
  std::array<std::array<std::uint8_t, kBufCols>, kBufRows> m;
  int rows = 0;
  int cols = 0;
};

// Reduces s.m[0..rows) to RREF in place; returns the rank. Rows past the rank are zero.
int eliminate(const Field& f, Scratch& s, int col_limit) {
  int r = 0;
  for (int c = 0; c < col_limit && r < s.rows; ++c) {
    int piv = -1;
    for (int i = r; i < s.rows; ++i)
      if (s.m[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(s.m[r], s.m[piv]);
    std::uint8_t iv = f.inv(s.m[r][c]);
    if (iv != 1)
      for (int j = c; j < s.cols; ++j) s.m[r][j] = f.mul(s.m[r][j], iv);
    for (int i = 0; i < s.rows; ++i) {
      if (i == r || !s.m[i][c]) continue;
      std::uint8_t factor = f.neg(s.m[i][c]);
      for (int j = c; j < s.cols; ++j) s.m[i][j] = f.add(s.m[i][j], f.mul(factor, s.m[r][j]));
    }
    ++r;
  }
  return r;
}

// Forward elimination only; enough for rank.
int rank_of(const Field& f, Scratch& s) {
  int r = 0;
  for (int c = 0; c < s.cols && r < s.rows; ++c) {
    int piv = -1;
    for (int i = r; i < s.rows; ++i)
      if (s.m[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(s.m[r], s.m[piv]);
    std::uint8_t iv = f.inv(s.m[r][c]);
    for (int i = r + 1; i < s.rows; ++i) {
      if (!s.m[i][c]) continue;
      std::uint8_t factor = f.neg(f.mul(s.m[i][c], iv));
      for (int j = c; j < s.cols; ++j) s.m[i][j] = f.add(s.m[i][j], f.mul(factor, s.m[r][j]));
    }
    ++r;
  }
  return r;
}

void load(Scratch& s, const Subspace& u) {
  for (int r = 0; r < u.rank(); ++r) {
    auto row = u.row(r);
    std::copy(row.begin(), row.end(), s.m[s.rows].begin());
    ++s.rows;
  }
}

Subspace extract(const Field& f, int n, const Scratch& s, int first_row, int rank, int col_offset) {
  std::vector<std::uint8_t> data(static_cast<std::size_t>(rank) * (n + 1));
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c <= n; ++c) data[static_cast<std::size_t>(r) * (n + 1) + c] = s.m[first_row + r][col_offset + c];
  return Subspace::from_rref(f, n, rank, std::move(data));
}

void check_same(const Subspace& u, const Subspace& v) {
  if (u.ambient_n() != v.ambient_n() || !(u.field() == v.field()))
    throw Error(ErrorKind::AmbientMismatch, "subspaces live in different ambient spaces");
}

}  // namespace

Subspace::Subspace(Field f, int ambient_n) : field_(f), n_(ambient_n) {
  if (ambient_n < 0 || ambient_n > kMaxAmbient)
    throw Error(ErrorKind::DimensionOutOfRange, "ambient dimension " + std::to_string(ambient_n));
}

Subspace Subspace::from_rref(Field f, int ambient_n, int rank, std::vector<std::uint8_t> data) {
  Subspace s(f, ambient_n);
  s.rank_ = rank;
  s.data_ = std::move(data);
  return s;
}

int Subspace::pivot(int r) const {
  for (int c = 0; c < cols(); ++c)
    if (at(r, c)) return c;
  return -1;
}

Matrix Subspace::rows() const {
  Matrix m(rank_, std::vector<int>(cols()));
  for (int r = 0; r < rank_; ++r)
    for (int c = 0; c < cols(); ++c) m[r][c] = at(r, c);
  return m;
}

std::string Subspace::str() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < rank_; ++r) {
    if (r) os << ',';
    os << '[';
    for (int c = 0; c < cols(); ++c) os << (c ? "," : "") << int(at(r, c));
    os << ']';
  }
  os << ']';
  return os.str();
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.field_.q() <=> b.field_.q(); c != 0) return c;
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  return a.data_ <=> b.data_;
}

Subspace rref_canonicalize(const Field& f, int n, const Matrix& rows) {
  if (n < 0 || n > kMaxAmbient) throw Error(ErrorKind::DimensionOutOfRange, "ambient dimension " + std::to_string(n));
  if (static_cast<int>(rows.size()) > kBufRows) {
    // Reduce in batches so arbitrarily long generator lists are accepted.
    Subspace acc(f, n);
    for (std::size_t lo = 0; lo < rows.size(); lo += kBufRows / 2) {
      Matrix part(rows.begin() + lo, rows.begin() + std::min(rows.size(), lo + kBufRows / 2));
      acc = join(acc, rref_canonicalize(f, n, part));
    }
    return acc;
  }
  Scratch s;
  s.cols = n + 1;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n + 1)
      throw Error(ErrorKind::DimensionMismatch, "row of length " + std::to_string(row.size()) + ", expected " +
                                                    std::to_string(n + 1));
    for (int c = 0; c <= n; ++c) {
      int v = row[c];
      if (v < 0 || v >= f.q()) throw Error(ErrorKind::DimensionMismatch, "entry outside [0, q)");
      s.m[s.rows][c] = static_cast<std::uint8_t>(v);
    }
    ++s.rows;
  }
  int rank = eliminate(f, s, s.cols);
  return extract(f, n, s, 0, rank, 0);
}

Subspace join(const Subspace& u, const Subspace& v) {
  check_same(u, v);
  Scratch s;
  s.cols = u.cols();
  load(s, u);
  load(s, v);
  int rank = eliminate(u.field(), s, s.cols);
  return extract(u.field(), u.ambient_n(), s, 0, rank, 0);
}

// Zassenhaus: reduce [u | u ; v | 0]; rows whose left half vanishes span u ∩ v.
Subspace meet(const Subspace& u, const Subspace& v) {
  check_same(u, v);
  const Field& f = u.field();
  int w = u.cols();
  Scratch s;
  s.cols = 2 * w;
  for (int r = 0; r < u.rank(); ++r, ++s.rows)
    for (int c = 0; c < w; ++c) s.m[s.rows][c] = s.m[s.rows][w + c] = u.at(r, c);
  for (int r = 0; r < v.rank(); ++r, ++s.rows)
    for (int c = 0; c < w; ++c) {
      s.m[s.rows][c] = v.at(r, c);
      s.m[s.rows][w + c] = 0;
    }
  int total = eliminate(f, s, s.cols);
  int sum_rank = 0;
  for (; sum_rank < total; ++sum_rank) {
    bool left_zero = true;
    for (int c = 0; c < w && left_zero; ++c) left_zero = s.m[sum_rank][c] == 0;
    if (left_zero) break;
  }
  // The rows after the join part are already an RREF of the meet: their pivots
  // are in the right half and elimination cleared those columns elsewhere.
  return extract(f, u.ambient_n(), s, sum_rank, total - sum_rank, w);
}

int meet_dim(const Subspace& u, const Subspace& v) {
  check_same(u, v);
  Scratch s;
  s.cols = u.cols();
  load(s, u);
  load(s, v);
  return u.rank() + v.rank() - rank_of(u.field(), s) - 1;
}

bool contains(const Subspace& u, const Subspace& v) {
  check_same(u, v);
  if (v.rank() > u.rank()) return false;
  Scratch s;
  s.cols = u.cols();
  load(s, u);
  load(s, v);
  return rank_of(u.field(), s) == u.rank();
}

}  // namespace qekr
