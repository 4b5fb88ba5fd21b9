#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qekr/gf.hpp"

namespace qekr {

// Largest supported ambient projective dimension. Meets run Zassenhaus
// elimination on 2(n+1) columns, which has to fit the scratch buffer.
inline constexpr int kMaxAmbient = 15;

using Matrix = std::vector<std::vector<int>>;

class Subspace {
 public:
  Subspace() = default;
  // The empty subspace of PG(n, q).
  Subspace(Field f, int ambient_n);

  const Field& field() const { return field_; }
  int ambient_n() const { return n_; }
  int cols() const { return n_ + 1; }
  int rank() const { return rank_; }
  int proj_dim() const { return rank_ - 1; }
  bool empty() const { return rank_ == 0; }

  std::uint8_t at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols() + c]; }
  std::span<const std::uint8_t> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * cols(), static_cast<std::size_t>(cols())};
  }
  const std::vector<std::uint8_t>& data() const { return data_; }
  int pivot(int r) const;
  Matrix rows() const;
  std::string str() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_ && a.data_ == b.data_ && a.field_ == b.field_;
  }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  // Takes ownership of rows already in canonical RREF (rank x (n+1)).
  static Subspace from_rref(Field f, int ambient_n, int rank, std::vector<std::uint8_t> data);

 private:
  Field field_;
  int n_ = 0;
  int rank_ = 0;
  std::vector<std::uint8_t> data_;
};

Subspace rref_canonicalize(const Field& f, int ambient_n, const Matrix& rows);
Subspace join(const Subspace& u, const Subspace& v);
Subspace meet(const Subspace& u, const Subspace& v);
bool contains(const Subspace& u, const Subspace& v);
// proj_dim(meet(u, v)) by rank counting, without building the meet.
int meet_dim(const Subspace& u, const Subspace& v);

}  // namespace qekr
