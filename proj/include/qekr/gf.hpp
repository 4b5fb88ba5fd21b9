#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qekr {

struct FieldElement {
  int code = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

enum class FieldOp { Add, Sub, Mul, Div };

namespace detail {
struct FieldTables {
  int q = 0, p = 0, e = 0;
  std::vector<int> modulus;
  std::array<std::array<std::uint8_t, 16>, 16> add{}, mul{};
  std::array<std::uint8_t, 16> neg{}, inv{};
};
}  // namespace detail

// Handle onto immutable, process-wide arithmetic tables. Copying is free.
class Field {
 public:
  Field() = default;

  int q() const { return t_->q; }
  int p() const { return t_->p; }
  int e() const { return t_->e; }
  const std::vector<int>& modulus() const { return t_->modulus; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return t_->add[a][b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return t_->add[a][t_->neg[b]]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return t_->mul[a][b]; }
  std::uint8_t neg(std::uint8_t a) const { return t_->neg[a]; }
  // inv(0) is 0; callers that can see a zero divisor use field_arith.
  std::uint8_t inv(std::uint8_t a) const { return t_->inv[a]; }

  const detail::FieldTables& tables() const { return *t_; }

  friend bool operator==(const Field& a, const Field& b) { return a.t_ == b.t_; }

 private:
  friend Field field_make(int q);
  explicit Field(const detail::FieldTables* t) : t_(t) {}
  const detail::FieldTables* t_ = nullptr;
};

Field field_make(int q);
FieldElement field_arith(const Field& f, FieldOp op, FieldElement a, FieldElement b);

// Returns {p, e} with q = p^e, or {0, 0} if q is not a prime power.
std::array<int, 2> prime_power_split(long long q);
bool is_prime_power(long long q);

// Monic polynomial over GF(p), coefficients lowest degree first.
bool is_irreducible(int p, const std::vector<int>& poly);

}  // namespace qekr
