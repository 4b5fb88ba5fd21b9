#include "qekr/gf.hpp"

#include <map>
#include <string>

#include "qekr/errors.hpp"

namespace qekr {

std::array<int, 2> prime_power_split(long long q) {
  if (q < 2) return {0, 0};
  long long p = 0;
  for (long long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {static_cast<int>(q), 1};
  int e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<int>(p), e};
}

bool is_prime_power(long long q) { return prime_power_split(q)[0] != 0; }

namespace {

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    int shift = static_cast<int>(a.size()) - 1 - db;
    int c = a.back();
    for (int i = 0; i <= db; ++i) a[i + shift] = ((a[i + shift] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly decode(int code, int p, int e) {
  Poly c(e);
  for (int i = 0; i < e; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

int encode(const Poly& c, int p) {
  int code = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) code = code * p + c[i];
  return code;
}

const std::map<int, Poly>& modulus_table() {
  static const std::map<int, Poly> table = {
      {4, {1, 1, 1}},
      {8, {1, 1, 0, 1}},
      {9, {1, 0, 1}},
      {16, {1, 1, 0, 0, 1}},
  };
  return table;
}

detail::FieldTables build(int q) {
  auto [p, e] = prime_power_split(q);
  detail::FieldTables t;
  t.q = q;
  t.p = p;
  t.e = e;
  if (e == 1) {
    t.modulus = {0, 1};
  } else {
    t.modulus = modulus_table().at(q);
  }
  for (int a = 0; a < q; ++a) {
    Poly pa = decode(a, p, e);
    for (int b = 0; b < q; ++b) {
      Poly pb = decode(b, p, e);
      Poly s(e);
      for (int i = 0; i < e; ++i) s[i] = (pa[i] + pb[i]) % p;
      t.add[a][b] = static_cast<std::uint8_t>(encode(s, p));
      Poly prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
      Poly r = e == 1 ? Poly{prod[0] % p} : poly_mod(prod, t.modulus, p);
      r.resize(e, 0);
      t.mul[a][b] = static_cast<std::uint8_t>(encode(r, p));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (t.add[a][b] == 0) t.neg[a] = static_cast<std::uint8_t>(b);
      if (t.mul[a][b] == 1) t.inv[a] = static_cast<std::uint8_t>(b);
    }
  }
  return t;
}

constexpr int kMaxOrder = 16;

const std::array<detail::FieldTables, kMaxOrder + 1>& registry() {
  static const auto all = [] {
    std::array<detail::FieldTables, kMaxOrder + 1> r{};
    for (int q = 2; q <= kMaxOrder; ++q)
      if (is_prime_power(q)) r[q] = build(q);
    return r;
  }();
  return all;
}

}  // namespace

bool is_irreducible(int p, const std::vector<int>& poly) {
  Poly f = poly;
  trim(f);
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1 || f.back() != 1) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      Poly g = decode(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field field_make(int q) {
  if (q < 2 || !is_prime_power(q)) throw Error(ErrorKind::NotPrimePower, "q = " + std::to_string(q));
  if (q > kMaxOrder) throw Error(ErrorKind::UnsupportedOrder, "q = " + std::to_string(q) + " exceeds 16");
  return Field(&registry()[q]);
}

FieldElement field_arith(const Field& f, FieldOp op, FieldElement a, FieldElement b) {
  if (a.code < 0 || a.code >= f.q() || b.code < 0 || b.code >= f.q())
    throw Error(ErrorKind::DimensionOutOfRange, "element code outside [0, q)");
  auto x = static_cast<std::uint8_t>(a.code);
  auto y = static_cast<std::uint8_t>(b.code);
  switch (op) {
    case FieldOp::Add: return {f.add(x, y)};
    case FieldOp::Sub: return {f.sub(x, y)};
    case FieldOp::Mul: return {f.mul(x, y)};
    case FieldOp::Div:
      if (y == 0) throw Error(ErrorKind::DivisionByZero, "division by the zero element");
      return {f.mul(x, f.inv(y))};
  }
  return {};
}

}  // namespace qekr
