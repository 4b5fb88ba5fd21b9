#include "doctest.h"
#include "qekr/errors.hpp"
#include "qekr/gf.hpp"

using namespace qekr;

namespace {
const int kOrders[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

FieldElement E(int c) { return {c}; }

int arith(const Field& f, FieldOp op, int a, int b) { return field_arith(f, op, E(a), E(b)).code; }
}  // namespace

TEST_CASE("field_make picks the fixed modulus") {
  Field f2 = field_make(2);
  CHECK(f2.q() == 2);
  CHECK(f2.p() == 2);
  CHECK(f2.e() == 1);

  Field f4 = field_make(4);
  CHECK(f4.p() == 2);
  CHECK(f4.e() == 2);
  CHECK(f4.modulus() == std::vector<int>{1, 1, 1});
  CHECK(field_make(8).modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(field_make(9).modulus() == std::vector<int>{1, 0, 1});
  CHECK(field_make(16).modulus() == std::vector<int>{1, 1, 0, 0, 1});
  CHECK(field_make(7).modulus() == std::vector<int>{0, 1});
}

TEST_CASE("field_make rejects bad orders") {
  for (int q : {0, 1, 6, 10, 12, 15}) {
    try {
      field_make(q);
      FAIL("accepted q = " << q);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPrimePower);
    }
  }
  for (int q : {17, 25, 27, 32}) {
    try {
      field_make(q);
      FAIL("accepted q = " << q);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedOrder);
    }
  }
}

TEST_CASE("moduli are irreducible") {
  for (int q : kOrders) {
    Field f = field_make(q);
    CHECK(is_irreducible(f.p(), f.modulus()));
  }
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));  // (x+1)^2
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));  // x^2 - 1
  CHECK(is_irreducible(3, {1, 0, 1}));
}

TEST_CASE("spot values") {
  CHECK(arith(field_make(2), FieldOp::Add, 1, 1) == 0);
  CHECK(arith(field_make(4), FieldOp::Mul, 2, 2) == 3);
  CHECK(arith(field_make(3), FieldOp::Div, 1, 2) == 2);
  // x * x^2 = x^3 = x + 1 in GF(8)
  CHECK(arith(field_make(8), FieldOp::Mul, 2, 4) == 3);
  // x * x = x^2 = -1 = 2 in GF(9), code for constant 2 is 2
  CHECK(arith(field_make(9), FieldOp::Mul, 3, 3) == 2);
}

TEST_CASE("division by zero") {
  Field f = field_make(5);
  CHECK_THROWS_AS(field_arith(f, FieldOp::Div, E(3), E(0)), Error);
  try {
    field_arith(f, FieldOp::Div, E(3), E(0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("field axioms hold exhaustively") {
  for (int q : kOrders) {
    CAPTURE(q);
    Field f = field_make(q);
    bool ok = true;
    for (int a = 0; a < q; ++a) {
      ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.mul(a, 0) == 0;
      ok &= f.add(a, f.neg(a)) == 0;
      if (a) ok &= f.mul(a, f.inv(a)) == 1;
      for (int b = 0; b < q; ++b) {
        ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok &= f.add(f.sub(a, b), b) == a;
        if (b) {
          int d = arith(f, FieldOp::Div, a, b);
          ok &= d == f.mul(a, f.inv(b)) && f.mul(b, d) == a;
        }
        for (int c = 0; c < q; ++c) {
          ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
          ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
          ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        }
      }
    }
    CHECK(ok);
    // Characteristic: adding 1 to itself p times gives 0.
    int acc = 0;
    for (int i = 0; i < f.p(); ++i) acc = f.add(acc, 1);
    CHECK(acc == 0);
  }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
  for (int q : kOrders) {
    Field f = field_make(q);
    bool found = false;
    for (int g = 1; g < q && !found; ++g) {
      int x = 1, ord = 0;
      do {
        x = f.mul(x, g);
        ++ord;
      } while (x != 1);
      found = ord == q - 1;
    }
    CHECK_MESSAGE(found, "q = " << q);
  }
}

TEST_CASE("prime power split") {
  CHECK(prime_power_split(9) == std::array<int, 2>{3, 2});
  CHECK(prime_power_split(13) == std::array<int, 2>{13, 1});
  CHECK(prime_power_split(12) == std::array<int, 2>{0, 0});
  CHECK(prime_power_split(1) == std::array<int, 2>{0, 0});
}
