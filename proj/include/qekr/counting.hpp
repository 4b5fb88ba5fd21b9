#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

#include "qekr/geometry.hpp"

namespace qekr {

using CountValue = mpz_class;
using Rational = mpq_class;

struct Params {
  int q = 2, n = 0, k = 0, t = 0;
  std::optional<int> x, j;
};

enum class ExampleId { Pencil, P1, P2, A1, A2 };
enum class Form { Closed, Sum, Refined };

const char* example_name(ExampleId id);
std::optional<ExampleId> parse_example(const std::string& s);
const char* form_name(Form f);

// Throws InvalidFieldOrder unless q is a prime power.
void check_order(long q);

CountValue qpow(long q, long e);
CountValue gaussian(long n, long k, long q);
CountValue theta(long n, long q);
CountValue count_disjoint(long n, long m, long j, long q);
CountValue count_affine_subspaces(long m, long k, long q);

CountValue size_pencil(const Params& p);
CountValue size_example(ExampleId id, Form form, const Params& p);

struct Threshold {
  CountValue value;
  ExampleId branch;
  CountValue first;   // P1 or A1
  CountValue second;  // P2 or A2
};
Threshold hm_threshold(SpaceKind kind, const Params& p);

CountValue bound_psi_families(SpaceKind kind, const Params& p);
CountValue bound_small_cover(SpaceKind kind, const Params& p);

// Largest t-intersecting family of k-spaces in PG(n,q) for n >= 2k - t.
CountValue ekr_bound(long n, long k, long t, long q);

// Unchecked formula evaluators, shared with the inequality lab.
namespace formula {
CountValue p1_closed(long q, long n, long k, long t);
CountValue p1_sum(long q, long n, long k, long t);
CountValue a1_closed(long q, long n, long k, long t);
CountValue a1_sum(long q, long n, long k, long t);
// Two-term expansion; `head` is theta_{t+2} for P2 and theta_{t+1} for A2.
CountValue p2_closed(long q, long n, long k, long t);
CountValue a2_closed(long q, long n, long k, long t);
// [n-t-2, k-t-2] (1 + head q^{k-t-1} (q^{n-k}-1)/(q^{k-t-1}-1)), only for k > t+1.
Rational p2_factored(long q, long n, long k, long t);
Rational a2_factored(long q, long n, long k, long t);
// k = 2t+2 slice.
Rational p2_refined(long q, long n, long t);
Rational p2_refined_i(long q, long n, long t);
CountValue p1_refined(long q, long n, long t);
// k = 2t+1 slice.
Rational a2_refined(long q, long n, long t);
Rational a2_refined_i(long q, long n, long t);
CountValue a1_refined(long q, long n, long t);

CountValue psi_bound_pg(long q, long n, long k, long t, long x);
CountValue psi_bound_ag(long q, long n, long k, long t, long x);
CountValue small_cover_pg(long q, long n, long k, long t);
CountValue small_cover_ag(long q, long n, long k, long t);
CountValue f_p(long q, long n, long k, long t);
CountValue f_a(long q, long n, long k, long t);
}  // namespace formula

// Exact integer value of r, or DivisibilityViolation naming `what`.
CountValue require_integer(const Rational& r, const std::string& what);

}  // namespace qekr
