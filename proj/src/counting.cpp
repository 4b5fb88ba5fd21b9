#include "qekr/counting.hpp"

#include "qekr/errors.hpp"
#include "qekr/gf.hpp"

namespace qekr {

const char* example_name(ExampleId id) {
  switch (id) {
    case ExampleId::Pencil: return "PENCIL";
    case ExampleId::P1: return "P1";
    case ExampleId::P2: return "P2";
    case ExampleId::A1: return "A1";
    case ExampleId::A2: return "A2";
  }
  return "?";
}

std::optional<ExampleId> parse_example(const std::string& s) {
  for (auto id : {ExampleId::Pencil, ExampleId::P1, ExampleId::P2, ExampleId::A1, ExampleId::A2})
    if (s == example_name(id)) return id;
  return std::nullopt;
}

const char* form_name(Form f) {
  switch (f) {
    case Form::Closed: return "closed";
    case Form::Sum: return "sum";
    case Form::Refined: return "refined";
  }
  return "?";
}

void check_order(long q) {
  if (q < 2 || !is_prime_power(q)) throw Error(ErrorKind::InvalidFieldOrder, "q = " + std::to_string(q));
}

CountValue qpow(long q, long e) {
  if (e < 0) throw Error(ErrorKind::DimensionOutOfRange, "negative exponent " + std::to_string(e));
  CountValue r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

CountValue gaussian(long n, long k, long q) {
  check_order(q);
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  CountValue num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= qpow(q, n - i) - 1;
    den *= qpow(q, i + 1) - 1;
  }
  CountValue r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

CountValue theta(long n, long q) { return gaussian(n + 1, 1, q); }

CountValue count_disjoint(long n, long m, long j, long q) {
  check_order(q);
  if (m < 0 || j < 0) throw Error(ErrorKind::HypothesisViolation, "count_disjoint needs m, j >= 0");
  return qpow(q, (m + 1) * (j + 1)) * gaussian(n - m, j + 1, q);
}

CountValue count_affine_subspaces(long m, long k, long q) { return gaussian(m + 1, k + 1, q) - gaussian(m, k + 1, q); }

CountValue require_integer(const Rational& r, const std::string& what) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() != 1) throw Error(ErrorKind::DivisibilityViolation, what + " is not an integer");
  return c.get_num();
}

namespace formula {

namespace {
CountValue G(long n, long k, long q) { return gaussian(n, k, q); }
CountValue th(long n, long q) { return theta(n, q); }
CountValue Q(long q, long e) { return qpow(q, e); }
Rational frac(const CountValue& a, const CountValue& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

CountValue closed1(long q, long n, long k, long t, long head) {
  return th(head, q) - th(k - t, q) + G(n - t, k - t, q) - Q(q, (k - t + 1) * (k - t)) * G(n - k - 1, k - t, q);
}

CountValue sum1(long q, long n, long k, long t, long head) {
  CountValue s = th(head, q);
  for (long j = 0; j <= k - t - 2; ++j)
    s += G(k - t + 1, j + 1, q) * Q(q, (k - t - j) * (k - t - j - 1)) * G(n - k - 1, k - t - j - 1, q);
  return s;
}

CountValue two_term(long q, long n, long k, long t, long head) {
  CountValue through = G(n - t - 2, k - t - 2, q);
  return through + th(head, q) * (G(n - t - 1, k - t - 1, q) - through);
}

Rational factored(long q, long n, long k, long t, long head) {
  Rational inner = Rational(1) + Rational(th(head, q) * Q(q, k - t - 1)) * frac(Q(q, n - k) - 1, Q(q, k - t - 1) - 1);
  return Rational(G(n - t - 2, k - t - 2, q)) * inner;
}
}  // namespace

CountValue p1_closed(long q, long n, long k, long t) { return closed1(q, n, k, t, k + 1); }
CountValue p1_sum(long q, long n, long k, long t) { return sum1(q, n, k, t, k + 1); }
CountValue a1_closed(long q, long n, long k, long t) { return closed1(q, n, k, t, k); }
CountValue a1_sum(long q, long n, long k, long t) { return sum1(q, n, k, t, k); }
CountValue p2_closed(long q, long n, long k, long t) { return two_term(q, n, k, t, t + 2); }
CountValue a2_closed(long q, long n, long k, long t) { return two_term(q, n, k, t, t + 1); }
Rational p2_factored(long q, long n, long k, long t) { return factored(q, n, k, t, t + 2); }
Rational a2_factored(long q, long n, long k, long t) { return factored(q, n, k, t, t + 1); }

Rational p2_refined(long q, long n, long t) {
  Rational s = Rational(G(n - t - 2, t, q));
  for (long j = 0; j <= t; ++j) {
    CountValue num = th(t + 2, q) * G(t + 1, j, q) * Q(q, (t + 1 - j) * (t - j)) * G(n - 2 * t - 3, t - j, q) *
                     (Q(q, n - t - j - 1) - 2 * Q(q, t - j + 1) + 1);
    s += frac(num, Q(q, t - j + 1) - 1);
  }
  return s + Rational(th(t + 2, q));
}

Rational p2_refined_i(long q, long n, long t) {
  CountValue s = G(n - t - 2, t, q);
  for (long i = -1; i <= t; ++i)
    s += th(t + 2, q) * G(t + 1, i + 1, q) *
         (Q(q, (t - i) * (t - i)) * G(n - 2 * t - 2, t - i, q) - Q(q, (t - i) * (t - i - 1)) * G(n - 2 * t - 3, t - i - 1, q));
  return Rational(s);
}

CountValue p1_refined(long q, long n, long t) {
  CountValue s = th(2 * t + 3, q);
  for (long j = 0; j <= t; ++j) s += G(t + 3, j + 1, q) * Q(q, (t + 2 - j) * (t + 1 - j)) * G(n - 2 * t - 3, t + 1 - j, q);
  return s;
}

Rational a2_refined(long q, long n, long t) {
  Rational s = Rational(G(n - t - 2, t - 1, q));
  for (long j = 0; j <= t - 1; ++j) {
    CountValue num = th(t + 1, q) * G(t, j, q) * Q(q, (t - j) * (t - j - 1)) * G(n - 2 * t - 2, t - j - 1, q) *
                     (Q(q, n - t - j - 1) - 2 * Q(q, t - j) + 1);
    s += frac(num, Q(q, t - j) - 1);
  }
  return s + Rational(th(t + 1, q));
}

Rational a2_refined_i(long q, long n, long t) {
  CountValue s = G(n - t - 2, t - 1, q);
  for (long i = -1; i <= t - 1; ++i)
    s += th(t + 1, q) * G(t, i + 1, q) *
         (Q(q, (t - i - 1) * (t - i - 1)) * G(n - 2 * t - 1, t - i - 1, q) -
          Q(q, (t - i - 1) * (t - i - 2)) * G(n - 2 * t - 2, t - i - 2, q));
  return Rational(s);
}

CountValue a1_refined(long q, long n, long t) {
  CountValue s = th(2 * t + 1, q);
  for (long j = 0; j <= t - 1; ++j) s += G(t + 2, j + 1, q) * Q(q, (t + 1 - j) * (t - j)) * G(n - 2 * t - 2, t - j, q);
  return s;
}

CountValue psi_bound_pg(long q, long n, long k, long t, long x) {
  CountValue tk = th(k - t, q);
  CountValue pw;
  mpz_pow_ui(pw.get_mpz_t(), tk.get_mpz_t(), static_cast<unsigned long>(x));
  return pw * G(n - t - x, k - t - x, q) * G(t + x + 1, t + 1, q);
}

CountValue psi_bound_ag(long q, long n, long k, long t, long x) {
  CountValue tk = th(k - t, q);
  CountValue pw;
  mpz_pow_ui(pw.get_mpz_t(), tk.get_mpz_t(), static_cast<unsigned long>(x));
  return Q(q, x) * G(t + x, x, q) * pw * G(n - t - x, k - t - x, q);
}

CountValue small_cover_pg(long q, long n, long k, long t) {
  CountValue a = th(t + 1, q), b = th(k - t, q);
  return 2 * G(n - t - 1, k - t - 1, q) + (a * b - a - 1) * b * G(n - t - 2, k - t - 2, q);
}

CountValue small_cover_ag(long q, long n, long k, long t) {
  CountValue a = th(t + 1, q), b = th(k - t, q);
  return 2 * G(n - t - 1, k - t - 1, q) + (a * b - a - b) * b * G(n - t - 2, k - t - 2, q);
}

CountValue f_p(long q, long n, long k, long t) {
  CountValue a = p1_closed(q, n, k, t), b = p2_closed(q, n, k, t);
  return a > b ? a : b;
}

CountValue f_a(long q, long n, long k, long t) {
  CountValue a = a1_closed(q, n, k, t), b = a2_closed(q, n, k, t);
  return a > b ? a : b;
}

}  // namespace formula

namespace {

[[noreturn]] void violate(const std::string& what) { throw Error(ErrorKind::HypothesisViolation, what); }

void check_example_params(const Params& p) {
  check_order(p.q);
  if (p.t < 0) violate("t must be >= 0");
  if (!(p.t < p.k)) violate("needs t < k");
  if (!(p.n > 2 * p.k - p.t)) violate("needs n > 2k - t");
}

}  // namespace

CountValue size_pencil(const Params& p) {
  check_order(p.q);
  if (!(0 <= p.t && p.t <= p.k && p.k <= p.n)) violate("pencil needs 0 <= t <= k <= n");
  return gaussian(p.n - p.t, p.k - p.t, p.q);
}

CountValue size_example(ExampleId id, Form form, const Params& p) {
  using namespace formula;
  if (id == ExampleId::Pencil) {
    if (form != Form::Closed) throw Error(ErrorKind::FormUnavailable, "the pencil size has only a closed form");
    return size_pencil(p);
  }
  check_example_params(p);
  long q = p.q, n = p.n, k = p.k, t = p.t;
  bool projective = id == ExampleId::P1 || id == ExampleId::P2;
  if (form == Form::Refined) {
    long slice = projective ? 2 * t + 2 : 2 * t + 1;
    if (k != slice) violate(std::string("refined form of ") + example_name(id) + " needs k = " + std::to_string(slice));
  }
  switch (id) {
    case ExampleId::P1:
      if (form == Form::Closed) return p1_closed(q, n, k, t);
      if (form == Form::Sum) return p1_sum(q, n, k, t);
      return p1_refined(q, n, t);
    case ExampleId::A1:
      if (form == Form::Closed) return a1_closed(q, n, k, t);
      if (form == Form::Sum) return a1_sum(q, n, k, t);
      return a1_refined(q, n, t);
    case ExampleId::P2:
    case ExampleId::A2: {
      if (form == Form::Sum) throw Error(ErrorKind::FormUnavailable, std::string(example_name(id)) + " has no sum form");
      CountValue two = projective ? p2_closed(q, n, k, t) : a2_closed(q, n, k, t);
      if (k > t + 1) {
        CountValue fac = require_integer(projective ? p2_factored(q, n, k, t) : a2_factored(q, n, k, t),
                                         std::string(example_name(id)) + " factored size");
        if (fac != two) throw Error(ErrorKind::FormMismatch, std::string(example_name(id)) + " factored size disagrees");
      }
      if (form == Form::Closed) return two;
      return require_integer(projective ? p2_refined(q, n, t) : a2_refined(q, n, t),
                             std::string(example_name(id)) + " refined size");
    }
    case ExampleId::Pencil: break;
  }
  return 0;
}

Threshold hm_threshold(SpaceKind kind, const Params& p) {
  check_example_params(p);
  if (!(p.k > p.t + 1)) violate("threshold needs k > t + 1");
  if (p.q < 3) violate("threshold needs q >= 3");
  Threshold th;
  bool pg = kind == SpaceKind::PG;
  th.first = size_example(pg ? ExampleId::P1 : ExampleId::A1, Form::Closed, p);
  th.second = size_example(pg ? ExampleId::P2 : ExampleId::A2, Form::Closed, p);
  // Ties go to the second example.
  if (th.first > th.second) {
    th.value = th.first;
    th.branch = pg ? ExampleId::P1 : ExampleId::A1;
  } else {
    th.value = th.second;
    th.branch = pg ? ExampleId::P2 : ExampleId::A2;
  }
  return th;
}

CountValue bound_psi_families(SpaceKind kind, const Params& p) {
  check_example_params(p);
  if (!p.x || *p.x < 2) violate("needs x >= 2");
  if (!(p.k > p.t + 1)) violate("needs k > t + 1");
  return kind == SpaceKind::PG ? formula::psi_bound_pg(p.q, p.n, p.k, p.t, *p.x)
                               : formula::psi_bound_ag(p.q, p.n, p.k, p.t, *p.x);
}

CountValue bound_small_cover(SpaceKind kind, const Params& p) {
  check_example_params(p);
  return kind == SpaceKind::PG ? formula::small_cover_pg(p.q, p.n, p.k, p.t) : formula::small_cover_ag(p.q, p.n, p.k, p.t);
}

CountValue ekr_bound(long n, long k, long t, long q) {
  if (n >= 2 * k + 1) return gaussian(n - t, k - t, q);
  return gaussian(2 * k - t + 1, k + 1, q);
}

}  // namespace qekr
