#include "qekr/inequality.hpp"

#include <algorithm>
#include <array>

#include "qekr/errors.hpp"
#include "qekr/gf.hpp"
#include "qekr/parallel.hpp"

namespace qekr {

namespace {

struct LemmaInfo {
  LemmaId id;
  const char* name;
  bool uses_x;
};

constexpr std::array<LemmaInfo, 18> kLemmas{{
    {LemmaId::BOUNDS_A1, "BOUNDS_A1", false},
    {LemmaId::L47, "L47", false},
    {LemmaId::L47B, "L47B", false},
    {LemmaId::PVERSCHIL1, "PVERSCHIL1", false},
    {LemmaId::PVERSCHIL2, "PVERSCHIL2", false},
    {LemmaId::PVERSCHIL3, "PVERSCHIL3", false},
    {LemmaId::ONG2X_P, "ONG2X_P", true},
    {LemmaId::LELIJK_P, "LELIJK_P", true},
    {LemmaId::AVERSCHIL1, "AVERSCHIL1", false},
    {LemmaId::AVERSCHIL2, "AVERSCHIL2", false},
    {LemmaId::AVERSCHIL3, "AVERSCHIL3", false},
    {LemmaId::ONG2X_A, "ONG2X_A", true},
    {LemmaId::LELIJK_A, "LELIJK_A", true},
    {LemmaId::GEENNAAM_P, "GEENNAAM_P", false},
    {LemmaId::AFFIENBLA, "AFFIENBLA", false},
    {LemmaId::LAATSTE_P, "LAATSTE_P", true},
    {LemmaId::LAATSTE_A_EXTRA, "LAATSTE_A_EXTRA", true},
    {LemmaId::LAATSTE_A, "LAATSTE_A", false},
}};

const LemmaInfo& info(LemmaId id) { return kLemmas[static_cast<std::size_t>(id)]; }

CountValue G(long n, long k, long q) { return gaussian(n, k, q); }
CountValue th(long n, long q) { return theta(n, q); }
CountValue Q(long q, long e) { return qpow(q, e); }

Rational frac(const CountValue& a, const CountValue& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

bool compare(const Rational& a, Relation r, const Rational& b) {
  int c = cmp(a, b);
  switch (r) {
    case Relation::Less: return c < 0;
    case Relation::LessEq: return c <= 0;
    case Relation::GreaterEq: return c >= 0;
    case Relation::Greater: return c > 0;
    case Relation::Equal: return c == 0;
  }
  return false;
}

struct Builder {
  const Params& p;
  std::string base;
  std::vector<Verdict> out;

  void add(const std::string& label, const Rational& lhs, Relation rel, const Rational& rhs,
           std::optional<int> j = std::nullopt) {
    Verdict v;
    v.claim = label.empty() ? base : base + "." + label;
    v.params = p;
    if (j) v.params.j = j;
    v.lhs = lhs;
    v.rhs = rhs;
    v.relation = rel;
    v.holds = compare(lhs, rel, rhs);
    out.push_back(std::move(v));
  }
};

// Pieces of the difference of the two extremal examples on the balanced slice.
struct Decomposition {
  Rational w1;
  std::vector<Rational> w2, coef;
  Rational total() const {
    Rational s = w1;
    for (std::size_t j = 0; j < w2.size(); ++j) s += coef[j] * w2[j];
    return s;
  }
};

// k = 2t+2 in PG(n,q).
Decomposition decompose_pg(long q, long n, long t) {
  Decomposition d;
  d.w1 = Rational(G(n - t - 2, t, q) + th(t + 2, q) - th(2 * t + 3, q));
  for (long j = 0; j <= t; ++j) {
    Rational w2 = frac(Q(q, n - t - j - 1) - 2 * Q(q, t - j + 1) + 1, CountValue(q - 1)) -
                  frac(Q(q, 2 * (t + 1 - j)) * (Q(q, n - 3 * t - 3 + j) - 1) * (Q(q, t + 2) - 1),
                       (Q(q, j + 1) - 1) * (Q(q, t + 2 - j) - 1));
    d.w2.push_back(w2);
    d.coef.push_back(frac(Q(q, (t + 1 - j) * (t - j)) * G(n - 2 * t - 3, t - j, q) * G(t + 1, j, q) * (Q(q, t + 3) - 1),
                          Q(q, t - j + 1) - 1));
  }
  return d;
}

// k = 2t+1 in AG(n,q).
Decomposition decompose_ag(long q, long n, long t) {
  Decomposition d;
  d.w1 = Rational(G(n - t - 2, t - 1, q) + th(t + 1, q) - th(2 * t + 1, q));
  for (long j = 0; j <= t - 1; ++j) {
    Rational w2 = frac(Q(q, n - t - j - 1) - 2 * Q(q, t - j) + 1, CountValue(q - 1) * (Q(q, n - 3 * t + j - 1) - 1)) -
                  frac((Q(q, t + 1) - 1) * Q(q, 2 * (t - j)), (Q(q, j + 1) - 1) * (Q(q, t - j + 1) - 1));
    d.w2.push_back(w2);
    d.coef.push_back(Rational(Q(q, (t - j) * (t - j - 1)) * G(n - 2 * t - 2, t - j, q) * G(t, j, q) * (Q(q, t + 2) - 1)));
  }
  return d;
}

CountValue last_rhs(long q, long n, long k, long t, long x) {
  return th(t + x, q) * G(n - t - x + 1, k - t - x + 1, q) + th(k - t, q) * th(k - t, q) * G(n - t - 2, k - t - 2, q) +
         th(k - t - 1, q) * G(n - t - 1, k - t - 1, q);
}

bool big_n(const Params& p) { return p.n > 2 * p.k + p.t + 2; }
bool above_2k_t(const Params& p) { return p.n > 2 * p.k - p.t; }

}  // namespace

const char* lemma_name(LemmaId id) { return info(id).name; }

LemmaId parse_lemma(const std::string& s) {
  for (const auto& l : kLemmas)
    if (s == l.name) return l.id;
  throw Error(ErrorKind::UnknownLemma, "unknown lemma '" + s + "'");
}

const std::vector<LemmaId>& all_lemmas() {
  static const std::vector<LemmaId> ids = [] {
    std::vector<LemmaId> v;
    for (const auto& l : kLemmas) v.push_back(l.id);
    return v;
  }();
  return ids;
}

bool lemma_uses_x(LemmaId id) { return info(id).uses_x; }

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
    case Relation::Equal: return "=";
  }
  return "?";
}

bool lemma_hypothesis(LemmaId id, const Params& p) {
  const int q = p.q, n = p.n, k = p.k, t = p.t;
  if (q < 2 || !is_prime_power(q)) return false;
  if (lemma_uses_x(id) && !p.x) return false;
  const int x = p.x.value_or(0);
  switch (id) {
    case LemmaId::BOUNDS_A1: return n >= k && k >= 0 && (q >= 3 || n >= 1);
    case LemmaId::L47: return above_2k_t(p) && k > t;
    // Read with a strict n > 2k - t: at n = 2k - t the claim fails once k - t >= 3.
    case LemmaId::L47B: return above_2k_t(p) && k > t;
    case LemmaId::PVERSCHIL1: return above_2k_t(p) && q >= 3 && k > 2 * t + 2;
    case LemmaId::PVERSCHIL2: return above_2k_t(p) && k > t + 1 && q >= 3 && k < 2 * t + 2;
    case LemmaId::PVERSCHIL3: return above_2k_t(p) && q >= 3 && k == 2 * t + 2;
    case LemmaId::AVERSCHIL1: return above_2k_t(p) && q >= 3 && k > 2 * t + 1;
    case LemmaId::AVERSCHIL2: return above_2k_t(p) && k > t + 1 && q >= 3 && k < 2 * t + 1;
    case LemmaId::AVERSCHIL3: return above_2k_t(p) && q >= 3 && k == 2 * t + 1;
    case LemmaId::ONG2X_P:
    case LemmaId::ONG2X_A: return big_n(p) && q >= 3 && k > t + 1 && t > 0 && x > 2;
    case LemmaId::LELIJK_P:
    case LemmaId::LELIJK_A:
      return k > t + 1 && t > 0 && ((q >= 4 && big_n(p)) || (q == 3 && n > 2 * k + t + 3)) && x >= 2;
    case LemmaId::GEENNAAM_P:
    case LemmaId::AFFIENBLA: return big_n(p) && q >= 3 && k > t + 1 && t > 0;
    // q >= 3 is where the claim is used; it fails for q = 2.
    case LemmaId::LAATSTE_P: return big_n(p) && k > 2 * t + 2 && x >= 2 && x <= k - t + 1 && t > 0 && q >= 3;
    case LemmaId::LAATSTE_A_EXTRA: return big_n(p) && k > 2 * t + 1 && x >= 3 && x <= k - t + 1 && t > 0 && q >= 3;
    case LemmaId::LAATSTE_A: return big_n(p) && k > 2 * t + 1 && q >= 3;
  }
  return false;
}

std::vector<Verdict> evaluate_lemma(LemmaId id, const Params& p) {
  const long q = p.q, n = p.n, k = p.k, t = p.t;
  const long x = p.x.value_or(0);
  check_order(q);
  Builder b{p, lemma_name(id), {}};
  using R = Relation;
  switch (id) {
    case LemmaId::BOUNDS_A1: {
      CountValue g = G(n, k, q), e = Q(q, k * (n - k));
      if (q >= 3) b.add("upper2", g, R::LessEq, 2 * e);
      if (q >= 4) b.add("upper1_2q", q * g, R::LessEq, (q + 2) * e);
      if (n >= 1) b.add("theta", (q - 1) * th(n, q), R::LessEq, Q(q, n + 1));
      if (n > k && k > 0) b.add("lower", q * g, R::GreaterEq, (q + 1) * e);
      break;
    }
    case LemmaId::L47: {
      CountValue tk = th(k - t, q);
      b.add("", formula::small_cover_pg(q, n, k, t), R::GreaterEq,
            G(n - t - 1, k - t - 1, q) + th(t + 1, q) * (tk - 1) * tk * G(n - t - 2, k - t - 2, q));
      break;
    }
    case LemmaId::L47B: {
      CountValue tk = th(k - t, q);
      b.add("", formula::small_cover_ag(q, n, k, t), R::GreaterEq,
            G(n - t - 1, k - t - 1, q) + q * th(t, q) * (tk - 1) * tk * G(n - t - 2, k - t - 2, q));
      break;
    }
    case LemmaId::PVERSCHIL1: b.add("", formula::p1_closed(q, n, k, t), R::Greater, formula::p2_closed(q, n, k, t)); break;
    case LemmaId::PVERSCHIL2: b.add("", formula::p2_closed(q, n, k, t), R::Greater, formula::p1_closed(q, n, k, t)); break;
    case LemmaId::PVERSCHIL3: {
      CountValue s2 = formula::p2_closed(q, n, k, t), s1 = formula::p1_closed(q, n, k, t);
      b.add("", s2, R::GreaterEq, s1);
      Decomposition d = decompose_pg(q, n, t);
      b.add("decomposition", d.total(), R::Equal, Rational(s2 - s1));
      // The sign argument for w1 covers t >= 2 and t = 1 with n >= 9; n = 8, t = 1 is the negative case.
      if (t >= 2 || n >= 9)
        b.add("w1", d.w1, R::GreaterEq, Rational(0));
      else
        b.add("w1_negative", d.w1, R::Less, Rational(0));
      for (long j = 0; j <= t; ++j) b.add("w2", d.w2[j], R::GreaterEq, Rational(0), static_cast<int>(j));
      break;
    }
    case LemmaId::AVERSCHIL1: b.add("", formula::a1_closed(q, n, k, t), R::Greater, formula::a2_closed(q, n, k, t)); break;
    case LemmaId::AVERSCHIL2: b.add("", formula::a2_closed(q, n, k, t), R::Greater, formula::a1_closed(q, n, k, t)); break;
    case LemmaId::AVERSCHIL3: {
      CountValue r3 = formula::a2_closed(q, n, k, t), r1 = formula::a1_closed(q, n, k, t);
      b.add("", r3, R::GreaterEq, r1);
      Decomposition d = decompose_ag(q, n, t);
      b.add("decomposition", d.total(), R::Equal, Rational(r3 - r1));
      if (t >= 3 || (t == 2 && n >= 10)) {
        b.add("w1", d.w1, R::GreaterEq, Rational(0));
      } else if (t == 2 && n == 9) {
        b.add("difference", r3 - r1, R::Equal, Q(q, 9) + 2 * Q(q, 8) + 3 * Q(q, 7) + 2 * Q(q, 6) + Q(q, 5));
      } else if (t == 1) {
        CountValue common = 1 + q * th(2, q) * th(n - 4, q);
        b.add("second_closed", r3, R::Equal, common);
        b.add("first_closed", r1, R::Equal, common);
      }
      for (long j = 0; j <= t - 1; ++j) b.add("w2", d.w2[j], R::GreaterEq, Rational(0), static_cast<int>(j));
      break;
    }
    case LemmaId::ONG2X_P:
      b.add("", formula::psi_bound_pg(q, n, k, t, x), R::Less, formula::psi_bound_pg(q, n, k, t, 2));
      break;
    case LemmaId::ONG2X_A:
      b.add("", formula::psi_bound_ag(q, n, k, t, x), R::Less, formula::psi_bound_ag(q, n, k, t, 2));
      break;
    case LemmaId::LELIJK_P: b.add("", formula::psi_bound_pg(q, n, k, t, x), R::Less, formula::f_p(q, n, k, t)); break;
    case LemmaId::LELIJK_A: b.add("", formula::psi_bound_ag(q, n, k, t, x), R::Less, formula::f_a(q, n, k, t)); break;
    case LemmaId::GEENNAAM_P: b.add("", formula::small_cover_pg(q, n, k, t), R::Less, formula::f_p(q, n, k, t)); break;
    case LemmaId::AFFIENBLA: b.add("", formula::small_cover_ag(q, n, k, t), R::Less, formula::f_a(q, n, k, t)); break;
    case LemmaId::LAATSTE_P: b.add("", formula::p1_sum(q, n, k, t), R::Greater, last_rhs(q, n, k, t, x)); break;
    case LemmaId::LAATSTE_A_EXTRA: b.add("", formula::a1_sum(q, n, k, t), R::Greater, last_rhs(q, n, k, t, x)); break;
    case LemmaId::LAATSTE_A: {
      CountValue rhs = q * q * th(t - 1, q) * G(n - t - 1, k - t - 1, q) +
                       th(k - t, q) * th(k - t, q) * G(n - t - 2, k - t - 2, q) +
                       th(k - t - 1, q) * G(n - t - 1, k - t - 1, q);
      b.add("", formula::a1_sum(q, n, k, t), R::Greater, rhs);
      break;
    }
  }
  return b.out;
}

std::vector<Verdict> check_lemma(LemmaId id, const Params& p) {
  check_order(p.q);
  if (!lemma_hypothesis(id, p))
    throw Error(ErrorKind::HypothesisViolation,
                std::string(lemma_name(id)) + " hypothesis fails at q=" + std::to_string(p.q) + " n=" +
                    std::to_string(p.n) + " k=" + std::to_string(p.k) + " t=" + std::to_string(p.t) +
                    (p.x ? " x=" + std::to_string(*p.x) : std::string()));
  return evaluate_lemma(id, p);
}

std::vector<Verdict> decomposition_identities(SpaceKind kind, const Params& in) {
  check_order(in.q);
  Params p = in;
  bool pg = kind == SpaceKind::PG;
  const long q = p.q, n = p.n, t = p.t;
  long k = pg ? 2 * t + 2 : 2 * t + 1;
  if (t < (pg ? 0 : 1)) throw Error(ErrorKind::HypothesisViolation, pg ? "decomposition needs t >= 0" : "decomposition needs t >= 1");
  if (p.k != 0 && p.k != k)
    throw Error(ErrorKind::HypothesisViolation, "decomposition needs k = " + std::to_string(k));
  p.k = static_cast<int>(k);
  if (!(n > 2 * k - t)) throw Error(ErrorKind::HypothesisViolation, "decomposition needs n > 2k - t");
  Builder b{p, pg ? "DECOMP_P" : "DECOMP_A", {}};
  using R = Relation;
  if (pg) {
    CountValue s2 = formula::p2_closed(q, n, k, t), s1 = formula::p1_closed(q, n, k, t);
    b.add("second_refined", formula::p2_refined(q, n, t), R::Equal, Rational(s2));
    b.add("second_refined_i", formula::p2_refined_i(q, n, t), R::Equal, Rational(s2));
    b.add("first_refined", formula::p1_refined(q, n, t), R::Equal, s1);
    b.add("difference", decompose_pg(q, n, t).total(), R::Equal, Rational(s2 - s1));
  } else {
    CountValue r3 = formula::a2_closed(q, n, k, t), r1 = formula::a1_closed(q, n, k, t);
    b.add("second_refined", formula::a2_refined(q, n, t), R::Equal, Rational(r3));
    b.add("second_refined_i", formula::a2_refined_i(q, n, t), R::Equal, Rational(r3));
    b.add("first_refined", formula::a1_refined(q, n, t), R::Equal, r1);
    b.add("difference", decompose_ag(q, n, t).total(), R::Equal, Rational(r3 - r1));
    if (t == 2 && n == 9)
      b.add("difference_polynomial", r3 - r1, R::Equal, Q(q, 9) + 2 * Q(q, 8) + 3 * Q(q, 7) + 2 * Q(q, 6) + Q(q, 5));
  }
  return b.out;
}

GridResult run_grid(LemmaId id, const GridSpec& grid) {
  if (lemma_uses_x(id) && !grid.binds('x')) throw Error(ErrorKind::ParseError, std::string(lemma_name(id)) + " needs x in the grid");
  if (!lemma_uses_x(id) && grid.binds('x')) throw Error(ErrorKind::ParseError, std::string(lemma_name(id)) + " takes no x");
  std::vector<Params> tuples;
  for (const auto& p : grid.expand())
    if (lemma_hypothesis(id, p)) tuples.push_back(p);
  auto key = [](const Params& p) { return std::make_tuple(p.q, p.n, p.k, p.t, p.x.value_or(-1)); };
  std::sort(tuples.begin(), tuples.end(), [&](const Params& a, const Params& b) { return key(a) < key(b); });
  tuples.erase(std::unique(tuples.begin(), tuples.end(), [&](const Params& a, const Params& b) { return key(a) == key(b); }),
               tuples.end());
  if (tuples.empty()) throw Error(ErrorKind::EmptyGrid, std::string("no grid tuple satisfies the ") + lemma_name(id) + " hypothesis");
  std::vector<std::vector<Verdict>> slots(tuples.size());
  parallel_for(tuples.size(), [&](std::size_t i) { slots[i] = evaluate_lemma(id, tuples[i]); }, 4);
  GridResult r;
  r.lemma = id;
  r.tuples = tuples.size();
  for (auto& s : slots)
    for (auto& v : s) {
      (v.holds ? r.passed : r.failed)++;
      r.verdicts.push_back(std::move(v));
    }
  return r;
}

namespace {

std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& vs) {
  out << "lemma,q,n,k,t,x,j,lhs,rhs,relation,holds\n";
  for (const auto& v : vs)
    out << v.claim << ',' << v.params.q << ',' << v.params.n << ',' << v.params.k << ',' << v.params.t << ','
        << opt(v.params.x) << ',' << opt(v.params.j) << ',' << v.lhs.get_str() << ',' << v.rhs.get_str() << ','
        << relation_symbol(v.relation) << ',' << (v.holds ? "true" : "false") << '\n';
}

void write_verdicts_json(std::ostream& out, const std::vector<Verdict>& vs) {
  auto num = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("null"); };
  out << "{\n  \"verdicts\": [";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Verdict& v = vs[i];
    out << (i ? ",\n    " : "\n    ") << "{\"lemma\": \"" << v.claim << "\", \"q\": " << v.params.q
        << ", \"n\": " << v.params.n << ", \"k\": " << v.params.k << ", \"t\": " << v.params.t
        << ", \"x\": " << num(v.params.x) << ", \"j\": " << num(v.params.j) << ", \"lhs\": \"" << v.lhs.get_str()
        << "\", \"rhs\": \"" << v.rhs.get_str() << "\", \"relation\": \"" << relation_symbol(v.relation)
        << "\", \"holds\": " << (v.holds ? "true" : "false") << '}';
  }
  out << (vs.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace qekr
