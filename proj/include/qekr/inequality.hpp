#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qekr/counting.hpp"

namespace qekr {

enum class LemmaId {
  BOUNDS_A1,
  L47,
  L47B,
  PVERSCHIL1,
  PVERSCHIL2,
  PVERSCHIL3,
  ONG2X_P,
  LELIJK_P,
  AVERSCHIL1,
  AVERSCHIL2,
  AVERSCHIL3,
  ONG2X_A,
  LELIJK_A,
  GEENNAAM_P,
  AFFIENBLA,
  LAATSTE_P,
  LAATSTE_A_EXTRA,
  LAATSTE_A,
};

const char* lemma_name(LemmaId id);
LemmaId parse_lemma(const std::string& s);  // UnknownLemma
const std::vector<LemmaId>& all_lemmas();
bool lemma_uses_x(LemmaId id);

enum class Relation { Less, LessEq, GreaterEq, Greater, Equal };
const char* relation_symbol(Relation r);

struct Verdict {
  // Lemma name, with ".label" for secondary claims of the same tuple.
  std::string claim;
  Params params;
  Rational lhs, rhs;
  Relation relation = Relation::Equal;
  bool holds = false;
};

bool lemma_hypothesis(LemmaId id, const Params& p);
// HypothesisViolation outside the hypothesis.
std::vector<Verdict> check_lemma(LemmaId id, const Params& p);
// Same claims without the hypothesis check; used to probe the edges of a domain.
std::vector<Verdict> evaluate_lemma(LemmaId id, const Params& p);

// Affine expression c0 + sum c_v * v over grid variables.
struct AffineExpr {
  long constant = 0;
  std::vector<std::pair<char, long>> terms;
};

struct GridVar {
  char name = 'q';
  AffineExpr lo, hi;
};

// "var=lo..hi" (or "var=value") items separated by commas, evaluated left
// to right; bounds may use variables bound earlier.
struct GridSpec {
  std::vector<GridVar> vars;

  static GridSpec parse(const std::string& text);  // ParseError
  bool binds(char v) const;
  // Every assignment, in declaration-nested order. Unbound variables stay 0 / empty.
  std::vector<Params> expand() const;
};

GridSpec default_grid(LemmaId id);

struct GridResult {
  LemmaId lemma = LemmaId::L47;
  std::size_t tuples = 0;
  std::size_t passed = 0, failed = 0;
  std::vector<Verdict> verdicts;  // sorted by (q, n, k, t, x), claims in order
};

// Hypothesis-filtered run; EmptyGrid when nothing survives the filter.
GridResult run_grid(LemmaId id, const GridSpec& grid);

// Refined sums against closed forms and the difference decomposition on the
// k = 2t+2 (PG) or k = 2t+1 (AG) slice. p.k may be left 0.
std::vector<Verdict> decomposition_identities(SpaceKind kind, const Params& p);

void write_verdicts_csv(std::ostream& out, const std::vector<Verdict>& vs);
void write_verdicts_json(std::ostream& out, const std::vector<Verdict>& vs);

}  // namespace qekr
