#include <cctype>
#include <functional>
#include <map>

#include "qekr/errors.hpp"
#include "qekr/inequality.hpp"

namespace qekr {

namespace {

constexpr const char* kVars = "qnktxj";
constexpr std::size_t kMaxTuples = 10000000;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, "grid: " + what); }

class ExprParser {
 public:
  ExprParser(const std::string& s, const std::string& bound) : s_(s), bound_(bound) {}

  AffineExpr parse() {
    AffineExpr e;
    skip();
    if (pos_ == s_.size()) bad("empty expression");
    bool first = true;
    while (pos_ < s_.size()) {
      long sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        bad("expected + or - in '" + s_ + "'");
      }
      first = false;
      bool have_num = false;
      long num = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        have_num = true;
        num = num * 10 + (s_[pos_++] - '0');
        if (num > 1000000) bad("constant too large in '" + s_ + "'");
      }
      skip();
      if (have_num && pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip();
        if (pos_ == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) bad("expected a variable after '*'");
      }
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        char v = s_[pos_++];
        if (bound_.find(v) == std::string::npos) bad(std::string("variable '") + v + "' used before it is bound");
        e.terms.emplace_back(v, sign * (have_num ? num : 1));
      } else if (have_num) {
        e.constant += sign * num;
      } else {
        bad("malformed expression '" + s_ + "'");
      }
      skip();
    }
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  const std::string& s_;
  const std::string& bound_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

long eval(const AffineExpr& e, const std::map<char, long>& env) {
  long v = e.constant;
  for (auto [name, c] : e.terms) v += c * env.at(name);
  return v;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  std::string bound;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    start = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) bad("empty item");
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) bad("item '" + item + "' lacks '='");
    std::string name = trim(item.substr(0, eq));
    if (name.size() != 1 || std::string(kVars).find(name[0]) == std::string::npos)
      bad("unknown variable '" + name + "'");
    if (bound.find(name[0]) != std::string::npos) bad("variable '" + name + "' bound twice");
    std::string range = item.substr(eq + 1);
    std::size_t dots = range.find("..");
    GridVar v;
    v.name = name[0];
    std::string lo = dots == std::string::npos ? range : range.substr(0, dots);
    std::string hi = dots == std::string::npos ? range : range.substr(dots + 2);
    v.lo = ExprParser(lo, bound).parse();
    v.hi = ExprParser(hi, bound).parse();
    bound += name[0];
    g.vars.push_back(std::move(v));
  }
  return g;
}

bool GridSpec::binds(char v) const {
  for (const auto& g : vars)
    if (g.name == v) return true;
  return false;
}

std::vector<Params> GridSpec::expand() const {
  std::vector<Params> out;
  std::map<char, long> env;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      if (out.size() >= kMaxTuples) throw Error(ErrorKind::TooLarge, "grid has more than 10^7 tuples");
      Params p;
      p.q = env.count('q') ? static_cast<int>(env['q']) : 0;
      p.n = static_cast<int>(env.count('n') ? env['n'] : 0);
      p.k = static_cast<int>(env.count('k') ? env['k'] : 0);
      p.t = static_cast<int>(env.count('t') ? env['t'] : 0);
      if (env.count('x')) p.x = static_cast<int>(env['x']);
      if (env.count('j')) p.j = static_cast<int>(env['j']);
      out.push_back(p);
      return;
    }
    const GridVar& v = vars[i];
    long lo = eval(v.lo, env), hi = eval(v.hi, env);
    for (long val = lo; val <= hi; ++val) {
      env[v.name] = val;
      rec(i + 1);
    }
    env.erase(v.name);
  };
  rec(0);
  return out;
}

GridSpec default_grid(LemmaId id) {
  if (id == LemmaId::BOUNDS_A1) return GridSpec::parse("q=2..5,k=0..9,n=k..k+12");
  if (lemma_uses_x(id)) return GridSpec::parse("q=2..5,t=1..3,k=t+1..t+6,n=0..2k+t+8,x=2..k-t+1");
  return GridSpec::parse("q=2..5,t=1..3,k=t+1..t+6,n=0..2k+t+8");
}

}  // namespace qekr
