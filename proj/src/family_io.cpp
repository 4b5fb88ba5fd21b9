#include <sstream>

#include "json.hpp"
#include "qekr/errors.hpp"
#include "qekr/families.hpp"

namespace qekr {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

void write_matrix(std::ostream& out, const Subspace& s) {
  out << '[';
  for (int r = 0; r < s.rank(); ++r) {
    out << (r ? ",[" : "[");
    for (int c = 0; c < s.cols(); ++c) out << (c ? "," : "") << int(s.at(r, c));
    out << ']';
  }
  out << ']';
}

int get_int(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_error(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) parse_error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Matrix read_matrix(const json& m, const AmbientSpace& space) {
  if (!m.is_array()) parse_error("a subspace must be an array of rows");
  Matrix rows;
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != space.n + 1)
      parse_error("each row needs " + std::to_string(space.n + 1) + " entries");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) parse_error("row entries must be integers");
      int v = x.get<int>();
      if (v < 0 || v >= space.q()) parse_error("row entry " + std::to_string(v) + " outside [0, q)");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

json parse_all(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

}  // namespace

void family_save(const Family& fam, std::ostream& out, const std::string& report) {
  out << "{\n  \"space\": \"" << space_kind_name(fam.space().kind) << "\",\n  \"q\": " << fam.space().q()
      << ",\n  \"n\": " << fam.space().n << ",\n  \"k\": " << fam.k() << ",\n  \"subspaces\": [";
  for (std::size_t i = 0; i < fam.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_matrix(out, fam[i]);
  }
  out << (fam.empty() ? "]" : "\n  ]");
  if (!report.empty()) out << ",\n  \"report\": " << report;
  out << "\n}\n";
}

void family_save(const Family& fam, std::ostream& out) { family_save(fam, out, std::string()); }

std::string subspace_json(const Subspace& s) {
  std::ostringstream os;
  write_matrix(os, s);
  return os.str();
}

Family family_load(std::istream& in) {
  json doc = parse_all(in);
  if (!doc.is_object()) parse_error("family file must hold one object");
  if (!doc.contains("space") || !doc.at("space").is_string()) parse_error("missing field 'space'");
  std::string kind = doc.at("space").get<std::string>();
  if (kind != "PG" && kind != "AG") parse_error("space must be \"PG\" or \"AG\"");
  int q = get_int(doc, "q");
  int n = get_int(doc, "n");
  int k = get_int(doc, "k");
  if (!is_prime_power(q)) parse_error("q = " + std::to_string(q) + " is not a prime power");
  AmbientSpace space;
  try {
    space = AmbientSpace::make(kind == "PG" ? SpaceKind::PG : SpaceKind::AG, n, q);
  } catch (const Error& e) {
    parse_error(e.what());
  }
  if (k < 0 || k > n) parse_error("k outside [0, n]");
  if (!doc.contains("subspaces") || !doc.at("subspaces").is_array()) parse_error("missing array 'subspaces'");
  std::vector<Subspace> members;
  for (const auto& m : doc.at("subspaces")) members.push_back(space.span(read_matrix(m, space)));
  return Family::from_members(space, k, std::move(members), true);
}

Anchors anchors_load(std::istream& in, const AmbientSpace& space) {
  json doc = parse_all(in);
  if (!doc.is_object()) parse_error("anchor file must hold one object");
  Anchors a;
  auto read = [&](const char* key, std::optional<Subspace>& slot) {
    if (doc.contains(key)) slot = space.span(read_matrix(doc.at(key), space));
  };
  read("delta", a.delta);
  read("pi", a.pi);
  read("gamma", a.gamma);
  read("base_point", a.base_point);
  return a;
}

}  // namespace qekr
