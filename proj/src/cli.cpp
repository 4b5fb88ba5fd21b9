#include "qekr/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qekr/errors.hpp"
#include "qekr/families.hpp"
#include "qekr/inequality.hpp"
#include "qekr/parallel.hpp"
#include "qekr/search.hpp"

namespace qekr::cli {

namespace {

// Signals a failed verification (exit 1) after the result was printed.
struct Failed {};

struct Dims {
  int q = 2, n = 0, k = 0, t = 0;
  Params params() const { return Params{q, n, k, t, std::nullopt, std::nullopt}; }
};

void add_dims(CLI::App* cmd, Dims& d, bool with_k = true) {
  cmd->add_option("--q", d.q, "field order")->required();
  cmd->add_option("--n", d.n, "ambient dimension")->required();
  if (with_k) cmd->add_option("--k", d.k, "subspace dimension")->required();
  cmd->add_option("--t", d.t, "intersection dimension")->required();
}

SpaceKind kind_of(const std::string& s) { return s == "ag" ? SpaceKind::AG : SpaceKind::PG; }

Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return family_load(in);
}

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string histogram_json(const std::map<std::size_t, std::size_t>& h) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [size, count] : h) {
    os << (first ? "" : ", ") << '"' << size << "\": " << count;
    first = false;
  }
  os << '}';
  return os.str();
}

void write_verdicts(std::ostream& out, const std::vector<Verdict>& vs, const std::string& format) {
  if (format == "json")
    write_verdicts_json(out, vs);
  else
    write_verdicts_csv(out, vs);
}

bool all_hold(const std::vector<Verdict>& vs) {
  for (const auto& v : vs)
    if (!v.holds) return false;
  return true;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for t-intersecting families of subspaces over finite fields", "qekr"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);

  const std::vector<std::string> examples{"PENCIL", "P1", "P2", "A1", "A2"};
  const std::vector<std::string> spaces{"pg", "ag"};

  // count
  auto* count = app.add_subcommand("count", "Closed-form counts")->require_subcommand(1, 1);
  long cn = 0, ck = 0, cm = 0, cj = 0, cq = 2;
  auto* c_gauss = count->add_subcommand("gaussian", "Gaussian binomial [n, k]_q");
  c_gauss->add_option("--n", cn)->required();
  c_gauss->add_option("--k", ck)->required();
  c_gauss->add_option("--q", cq)->required();
  auto* c_theta = count->add_subcommand("theta", "Points of PG(n, q)");
  c_theta->add_option("--n", cn)->required();
  c_theta->add_option("--q", cq)->required();
  auto* c_disj = count->add_subcommand("disjoint", "j-spaces disjoint from a fixed m-space of PG(n, q)");
  c_disj->add_option("--n", cn)->required();
  c_disj->add_option("--m", cm)->required();
  c_disj->add_option("--j", cj)->required();
  c_disj->add_option("--q", cq)->required();
  Dims sd;
  std::string s_example, s_form = "closed";
  auto* c_size = count->add_subcommand("size", "Size of an example family");
  c_size->add_option("--example", s_example)->required()->check(CLI::IsMember(examples));
  c_size->add_option("--form", s_form)->check(CLI::IsMember({"closed", "sum", "refined"}));
  add_dims(c_size, sd);
  std::string t_space;
  auto* c_thresh = count->add_subcommand("threshold", "Larger of the two non-pencil examples");
  c_thresh->add_option("--space", t_space)->required()->check(CLI::IsMember(spaces));
  add_dims(c_thresh, sd);

  // construct
  auto* construct = app.add_subcommand("construct", "Build an example family");
  std::string k_example, k_anchors, k_out, k_space = "pg";
  construct->add_option("--example", k_example)->required()->check(CLI::IsMember(examples));
  add_dims(construct, sd);
  construct->add_option("--anchors", k_anchors, "Anchor file")->check(CLI::ExistingFile);
  construct->add_option("--out", k_out, "Family file to write")->required();
  construct->add_option("--space", k_space, "Ambient space of a PENCIL")->check(CLI::IsMember(spaces));

  // verify
  auto* verify = app.add_subcommand("verify", "Check a family file")->require_subcommand(1, 1);
  std::string v_family;
  int v_t = 0;
  auto* v_int = verify->add_subcommand("t-intersecting", "Pairwise t-intersection");
  auto* v_max = verify->add_subcommand("maximal", "Maximality among t-intersecting families");
  for (auto* c : {v_int, v_max}) {
    c->add_option("--family", v_family)->required()->check(CLI::ExistingFile);
    c->add_option("--t", v_t)->required();
  }

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Structure of a family")->require_subcommand(1, 1);
  auto* a_cover = analyze->add_subcommand("cover", "Smallest covering dimension psi and its covers");
  std::optional<int> a_max_dim;
  a_cover->add_option("--family", v_family)->required()->check(CLI::ExistingFile);
  a_cover->add_option("--t", v_t)->required();
  a_cover->add_option("--max-dim", a_max_dim);

  // search
  auto* search = app.add_subcommand("search", "Exhaustive search on small geometries")->require_subcommand(1, 1);
  std::string r_space, r_seeds;
  std::uint64_t r_budget = kDefaultBudget;
  auto* r_clique = search->add_subcommand("max-clique", "Largest t-intersecting family");
  auto* r_probe = search->add_subcommand("probe", "Sizes of maximal non-pencil families");
  for (auto* c : {r_clique, r_probe}) {
    c->add_option("--space", r_space)->required()->check(CLI::IsMember(spaces));
    add_dims(c, sd);
    c->add_option("--budget", r_budget, "Node budget (probe with pairs: seed budget)");
  }
  r_probe->add_option("--seeds", r_seeds)->required()->check(CLI::IsMember({"pairs", "exhaustive"}));

  // check
  auto* check = app.add_subcommand("check", "Exact inequality checks")->require_subcommand(0, 1);
  std::string h_lemma, h_grid, h_format = "csv";
  check->add_option("--lemma", h_lemma);
  check->add_option("--grid", h_grid, "Grid such as \"q=2..3,t=1..2,k=t+1..t+4,n=2k-t+1..2k+6\"");
  check->add_option("--format", h_format)->check(CLI::IsMember({"csv", "json"}));
  auto* h_decomp = check->add_subcommand("decompositions", "Refined sums and the difference decomposition");
  std::string d_space;
  h_decomp->add_option("--space", d_space)->required()->check(CLI::IsMember(spaces));
  add_dims(h_decomp, sd, false);
  h_decomp->add_option("--format", h_format)->check(CLI::IsMember({"csv", "json"}));

  for (auto* c : {count, construct, verify, analyze, search, check, c_gauss, c_theta, c_disj, c_size, c_thresh, v_int,
                  v_max, a_cover, r_clique, r_probe, h_decomp})
    c->fallthrough();

  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].rfind("-", 0) == 0) break;
    if (!app.get_subcommand_no_throw(args[i])) {
      err << "error: unknown command '" << args[i] << "'\n";
      return 2;
    }
    break;
  }
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (check->parsed() && !h_decomp->parsed() && h_lemma.empty()) {
    err << "error: --lemma is required\n";
    return 2;
  }
  if (threads) set_thread_count(threads);

  try {
    if (count->parsed()) {
      if (c_gauss->parsed()) out << gaussian(cn, ck, cq) << '\n';
      if (c_theta->parsed()) out << theta(cn, cq) << '\n';
      if (c_disj->parsed()) out << count_disjoint(cn, cm, cj, cq) << '\n';
      if (c_size->parsed()) {
        ExampleId id = *parse_example(s_example);
        Form form = s_form == "sum" ? Form::Sum : s_form == "refined" ? Form::Refined : Form::Closed;
        if (id == ExampleId::Pencil) {
          if (form != Form::Closed) throw Error(ErrorKind::FormUnavailable, "PENCIL has only the closed form");
          out << size_pencil(sd.params()) << '\n';
        } else {
          out << size_example(id, form, sd.params()) << '\n';
        }
      }
      if (c_thresh->parsed()) {
        Threshold th = hm_threshold(kind_of(t_space), sd.params());
        out << th.value << ' ' << example_name(th.branch) << '\n';
      }
      return 0;
    }

    if (construct->parsed()) {
      ExampleId id = *parse_example(k_example);
      SpaceKind kind = id == ExampleId::Pencil ? kind_of(k_space)
                       : (id == ExampleId::P1 || id == ExampleId::P2) ? SpaceKind::PG
                                                                       : SpaceKind::AG;
      AmbientSpace space = AmbientSpace::make(kind, sd.n, sd.q);
      Params p = sd.params();
      std::optional<Anchors> anchors;
      if (!k_anchors.empty()) {
        std::ifstream in(k_anchors);
        anchors = anchors_load(in, space);
      }
      Family fam = make_example(id, space, p, anchors ? &*anchors : nullptr);
      CountValue closed = id == ExampleId::Pencil ? size_pencil(p) : size_example(id, Form::Closed, p);
      std::ofstream file(k_out);
      if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + k_out + "'");
      family_save(fam, file);
      out << "members " << fam.size() << " closed " << closed << '\n';
      if (CountValue(fam.size()) != closed) throw Failed{};
      return 0;
    }

    if (verify->parsed()) {
      Family fam = load_family(v_family);
      if (v_int->parsed()) {
        auto r = is_pairwise_t_intersecting(fam, v_t);
        if (r.ok) {
          out << "t-intersecting: yes\n";
          return 0;
        }
        out << "t-intersecting: no\nwitness " << subspace_json(r.witness->first) << ' '
            << subspace_json(r.witness->second) << '\n';
        throw Failed{};
      }
      if (!is_pairwise_t_intersecting(fam, v_t).ok) {
        out << "maximal: no (not t-intersecting)\n";
        throw Failed{};
      }
      auto r = is_maximal(fam, v_t);
      if (r.maximal) {
        out << "maximal: yes\n";
        return 0;
      }
      out << "maximal: no\nextension " << subspace_json(*r.extension) << '\n';
      throw Failed{};
    }

    if (analyze->parsed()) {
      Family fam = load_family(v_family);
      CoverReport rep = cover_analysis(fam, v_t, a_max_dim);
      out << "{\n  \"psi\": " << rep.psi << ",\n  \"found\": " << json_bool(rep.found) << ",\n  \"covers\": [";
      for (std::size_t i = 0; i < rep.covers.size(); ++i)
        out << (i ? ",\n    " : "\n    ") << subspace_json(rep.covers[i]);
      out << (rep.covers.empty() ? "]\n}\n" : "\n  ]\n}\n");
      return 0;
    }

    if (search->parsed()) {
      AmbientSpace space = AmbientSpace::make(kind_of(r_space), sd.n, sd.q);
      std::ostringstream report;
      if (r_clique->parsed()) {
        CliqueResult r = max_clique(space, sd.k, sd.t, r_budget);
        report << "{\n    \"max_size\": " << r.size << ",\n    \"optimal\": " << json_bool(r.optimal)
               << ",\n    \"histogram\": " << histogram_json({{r.size, 1}}) << ",\n    \"witness\": {\"lex_least\": "
               << json_bool(r.optimal) << ", \"t_pencil\": " << json_bool(is_t_pencil(r.witness, sd.t))
               << "},\n    \"nodes\": " << r.nodes << "\n  }";
        family_save(r.witness, out, report.str());
      } else {
        ProbeReport r = second_largest_probe(space, sd.k, sd.t, r_seeds == "pairs" ? Seeding::Pairs : Seeding::Exhaustive,
                                             r_budget);
        report << "{\n    \"max_size\": " << r.max_size << ",\n    \"optimal\": " << json_bool(!r.heuristic)
               << ",\n    \"histogram\": " << histogram_json(r.histogram) << ",\n    \"witness\": {\"count\": "
               << r.witness_count << ", \"listed\": [";
        for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
          const auto& w = r.witnesses[i];
          report << (i ? ", " : "") << "{\"in_k_plus_1_space\": " << json_bool(w.in_k_plus_1_space)
                 << ", \"matches\": " << (w.matches ? std::string("\"") + example_name(*w.matches) + "\"" : "null")
                 << '}';
        }
        report << "]},\n    \"seeds\": " << r.seeds << ",\n    \"maximal_families\": " << r.maximal_families
               << ",\n    \"pencils\": " << r.pencils << "\n  }";
        family_save(r.witnesses.empty() ? Family(space, sd.k) : r.witnesses.front().family, out, report.str());
      }
      return 0;
    }

    if (check->parsed()) {
      std::vector<Verdict> vs;
      if (h_decomp->parsed()) {
        vs = decomposition_identities(kind_of(d_space), sd.params());
      } else {
        LemmaId id = parse_lemma(h_lemma);
        GridSpec grid = h_grid.empty() ? default_grid(id) : GridSpec::parse(h_grid);
        GridResult r = run_grid(id, grid);
        err << lemma_name(id) << ": " << r.tuples << " tuples, " << r.passed << " passed, " << r.failed << " failed\n";
        vs = std::move(r.verdicts);
      }
      write_verdicts(out, vs, h_format);
      if (!all_hold(vs)) throw Failed{};
      return 0;
    }
  } catch (const Failed&) {
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace qekr::cli
