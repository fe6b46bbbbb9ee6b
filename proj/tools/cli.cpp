#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gridclass/analysis.hpp"
#include "gridclass/oracle.hpp"
#include "gridclass/serialize.hpp"
#include "json.hpp"

namespace gridclass::cli {

namespace {

struct Config {
  std::string matrix_inline;
  std::string matrix_file;
  bool json = false;
  std::size_t max_states = 0;
  std::size_t max_bdd_nodes = 0;
  std::size_t max_formula_nodes = 0;
  double max_seconds = 0;
  std::uint64_t seed = 1;

  std::string permutation;
  std::optional<std::size_t> max_length;
  std::string extension_matrix;
  std::string alternation_matrix;
  std::size_t sanity_length = 5;
  bool gridded = false;
  bool include_empty = false;
  bool simple = false;
  bool sum_indec = false;
  bool skew_indec = false;
  std::string avoid;
  std::string sentence_file;
  std::size_t count_length = 0;
  std::size_t min_length = 0;
  std::size_t oracle_max_length = 6;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A path to a matrix file, or inline text.
GridMatrix matrix_argument(const std::string& value) {
  if (std::filesystem::is_regular_file(value)) return parse_matrix_text(read_file(value));
  return parse_matrix_inline(value);
}

GridMatrix input_matrix(const Config& c) {
  if (!c.matrix_file.empty()) return parse_matrix_text(read_file(c.matrix_file));
  if (c.matrix_inline.empty()) throw InputError("no matrix given (use -m or --matrix-file)");
  return parse_matrix_inline(c.matrix_inline);
}

Budget budget_of(const Config& c) {
  Budget b = Budget::from_environment();
  if (c.max_states) b.max_states = c.max_states;
  if (c.max_bdd_nodes) b.max_bdd_nodes = c.max_bdd_nodes;
  if (c.max_formula_nodes) b.max_formula_nodes = c.max_formula_nodes;
  if (c.max_seconds > 0) b.max_seconds = c.max_seconds;
  return b;
}

std::optional<analysis::SubclassSpec> spec_of(const Config& c) {
  const int chosen = c.simple + c.sum_indec + c.skew_indec + !c.avoid.empty() + !c.sentence_file.empty();
  if (chosen > 1) throw InputError("choose at most one subclass option");
  if (c.simple) return analysis::SubclassSpec::builtin(analysis::Builtin::simple);
  if (c.sum_indec) return analysis::SubclassSpec::builtin(analysis::Builtin::sum_indecomposable);
  if (c.skew_indec) return analysis::SubclassSpec::builtin(analysis::Builtin::skew_indecomposable);
  if (!c.avoid.empty()) return analysis::SubclassSpec::avoiding(parse_permutation_list(c.avoid));
  if (!c.sentence_file.empty()) return analysis::SubclassSpec::sentence(mso::parse_formula(read_file(c.sentence_file)));
  return std::nullopt;
}

std::string joined(const std::vector<BigInt>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ", ") + x.str();
  return out;
}

int print_basis(const analysis::BasisResult& r, const Config& c, std::ostream& out) {
  if (c.json) {
    out << to_json(r) << "\n";
  } else {
    std::string line;
    for (const auto& p : r.elements) line += (line.empty() ? "" : ", ") + p.to_compact_string();
    out << (line.empty() ? "(none)" : line) << "\n";
    out << "mode: "
        << (r.mode == analysis::BasisMode::certified_complete ? std::string("certified-complete")
                                                              : "bounded-up-to-" + std::to_string(r.length))
        << "\n";
    if (r.certificate) {
      const auto& cert = *r.certificate;
      out << "certificate: " << cert.sentence << " over " << cert.letters << " letters, " << cert.states
          << " states, universal=" << (cert.universal ? "true" : "false") << "\n";
      if (cert.extension_validated_only)
        out << "note: the extension matrix was checked for one-point extensions up to length " << c.sanity_length
            << " (necessary, not sufficient)\n";
    }
    if (r.caveat) out << "note: completeness relies on the default alternation matrix\n";
    if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << "\n";
  }
  return r.budget_exhausted ? 2 : 0;
}

int dispatch(const std::string& command, const Config& c, std::ostream& out) {
  const GridMatrix m = input_matrix(c);
  const SignedGridMatrix s = refine_to_pmm(m);
  const Budget budget = budget_of(c);
  std::optional<GridMatrix> extension;
  if (!c.extension_matrix.empty()) extension = matrix_argument(c.extension_matrix);

  if (command == "member") {
    const Permutation p = parse_permutation(c.permutation);
    const auto r = analysis::membership(p, s);
    if (c.json) {
      out << to_json(p, r) << "\n";
    } else {
      out << (r.member ? "true" : "false") << "\n";
      if (r.witness) {
        out << "cells:";
        for (auto cell : r.witness->cell_of) out << " " << cell + 1;
        out << "\n";
      }
    }
    return 0;
  }
  if (command == "basis") {
    analysis::BasisOptions o;
    o.extension_matrix = extension;
    o.max_length = c.max_length;
    o.sanity_length = c.sanity_length;
    o.budget = budget;
    return print_basis(analysis::compute_basis(s, o), c, out);
  }
  if (command == "bound") {
    analysis::BoundOptions o;
    o.extension_matrix = extension;
    o.sanity_length = c.sanity_length;
    o.budget = budget;
    const auto r = analysis::basis_length_bound(s, o);
    const bool finite = r.language.kind == automata::LanguageLength::Kind::finite;
    if (c.json) {
      nlohmann::ordered_json j;
      j["bound"] = r.bound;
      j["states"] = r.states;
      j["finite"] = finite;
      out << j.dump(2) << "\n";
    } else {
      out << r.bound << "\n";
      out << "states: " << r.states << ", language " << (finite ? "finite" : "not finite") << "\n";
    }
    return 0;
  }
  if (command == "gf") {
    analysis::GFOptions o;
    o.gridded = c.gridded;
    o.include_empty = c.include_empty;
    o.budget = budget;
    const auto r = analysis::generating_function(s, spec_of(c), o);
    if (c.json)
      out << to_json(r) << "\n";
    else
      out << r.gf.to_string() << "\nseries: " << joined(r.series) << "\n";
    return 0;
  }
  if (command == "count") {
    const auto a = analysis::counting_automaton(s, spec_of(c), c.gridded, budget);
    const auto counts = automata::count_sequence(a, c.count_length);
    if (c.json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& x : counts) j.push_back(x.str());
      out << j.dump() << "\n";
    } else {
      for (std::size_t n = 0; n < counts.size(); ++n) out << n << ": " << counts[n].str() << "\n";
    }
    return 0;
  }
  if (command == "subclass-basis") {
    const auto spec = spec_of(c);
    if (!spec) throw InputError("subclass-basis needs a subclass option such as --avoid");
    analysis::SubclassOptions o;
    o.extension_matrix = extension;
    o.max_length = c.max_length;
    o.sanity_length = c.sanity_length;
    o.closure.seed = c.seed;
    o.budget = budget;
    return print_basis(analysis::subclass_basis(s, *spec, o), c, out);
  }
  if (command == "sc-basis") {
    analysis::ClosureOptions o;
    o.extension_matrix = extension;
    if (!c.alternation_matrix.empty()) o.alternation_matrix = matrix_argument(c.alternation_matrix);
    o.max_length = c.max_length;
    o.sanity_length = c.sanity_length;
    o.budget = budget;
    return print_basis(analysis::substitution_closure_basis(s, o), c, out);
  }
  if (command == "oracle") {
    out << oracle::to_json(oracle::make_report(s, c.min_length, c.oracle_max_length)) << "\n";
    return 0;
  }
  throw InputError("unknown command " + command);
}

void common_options(CLI::App* sub, Config& c) {
  sub->add_option("-m,--matrix", c.matrix_inline, "matrix, rows top first separated by '/'");
  sub->add_option("--matrix-file", c.matrix_file, "matrix file");
  sub->add_flag("--json", c.json, "machine-readable output");
  sub->add_option("--max-states", c.max_states, "state cap per automaton");
  sub->add_option("--max-bdd-nodes", c.max_bdd_nodes, "decision diagram node cap");
  sub->add_option("--max-formula-nodes", c.max_formula_nodes, "cap on translated formula size");
  sub->add_option("--max-seconds", c.max_seconds, "wall-clock cap per compilation");
}

void subclass_options(CLI::App* sub, Config& c) {
  sub->add_flag("--simple", c.simple, "simple members");
  sub->add_flag("--sum-indec", c.sum_indec, "sum-indecomposable members");
  sub->add_flag("--skew-indec", c.skew_indec, "skew-indecomposable members");
  sub->add_option("--avoid", c.avoid, "members avoiding these patterns, e.g. \"132; 4321\"");
  sub->add_option("--sentence", c.sentence_file, "file holding a sentence over lt1/lt2");
}

void extension_options(CLI::App* sub, Config& c) {
  sub->add_option("--extension-matrix", c.extension_matrix, "extension matrix (file or inline)");
  sub->add_option("--sanity-length", c.sanity_length, "length checked for a supplied extension matrix");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric grid classes: membership, bases and generating functions", "gridclass"};
  app.require_subcommand(1);
  Config c;

  auto* member = app.add_subcommand("member", "is PERM in the class?");
  common_options(member, c);
  member->add_option("permutation", c.permutation, "one-line notation, e.g. \"2 4 1 3\"")->required();

  auto* basis = app.add_subcommand("basis", "basis of the class");
  common_options(basis, c);
  extension_options(basis, c);
  basis->add_option("--max-length", c.max_length, "scan up to this length without certifying");

  auto* bound = app.add_subcommand("bound", "upper bound on basis element lengths");
  common_options(bound, c);
  extension_options(bound, c);

  auto* gf = app.add_subcommand("gf", "generating function");
  common_options(gf, c);
  subclass_options(gf, c);
  gf->add_flag("--gridded", c.gridded, "count gridded permutations");
  gf->add_flag("--include-empty", c.include_empty, "count the empty permutation");

  auto* subclass = app.add_subcommand("subclass-basis", "basis of a pattern-closed subclass");
  common_options(subclass, c);
  subclass_options(subclass, c);
  extension_options(subclass, c);
  subclass->add_option("--seed", c.seed, "seed for the pattern-closure sampling");
  subclass->add_option("--max-length", c.max_length, "scan up to this length without certifying");

  auto* sc = app.add_subcommand("sc-basis", "basis of the substitution closure");
  common_options(sc, c);
  extension_options(sc, c);
  sc->add_option("--alternation-matrix", c.alternation_matrix, "alternation matrix (file or inline)");
  sc->add_option("--max-length", c.max_length, "scan up to this length without certifying");

  auto* count = app.add_subcommand("count", "members of each length up to N");
  common_options(count, c);
  subclass_options(count, c);
  count->add_option("N", c.count_length, "largest length")->required();
  count->add_flag("--gridded", c.gridded, "count gridded permutations");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference report (JSON)");
  common_options(oracle_cmd, c);
  oracle_cmd->add_option("--min-length", c.min_length, "shortest length reported");
  oracle_cmd->add_option("--max-length", c.oracle_max_length, "longest length reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  try {
    return dispatch(app.get_subcommands().front()->get_name(), c, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gridclass::cli
