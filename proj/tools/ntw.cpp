// ntw.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an 'AS IS' BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line driver: every library operation as a subcommand over .ntw
// files. Machine-readable output goes to stdout, diagnostics to stderr.
// Exit status 0 on success, 1 on usage or validation errors, 2 when
// --strict is set and an auto-intersection-based result is incomplete.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ntwfsm/ntwfsm.hpp"

namespace {

using namespace ntwfsm;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Machine load(const std::string& path,
             std::optional<SemiringId> semiring = std::nullopt) {
  return parse(read_input(path), semiring);
}

void emit(const Machine& m) { std::cout << serialize(m); }

std::vector<std::string> read_words(const std::string& path) {
  std::istringstream in(read_input(path));
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::string join_tapes(const StringTuple& tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    out += '\t';
    for (const Symbol& s : tuple[i]) out += s;
  }
  return out;
}

JoinSpec parse_pairs(const std::vector<std::string>& pairs) {
  JoinSpec spec;
  for (const std::string& p : pairs) {
    std::size_t eq = p.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == p.size()) {
      throw Error("bad tape pair '" + p + "' (expected I=J)");
    }
    spec.pairs.emplace_back(std::stoi(p.substr(0, eq)),
                            std::stoi(p.substr(eq + 1)));
  }
  return spec;
}

int g_status = 0;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-tape weighted finite-state machine toolkit"};
  app.require_subcommand(1);

  // compile
  std::string compile_file;
  std::string compile_semiring;
  auto* compile = app.add_subcommand(
      "compile", "Parse a machine (file or '-' for stdin) and print its "
                 "canonical form");
  compile->add_option("file", compile_file, "input .ntw file")->required();
  compile->add_option("--semiring", compile_semiring,
                      "semiring when the file omits one (must agree if both "
                      "are present)");
  compile->callback([&] {
    std::optional<SemiringId> sr;
    if (!compile_semiring.empty()) sr = Semiring::by_name(compile_semiring).id();
    emit(load(compile_file, sr));
  });

  // print
  std::string print_file;
  auto* print = app.add_subcommand("print", "Reprint a machine canonically");
  print->add_option("file", print_file)->required();
  print->callback([&] { emit(load(print_file)); });

  // dot
  std::string dot_file;
  auto* dot = app.add_subcommand("dot", "Export a machine as Graphviz");
  dot->add_option("file", dot_file)->required();
  dot->callback([&] { std::cout << to_dot(load(dot_file)); });

  // two-operand rational ops
  struct Binary {
    const char* name;
    const char* help;
    Machine (*fn)(const Machine&, const Machine&);
  };
  static const Binary binaries[] = {
      {"union", "Union of two machines", union_of},
      {"concat", "Tape-wise concatenation", concat},
      {"cross", "Cross product (arities add up)", cross_product},
  };
  static std::string binary_files[3][2];
  for (std::size_t k = 0; k < 3; ++k) {
    auto* sub = app.add_subcommand(binaries[k].name, binaries[k].help);
    sub->add_option("a", binary_files[k][0])->required();
    sub->add_option("b", binary_files[k][1])->required();
    auto fn = binaries[k].fn;
    auto* left = &binary_files[k][0];
    auto* right = &binary_files[k][1];
    sub->callback([fn, left, right] { emit(fn(load(*left), load(*right))); });
  }

  // closure
  std::string closure_file;
  auto* star = app.add_subcommand("closure", "Kleene closure");
  star->add_option("file", closure_file)->required();
  star->callback([&] { emit(closure(load(closure_file))); });

  // project / coproject
  std::string project_file;
  std::vector<int> project_tapes;
  auto* proj = app.add_subcommand("project", "Keep/reorder tapes");
  proj->add_option("file", project_file)->required();
  proj->add_option("--tapes", project_tapes, "1-based tape indexes to keep")
      ->required()
      ->delimiter(',');
  proj->callback([&] { emit(project(load(project_file), project_tapes)); });

  std::string coproject_file;
  std::vector<int> coproject_tapes;
  auto* coproj = app.add_subcommand("coproject", "Drop the listed tapes");
  coproj->add_option("file", coproject_file)->required();
  coproj->add_option("--tapes", coproject_tapes,
                     "1-based tape indexes to drop")
      ->required()
      ->delimiter(',');
  coproj->callback(
      [&] { emit(coproject(load(coproject_file), coproject_tapes)); });

  // rmeps
  std::string rmeps_file;
  auto* rmeps = app.add_subcommand("rmeps",
                                   "Remove all-epsilon-labeled transitions");
  rmeps->add_option("file", rmeps_file)->required();
  rmeps->callback([&] { emit(remove_epsilon_tuples(load(rmeps_file))); });

  // autointersect
  std::string ai_file;
  int ai_tape_i = 0, ai_tape_j = 0;
  std::optional<std::size_t> ai_delta;
  bool ai_strict = false;
  auto* ai = app.add_subcommand(
      "autointersect",
      "Restrict the relation to tuples whose tapes i and j are equal");
  ai->add_option("file", ai_file)->required();
  ai->add_option("--tape-i", ai_tape_i)->required();
  ai->add_option("--tape-j", ai_tape_j)->required();
  ai->add_option("--delta-max", ai_delta, "delay cap (default: automatic)");
  ai->add_flag("--strict", ai_strict, "exit 2 if the result is incomplete");
  ai->callback([&] {
    AutoIntersectionConfig cfg;
    cfg.delta_max = ai_delta;
    AutoIntersectionResult r =
        auto_intersect(load(ai_file), ai_tape_i, ai_tape_j, cfg);
    std::cout << "# complete " << (r.complete ? "true" : "false") << "\n";
    emit(r.machine);
    if (!r.complete && ai_strict) g_status = 2;
  });

  // join
  std::string join_a, join_b;
  std::vector<std::string> join_pairs;
  bool join_strict = false;
  auto* join = app.add_subcommand(
      "join", "Join two machines on tape equality constraints");
  join->add_option("a", join_a)->required();
  join->add_option("b", join_b)->required();
  join->add_option("--pairs", join_pairs, "constraints like 2=1")
      ->required()
      ->delimiter(',');
  join->add_flag("--strict", join_strict, "exit 2 if the result is incomplete");
  join->callback([&] {
    AutoIntersectionResult r =
        join_via_sigma(load(join_a), parse_pairs(join_pairs), load(join_b));
    std::cout << "# complete " << (r.complete ? "true" : "false") << "\n";
    emit(r.machine);
    if (!r.complete && join_strict) g_status = 2;
  });

  // compose
  std::string compose_a, compose_b;
  bool compose_keep = false;
  auto* comp = app.add_subcommand("compose", "Transducer composition");
  comp->add_option("a", compose_a)->required();
  comp->add_option("b", compose_b)->required();
  comp->add_flag("--keep-intermediate", compose_keep,
                 "keep the intermediate tape (arity-3 result)");
  comp->callback(
      [&] { emit(compose(load(compose_a), load(compose_b), compose_keep)); });

  // bestpath
  std::string bestpath_file;
  auto* best = app.add_subcommand(
      "bestpath", "Print 'weight<TAB>tape1<TAB>...' for the best path");
  best->add_option("file", bestpath_file)->required();
  best->callback([&] {
    Machine m = load(bestpath_file);
    auto path = best_path(m);
    if (path) {
      std::cout << format_weight(path->weight, m.semiring())
                << join_tapes(path->tuple) << "\n";
    }
  });

  // enumerate
  std::string enum_file;
  std::size_t enum_hops = 0;
  std::size_t enum_budget = 1000000;
  auto* enumerate = app.add_subcommand(
      "enumerate", "List tuples accepted within a hop limit");
  enumerate->add_option("file", enum_file)->required();
  enumerate->add_option("--hop-limit", enum_hops)->required();
  enumerate->add_option("--budget", enum_budget, "path budget");
  enumerate->callback([&] {
    Machine m = load(enum_file);
    WeightedTupleSet tuples = enumerate_tuples(m, enum_hops, enum_budget);
    for (const auto& [tuple, w] : tuples.entries()) {
      std::cout << format_weight(w, m.semiring()) << join_tapes(tuple) << "\n";
    }
  });

  // align
  std::vector<std::string> align_strings;
  EditCostModel align_costs;
  auto* al = app.add_subcommand("align", "Optimal n-way string alignment");
  al->add_option("strings", align_strings, "two or more strings")
      ->required()
      ->expected(-2);
  al->add_option("--match", align_costs.match_cost, "match cost");
  al->add_option("--sub", align_costs.substitution_cost, "substitution cost");
  al->add_option("--ins", align_costs.insertion_cost, "insertion cost");
  al->add_option("--del", align_costs.deletion_cost, "deletion cost");
  al->callback([&] {
    Alignment a = align(align_strings, align_costs);
    std::cout << format_weight(a.weight, Semiring::tropical());
    for (const std::string& row : aligned_rows(a)) std::cout << '\t' << row;
    std::cout << "\n";
  });

  // cognates
  std::string cog_list1, cog_list2;
  std::size_t cog_top = 0;
  EditCostModel cog_costs;
  auto* cog = app.add_subcommand(
      "cognates", "Rank cross pairs of two word lists by alignment cost");
  cog->add_option("list1", cog_list1, "word list, one word per line")
      ->required();
  cog->add_option("list2", cog_list2)->required();
  cog->add_option("--top", cog_top, "how many pairs to print")->required();
  cog->add_option("--match", cog_costs.match_cost);
  cog->add_option("--sub", cog_costs.substitution_cost);
  cog->add_option("--ins", cog_costs.insertion_cost);
  cog->add_option("--del", cog_costs.deletion_cost);
  cog->callback([&] {
    auto ranked = cognate_pairs(read_words(cog_list1), read_words(cog_list2),
                                cog_costs, cog_top);
    for (const CognatePair& p : ranked) {
      std::cout << format_weight(p.weight, Semiring::tropical()) << '\t'
                << p.word1 << '\t' << p.word2 << "\n";
    }
  });

  // cascade
  std::vector<std::string> cascade_files;
  auto* casc = app.add_subcommand(
      "cascade", "Chain transducers, keeping every intermediate tape");
  casc->add_option("files", cascade_files, "two or more arity-2 machines")
      ->required()
      ->expected(-2);
  casc->callback([&] {
    std::vector<Machine> stages;
    stages.reserve(cascade_files.size());
    for (const std::string& f : cascade_files) stages.push_back(load(f));
    emit(cascade_with_intermediates(stages));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_status;
}
