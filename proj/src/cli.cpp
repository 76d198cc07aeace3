// Copyright 2026 The soas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "soas/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "soas/languages.hpp"
#include "soas/reduction.hpp"
#include "soas/syntax.hpp"
#include "soas/typecheck.hpp"
#include "soas/unification.hpp"

namespace soas {

namespace {

struct Options {
  std::string lang = "stlc";
  std::size_t fuel = SearchConfig{}.fuel;
  std::size_t guess_fuel = SearchConfig{}.guess_fuel;
  std::size_t reduce_fuel = kDefaultReduceFuel;
  std::string output = "pretty";

  SearchConfig search() const {
    SearchConfig cfg;
    cfg.fuel = fuel;
    cfg.guess_fuel = guess_fuel;
    cfg.reduce_fuel = reduce_fuel;
    return cfg;
  }
  bool ast() const { return output == "ast"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open " + path);
    buf << file.rdbuf();
  }
  return buf.str();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

int do_reduce(const Options& opt, const Language& lang, const std::string& src,
              std::ostream& out) {
  Term t = parse_term(src, lang);
  Term r = reduce(lang.reducer(), t, opt.reduce_fuel);
  out << (opt.ast() ? print_ast(r) : print_term(r)) << "\n";
  return kExitOk;
}

int do_unify(const Options& opt, const Language& lang, const std::string& path,
             std::istream& in, std::ostream& out, std::ostream& err) {
  std::istringstream text(read_input(path, in));
  std::vector<Constraint> problem;
  std::string line;
  std::size_t number = 0;
  while (std::getline(text, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      problem.push_back(parse_constraint(line, lang));
    } catch (const UnknownConstruct& e) {
      throw UnknownConstruct(number, e.column(), e.message());
    } catch (const SyntaxError& e) {
      throw SyntaxError(number, e.column(), e.message());
    }
  }

  std::vector<std::string> order;
  for (const auto& c : problem) {
    collect_metas(c.lhs, order);
    collect_metas(c.rhs, order);
  }

  UnifyResult result = unify(lang.theory, problem, opt.search());
  if (const auto* sol = std::get_if<Solution>(&result)) {
    for (const auto& id : order) {
      const MetaAbs* abs = sol->substs.find(id);
      if (!abs) continue;
      if (opt.ast()) {
        out << "?" << id << " " << abs->arity << " := " << print_ast(abs->body) << "\n";
      } else {
        out << print_meta_entry(id, *abs) << "\n";
      }
    }
    for (const auto& c : sol->residual) {
      if (opt.ast()) {
        out << "forall " << c.binders << ". " << print_ast(c.lhs) << " =?= "
            << print_ast(c.rhs) << "\n";
      } else {
        out << print_constraint(c) << "\n";
      }
    }
    return kExitOk;
  }
  if (const auto* fail = std::get_if<Failure>(&result)) {
    err << "error: no solution (" << fail->reason << ")\n"
        << "  at constraint: " << print_constraint(fail->culprit) << "\n";
    return kExitFailure;
  }
  err << "undetermined: " << std::get<Undetermined>(result).reason << "\n";
  return kExitUndetermined;
}

// Renames metavariables in order of appearance: the type first.
void print_inferred(const Options& opt, const Inferred& r, std::ostream& out) {
  std::vector<std::string> order;
  if (!r.type.is_universe()) collect_metas(r.type.type(), order);
  collect_metas(r.term, order);
  for (const auto& c : r.info.constraints) {
    collect_metas(c.lhs, order);
    collect_metas(c.rhs, order);
  }
  const auto names = canonical_names(order);
  Term term = rename_metas(r.term, names);
  if (opt.ast()) {
    out << print_ast(term) << "\n";
  } else {
    out << print_typed(term) << "\n";
  }
  for (const auto& c : r.info.constraints) {
    Constraint renamed{c.binders, rename_metas(c.lhs, names), rename_metas(c.rhs, names)};
    out << "where " << print_constraint(renamed) << "\n";
  }
}

const TypeSystem& typing_of(const Language& lang) {
  if (!lang.typing) {
    throw UsageError("language " + lang.name + " has no type system");
  }
  return *lang.typing;
}

int type_error(const TypeError& e, std::ostream& err) {
  err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
  if (e.constraint()) {
    err << "  at constraint: " << print_constraint(*e.constraint()) << "\n";
  }
  if (!e.offending().absent()) {
    std::vector<std::string> scope;
    for (std::size_t i = 1; i <= e.level(); ++i) scope.push_back("v" + std::to_string(i));
    err << "  in term: " << print_term(e.offending(), scope) << "\n";
  }
  return e.kind() == TypeErrorKind::FuelExhausted ? kExitUndetermined
                                                  : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Substitution, reduction, unification and type inference"};
  app.name("soas");
  app.require_subcommand(1);
  app.add_option("--lang", opt.lang, "Object language")
      ->check(CLI::IsMember({"ulc", "stlc", "mltt"}));
  app.add_option("--fuel", opt.fuel, "Candidate budget per unification")
      ->check(CLI::PositiveNumber);
  app.add_option("--guess-fuel", opt.guess_fuel,
                 "Structural guesses per simplification")
      ->check(CLI::PositiveNumber);
  app.add_option("--reduce-fuel", opt.reduce_fuel, "Reduction steps per call")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", opt.output, "Output format")
      ->check(CLI::IsMember({"pretty", "ast"}));

  std::vector<std::string> reduce_args;
  std::string unify_path;
  std::vector<std::string> infer_args;
  std::vector<std::string> check_args;
  auto* reduce_cmd = app.add_subcommand("reduce", "Weak head normal form");
  reduce_cmd->add_option("expr", reduce_args, "Term")->required();
  auto* unify_cmd = app.add_subcommand("unify", "Preunify a constraint file");
  unify_cmd->add_option("file", unify_path, "Constraint file, or - for stdin")
      ->required();
  auto* infer_cmd = app.add_subcommand("infer", "Infer a type");
  infer_cmd->add_option("expr", infer_args, "Term")->required();
  auto* check_cmd = app.add_subcommand("check", "Check a term against a type");
  check_cmd->add_option("args", check_args, "<expr> [:] <type>")->required();
  for (auto* sub : {reduce_cmd, unify_cmd, infer_cmd, check_cmd}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Language& lang = *find_language(opt.lang);
  try {
    if (*reduce_cmd) return do_reduce(opt, lang, join(reduce_args), out);
    if (*unify_cmd) return do_unify(opt, lang, unify_path, in, out, err);
    if (*infer_cmd) {
      const TypeSystem& ts = typing_of(lang);
      Term t = parse_term(join(infer_args), lang);
      print_inferred(opt, infer_type(ts, t, opt.search()), out);
      return kExitOk;
    }
    const TypeSystem& ts = typing_of(lang);
    std::vector<std::string> parts = check_args;
    if (parts.size() == 3 && parts[1] == ":") parts.erase(parts.begin() + 1);
    if (parts.size() != 2) {
      throw UsageError("check expects <expr> : <type>");
    }
    Term term = parse_term(parts[0], lang);
    Term type = parse_term(parts[1], lang);
    print_inferred(opt, check_type(ts, term, type, opt.search()), out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TypeError& e) {
    return type_error(e, err);
  } catch (const FuelExhausted& e) {
    err << "undetermined: " << e.what() << "\n";
    return kExitUndetermined;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace soas
