#include <CLI11.hpp>

#include <iostream>

#include "nambu/cli/commands.hpp"

using namespace nambu::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Nambu-Poisson tensors, Filippov algebras and algebroids"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> inputs, fixtures;
  CommandArgs args;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "master seed for every sampled quantity");
    sub->add_option_function<std::size_t>("--trials", [&](const std::size_t& t) { config.trials = t; },
                                          "number of random trials or samples");
    sub->add_option("--degree", config.degree, "degree bound for random polynomials");
    sub->add_option("--jobs", config.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", config.format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--fixture", fixtures, "shipped fixture to load (repeatable)");
    sub->add_option("inputs", inputs, "input documents (paths or fixture names)");
  };

  std::string verb;
  auto make_verb = [&](CLI::App* group, const std::string& name, const std::string& help) {
    auto* sub = group->add_subcommand(name, help);
    add_common(sub);
    sub->callback([&verb, group, name] { verb = group->get_name() + " " + name; });
    return sub;
  };

  auto* check = app.add_subcommand("check", "run a checker")->require_subcommand(1);
  make_verb(check, "nambu", "Nambu-Poisson verdict (decomposability and involutivity)");
  make_verb(check, "filippov-linear", "fundamental identity on linear functions or structure constants");
  make_verb(check, "fi-random", "fundamental identity on seeded random polynomials");
  make_verb(check, "algebroid", "anchor, Leibniz and Filippov axioms on sampled sections");
  make_verb(check, "cocycle", "adjoint 1-cocycle condition");
  make_verb(check, "lemma1", "dichotomy for families of decomposable n-vectors");

  auto* gen = app.add_subcommand("gen", "generate a document")->require_subcommand(1);
  auto* nf = make_verb(gen, "normal-form", "linear Nambu-Poisson normal form (preset or parameters)");
  nf->add_option_function<std::string>("--family", [&](const std::string& f) { args.family = f; })
      ->check(CLI::IsMember({"A", "B1", "B2", "C"}));
  nf->add_option_function<int>("--n", [&](const int& v) { args.n = v; });
  nf->add_option_function<std::size_t>("--m", [&](const std::size_t& v) { args.m = v; });
  nf->add_option_function<std::string>("--phi", [&](const std::string& v) { args.phi = v; });
  nf->add_option("--a", args.a, "matrix entries (row-major) or the vector a")->delimiter(',');
  nf->add_option("--b", args.b, "the vector b (family B2)")->delimiter(',');
  auto* ex1 = make_verb(gen, "example1", "Lie algebra tensor wedged with k extra directions");
  ex1->add_option_function<std::size_t>("--k", [&](const std::size_t& v) { args.k = v; });
  auto* ex3 = make_verb(gen, "example3", "algebroid with bracket g*c and trivial anchor");
  ex3->add_option_function<std::string>("--g", [&](const std::string& v) { args.g = v; });
  ex3->add_option_function<std::size_t>("--m", [&](const std::size_t& v) { args.m = v; });
  auto* ex4 = make_verb(gen, "example4", "algebroid with zero frame bracket and anchor dx0^..^dx(n-1) (x) d0");
  ex4->add_option_function<int>("--n", [&](const int& v) { args.n = v; });
  ex4->add_option_function<std::size_t>("--m", [&](const std::size_t& v) { args.m = v; });

  auto* lift = app.add_subcommand("lift", "tangent lift")->require_subcommand(1);
  make_verb(lift, "tangent", "complete lift of a multivector to the tangent bundle");

  auto* bracket = app.add_subcommand("bracket", "evaluate a bracket")->require_subcommand(1);
  make_verb(bracket, "forms", "bracket of n one-forms");
  auto* nb = make_verb(bracket, "nambu", "bracket of n functions");
  nb->add_option("--f", args.functions, "polynomial literal (repeat once per slot)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& f : fixtures) args.documents.push_back(load_document(f));
    for (const auto& in : inputs) args.documents.push_back(load_document(in));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto result = run_command(verb, args, config);
  std::cout << result.output;
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  return result.exit_code;
}
