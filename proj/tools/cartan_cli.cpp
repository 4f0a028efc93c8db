#include <cartan/eds.hpp>
#include <cartan/examples.hpp>
#include <cartan/manifold.hpp>
#include <cartan/parse.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cartan;

namespace {

/// Input problems: exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::string located(const std::string& path, const ParseError& err) {
  std::ostringstream out;
  out << path;
  if (err.line()) out << ":" << err.line();
  out << ": " << err.reason();
  if (err.position()) out << " (column " << err.position() + 1 << ")";
  return out.str();
}

std::vector<int> parse_flag(const std::string& text, int n) {
  std::vector<int> flag;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw InputError("");
      flag.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--flag expects a comma-separated permutation of 1.." + std::to_string(n));
    }
  }
  std::vector<int> sorted = flag;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[i] != i + 1 || static_cast<int>(sorted.size()) != n)
      throw InputError("--flag expects a comma-separated permutation of 1.." + std::to_string(n));
  if (sorted.empty()) throw InputError("--flag expects a comma-separated permutation of 1.." + std::to_string(n));
  return flag;
}

int run_eds(int n, const std::string& path, const std::string& flag_text, bool verbose) {
  if (n < 1 || n > 9) throw InputError("--dim must be between 1 and 9");
  std::optional<std::vector<int>> flag;
  if (!flag_text.empty()) flag = parse_flag(flag_text, n);
  Session s;
  FrameBundle p(s, n);
  std::ifstream in = open_file(path);
  std::vector<Form> ideal;
  try {
    ideal = parse_ideal(p, in);
  } catch (const ParseError& err) {
    throw InputError(located(path, err));
  }
  CartanReport report = p.cartan_test(ideal, flag);
  if (verbose) {
    for (const Form& f : ideal) std::cout << "generator: " << f << '\n';
    AffineBasis equations = p.equations_for_Vn(ideal);
    for (const Poly& eq : equations.elements()) std::cout << "equation: " << eq << " = 0\n";
    std::vector<int> order = flag ? *flag : p.identity_flag();
    for (int j = 0; j < n; ++j) {
      Basis<Form> v;
      for (const Form& f : ideal) {
        std::vector<Form> polar;
        p.reduced_polar_equations(polar, f, j, order);
        for (const Form& w : polar) v.insert(w);
      }
      std::cout << "polar_" << j << ":";
      if (!v.empty()) std::cout << ' ' << v;
      std::cout << '\n';
    }
  }
  std::cout << examples::format_report(report, n);
  return 0;
}

int run_dform(const std::string& path, const std::string& text) {
  std::ifstream in = open_file(path);
  FrameManifold m(1);
  try {
    m = parse_manifold(in);
  } catch (const ParseError& err) {
    throw InputError(located(path, err));
  }
  Form w;
  try {
    w = parse_form(m.dimension(), text);
  } catch (const ParseError& err) {
    throw InputError("form: " + std::string(err.reason()) + " (column " + std::to_string(err.position() + 1) + ")");
  } catch (const IndexError& err) {
    throw InputError(std::string("form: ") + err.what());
  }
  std::cout << m.d(w) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic exterior calculus on parallelizable manifolds"};
  app.require_subcommand(1);

  std::string example_name;
  auto* example = app.add_subcommand("example", "Run a built-in worked example");
  example->add_option("name", example_name, "nilpotent-torsion, su2-spinor, bilagrangian, iwasawa or g2")->required();

  int dim = 0;
  std::string ideal_file, flag_text;
  bool verbose = false;
  auto* eds = app.add_subcommand("eds", "Cartan's test for a linear EDS on the frame bundle");
  eds->add_option("--dim", dim, "Base dimension (1-9)")->required();
  eds->add_option("--ideal-file", ideal_file, "Ideal file")->required();
  eds->add_option("--flag", flag_text, "Flag order as a comma-separated permutation, e.g. 2,1,3");
  eds->add_flag("--verbose", verbose, "Print the generators, the equations for V_n and the polar spaces");

  std::string manifold_file, form_text;
  auto* dform = app.add_subcommand("dform", "Exterior derivative of a form on a manifold given by a d-table");
  dform->add_option("--manifold-file", manifold_file, "Manifold file")->required();
  dform->add_option("form", form_text, "Form, e.g. 12+34")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*example) {
      std::cout << examples::run(example_name);
      return 0;
    }
    if (*eds) return run_eds(dim, ideal_file, flag_text, verbose);
    if (*dform) return run_dform(manifold_file, form_text);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
