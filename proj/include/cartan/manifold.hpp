#pragma once

#include <cartan/errors.hpp>
#include <cartan/form.hpp>
#include <cartan/parse.hpp>

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cartan {

/// A parallelizable manifold described by a global coframe e^1..e^n. The
/// vector field e_i is represented by the same element as e^i. Subclasses
/// decide how d acts on the generators.
class Manifold {
 public:
  explicit Manifold(int n) : n_(n) {
    if (n < 1) throw DimensionError("manifold dimension must be at least 1");
    if (n > 65535) throw DimensionError("manifold dimension too large");
  }
  Manifold(const Manifold&) = default;
  Manifold& operator=(const Manifold&) = default;
  virtual ~Manifold() = default;

  int dimension() const { return n_; }

  Form e(int i) const {
    check_index(i);
    return Form::e(static_cast<Generator>(i));
  }
  std::vector<Form> e() const {
    std::vector<Form> out;
    for (int i = 1; i <= n_; ++i) out.push_back(e(i));
    return out;
  }

  /// d e^i.
  virtual Form d_generator(int i) const = 0;

  /// Applies constraints the manifold has accumulated on its parameters.
  virtual Poly reduce(const Poly& p) const { return p; }
  virtual Form reduce(const Form& f) const { return f; }

  /// Exterior derivative: Leibniz rule over monomials; coefficients are constants.
  Form d(const Form& w) const {
    std::vector<std::optional<Form>> cache(n_ + 1);
    auto dgen = [&](Generator g) -> const Form& {
      if (!cache[g]) cache[g] = d_generator(g);
      return *cache[g];
    };
    Form out;
    for (const auto& [m, c] : w.terms()) {
      const auto& idx = m.indices();
      for (std::size_t j = 0; j < idx.size(); ++j) {
        check_index(idx[j]);
        const Form& dg = dgen(idx[j]);
        if (dg.is_zero()) continue;
        Form prefix = Form::term(Monomial::from_sorted({idx.begin(), idx.begin() + j}), c);
        Form suffix = Form::term(Monomial::from_sorted({idx.begin() + j + 1, idx.end()}), Poly(1));
        Form piece = wedge(wedge(prefix, dg), suffix);
        if (j % 2) piece = -piece;
        out += piece;
      }
    }
    return reduce(out);
  }

  /// Lie bracket of constant-coefficient frame combinations:
  /// <[X,Y], e^k> = -(de^k)(X,Y), evaluated as Y _| (X _| de^k).
  virtual Form lie_bracket(const Form& x, const Form& y) const {
    require_vector(x);
    require_vector(y);
    Form out;
    for (int k = 1; k <= n_; ++k) {
      Form c = hook(y, hook(x, d_generator(k)));
      if (!c.is_zero()) out -= wedge(c, e(k));
    }
    return reduce(out);
  }

  /// Cartan formula L_X w = X _| dw + d(X _| w).
  Form lie_derivative(const Form& x, const Form& w) const {
    require_vector(x);
    return reduce(hook(x, d(w)) + d(hook(x, w)));
  }

 protected:
  void check_index(int i) const {
    if (i < 1 || i > n_) throw IndexError("generator e" + std::to_string(i) + " is not in a frame of dimension " + std::to_string(n_));
  }
  static void require_vector(const Form& x) {
    if (!x.is_zero() && degree(x) != 1) throw DegreeError("expected a degree-1 combination of frame fields");
  }

 private:
  int n_;
};

/// Manifold whose exterior derivative is given by a table de^i = 2-form.
class FrameManifold : public Manifold {
 public:
  explicit FrameManifold(int n) : Manifold(n), table_(n + 1) {}

  void declare_d(int i, const Form& value) {
    check_index(i);
    if (table_[i]) throw Redeclaration("d e" + std::to_string(i) + " is already declared");
    if (!value.is_zero() && degree(value) != 2) throw DegreeError("d e" + std::to_string(i) + " must be a 2-form");
    if (value.max_generator() > dimension()) throw IndexError("d e" + std::to_string(i) + " uses a generator outside the frame");
    table_[i] = value;
  }

  bool has_d(int i) const {
    check_index(i);
    return table_[i].has_value();
  }

  /// True when every generator has a declared derivative.
  bool complete() const {
    for (int i = 1; i <= dimension(); ++i)
      if (!table_[i]) return false;
    return true;
  }

  Form d_generator(int i) const override {
    check_index(i);
    if (!table_[i]) throw MissingDeclaration("d e" + std::to_string(i) + " has not been declared");
    return *table_[i];
  }

 private:
  std::vector<std::optional<Form>> table_;
};

/// Reads the manifold file format:
///
///     # comment
///     dim 6
///     d 5 = 13+42
///
/// Generators without a `d` line stay undeclared. Errors are ParseError tagged with the line.
inline FrameManifold parse_manifold(std::istream& in) {
  std::optional<FrameManifold> m;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    try {
      if (key == "dim") {
        if (m) throw ParseError(0, "dimension declared twice");
        long n = 0;
        std::string extra;
        if (!(words >> n) || (words >> extra)) throw ParseError(0, "expected 'dim <n>'");
        if (n < 1 || n > 9) throw ParseError(0, "dimension must be between 1 and 9");
        m.emplace(static_cast<int>(n));
      } else if (key == "d") {
        if (!m) throw ParseError(0, "'dim' must come first");
        long i = 0;
        std::string eq;
        if (!(words >> i) || !(words >> eq) || eq != "=") throw ParseError(0, "expected 'd <i> = <form>'");
        if (i < 1 || i > m->dimension()) throw ParseError(0, "generator index out of range");
        std::string rest;
        std::getline(words, rest);
        std::size_t offset = line.size() - rest.size();
        Form value;
        try {
          value = parse_form(m->dimension(), rest);
        } catch (const ParseError& err) {
          throw ParseError(offset + err.position(), err.reason());
        } catch (const IndexError& err) {
          throw ParseError(offset, err.what());
        }
        try {
          m->declare_d(static_cast<int>(i), value);
        } catch (const Error& err) {
          throw ParseError(0, err.what());
        }
      } else {
        throw ParseError(0, "unknown directive '" + key + "'");
      }
    } catch (const ParseError& err) {
      throw err.at_line(lineno);
    }
  }
  if (!m) throw ParseError(0, "missing 'dim' line");
  return std::move(*m);
}

}  // namespace cartan
