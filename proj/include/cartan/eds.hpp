#pragma once

#include <cartan/basis.hpp>
#include <cartan/errors.hpp>
#include <cartan/form.hpp>
#include <cartan/manifold.hpp>
#include <cartan/parse.hpp>
#include <cartan/session.hpp>

#include <algorithm>
#include <istream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cartan {

struct CartanReport {
  std::vector<std::size_t> c;  ///< c_0..c_{n-1}
  std::size_t codim = 0;       ///< codimension of V_n
  bool involutive = false;
};

/// Bundle of frames over an n-manifold, presented as a parallelizable manifold
/// of dimension n(n+1) with coframe theta^i = e^i and omega_ij = e^{i*n+j},
/// related by d theta^i = sum_j theta^j ^ omega_ij. The omega are never
/// differentiated.
class FrameBundle {
 public:
  FrameBundle(Session& session, int n) : n_(check(n)), bundle_(n * (n + 1)) {
    for (int i = 1; i <= n_; ++i) {
      Form x;
      for (int j = 1; j <= n_; ++j) x += wedge(bundle_.e(j), bundle_.e(i * n_ + j));
      bundle_.declare_d(i, x);
    }
    for (int i = n_ + 1; i <= n_ * (n_ + 1); ++i)
      for (int j = 1; j <= n_; ++j) p_.push_back(session.symbol("p" + std::to_string(i) + std::to_string(j)));
  }

  int base_dimension() const { return n_; }
  const FrameManifold& bundle() const { return bundle_; }

  Form theta(int i) const {
    if (i < 1 || i > n_) throw IndexError("theta index out of range");
    return bundle_.e(i);
  }
  Form omega(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw IndexError("omega index out of range");
    return bundle_.e(i * n_ + j);
  }
  /// Grassmannian coordinate: e^i restricted to an n-plane is sum_j p_ij theta^j.
  Symbol p(int i, int j) const {
    if (i <= n_ || i > n_ * (n_ + 1) || j < 1 || j > n_) throw IndexError("p index out of range");
    return p_[static_cast<std::size_t>(i - n_ - 1) * n_ + (j - 1)];
  }

  Form d(const Form& w) const { return bundle_.d(w); }

  /// True if every monomial of every generator has exactly one omega factor.
  bool is_linear(const std::vector<Form>& ideal) const {
    for (const Form& f : ideal)
      for (const auto& [m, c] : f.terms()) {
        auto omegas = std::count_if(m.indices().begin(), m.indices().end(), [&](Generator g) { return g > n_; });
        if (omegas != 1) return false;
      }
    return true;
  }

  /// Equations on the Grassmannian cutting out V_n; their rank is codim V_n.
  AffineBasis equations_for_Vn(const std::vector<Form>& ideal) const {
    GeneratorSubstitution rules;
    for (int i = n_ + 1; i <= n_ * (n_ + 1); ++i) {
      Form ei;
      for (int j = 1; j <= n_; ++j) ei += Poly(p(i, j)) * theta(j);
      rules.emplace(Generator(i), ei);
    }
    AffineBasis out;
    for (const Form& f : ideal) {
      Form restricted = substitute_form(f, rules);
      for (const auto& [m, c] : restricted.terms()) out.insert(c);
    }
    return out;
  }

  /// Appends the 1-forms theta_{i_1} _| ... _| theta_{i_l} _| form, i_1 < ... < i_l <= j,
  /// taken modulo the thetas. `flag` lists the theta indices spanning E_1, E_2, ...
  void reduced_polar_equations(std::vector<Form>& out, const Form& form, int j, const std::vector<int>& flag) const {
    if (form.is_zero()) return;
    if (degree(form) == 1) {
      out.push_back(modulo_theta(form));
    } else if (j > 0) {
      reduced_polar_equations(out, form, j - 1, flag);
      reduced_polar_equations(out, hook(theta(flag[j - 1]), form), j - 1, flag);
    }
  }

  /// Dimension of the reduced polar space H*(E_j).
  std::size_t polar_rank(const std::vector<Form>& ideal, int j, const std::vector<int>& flag) const {
    Basis<Form> v;
    for (const Form& f : ideal) {
      std::vector<Form> polar;
      reduced_polar_equations(polar, f, j, flag);
      for (const Form& w : polar) v.insert(w);
    }
    return v.size();
  }

  /// Cartan's test along the flag E_j = span{theta_flag[0..j-1]} (identity by default).
  CartanReport cartan_test(const std::vector<Form>& ideal, std::optional<std::vector<int>> flag = std::nullopt) const {
    std::vector<int> order = flag ? *flag : identity_flag();
    check_flag(order);
    if (!is_linear(ideal)) throw NotLinear("the ideal is not linear in the connection forms");
    AffineBasis equations = equations_for_Vn(ideal);
    if (equations.inconsistent()) throw Inconsistent("the equations for V_n have no solution");
    CartanReport report;
    for (int j = 0; j < n_; ++j) report.c.push_back(polar_rank(ideal, j, order));
    report.codim = equations.size();
    report.involutive = std::accumulate(report.c.begin(), report.c.end(), std::size_t{0}) == report.codim;
    return report;
  }

  std::vector<int> identity_flag() const {
    std::vector<int> out(n_);
    std::iota(out.begin(), out.end(), 1);
    return out;
  }

  void check_flag(const std::vector<int>& flag) const {
    std::vector<int> sorted = flag;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_flag()) throw DimensionError("flag must be a permutation of 1.." + std::to_string(n_));
  }

 private:
  static int check(int n) {
    if (n < 1 || n > 9) throw DimensionError("frame bundle base dimension must be between 1 and 9");
    return n;
  }

  Form modulo_theta(const Form& f) const {
    Form out;
    for (const auto& [m, c] : f.terms())
      if (std::none_of(m.indices().begin(), m.indices().end(), [&](Generator g) { return g <= n_; })) out.add_term(m, c);
    return out;
  }

  int n_;
  FrameManifold bundle_;
  std::vector<Symbol> p_;
};

/// Reads an ideal file: one generator per line, `d: <form>` for the exterior
/// derivative of a form in the thetas, or a bare form on the bundle generators
/// 1..min(9, n(n+1)). Blank lines and `#` comments are skipped.
inline std::vector<Form> parse_ideal(const FrameBundle& bundle, std::istream& in) {
  int n = bundle.base_dimension();
  int bare_dim = std::min(9, n * (n + 1));
  std::vector<Form> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    bool derivative = line.compare(start, 2, "d:") == 0;
    std::size_t offset = derivative ? start + 2 : start;
    try {
      Form f;
      try {
        f = parse_form(derivative ? n : bare_dim, std::string_view(line).substr(offset));
      } catch (const ParseError& err) {
        throw ParseError(offset + err.position(), err.reason());
      } catch (const IndexError& err) {
        throw ParseError(offset, err.what());
      }
      out.push_back(derivative ? bundle.d(f) : f);
    } catch (const ParseError& err) {
      throw err.at_line(lineno);
    }
  }
  return out;
}

}  // namespace cartan
