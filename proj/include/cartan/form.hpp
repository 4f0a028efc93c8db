#pragma once

#include <cartan/errors.hpp>
#include <cartan/poly.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cartan {

/// 1-based index of a coframe generator e^i.
using Generator = std::uint16_t;

/// Wedge product of distinct generators in strictly increasing order.
/// The empty monomial is the scalar 1.
class Monomial {
 public:
  Monomial() = default;

  /// Sorts `factors`; returns the permutation sign with the monomial, or
  /// nullopt when a generator repeats (the product vanishes).
  static std::optional<std::pair<int, Monomial>> normalize(std::vector<Generator> factors) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < factors.size(); ++i)
      for (std::size_t j = i; j > 0 && factors[j - 1] >= factors[j]; --j) {
        if (factors[j - 1] == factors[j]) return std::nullopt;
        std::swap(factors[j - 1], factors[j]);
        sign = -sign;
      }
    Monomial m;
    m.indices_ = std::move(factors);
    return std::make_pair(sign, std::move(m));
  }

  /// `sorted` must already be strictly increasing.
  static Monomial from_sorted(std::vector<Generator> sorted) {
    Monomial m;
    m.indices_ = std::move(sorted);
    return m;
  }

  static Monomial generator(Generator g) {
    Monomial m;
    m.indices_.push_back(g);
    return m;
  }

  const std::vector<Generator>& indices() const { return indices_; }
  int degree() const { return static_cast<int>(indices_.size()); }
  bool contains(Generator g) const { return std::binary_search(indices_.begin(), indices_.end(), g); }

  /// Sign and product of two monomials, nullopt if they share a generator.
  friend std::optional<std::pair<int, Monomial>> operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.indices_.reserve(a.indices_.size() + b.indices_.size());
    // sign = parity of pairs (x in a, y in b) with x > y
    int inversions = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.indices_.size() && j < b.indices_.size()) {
      if (a.indices_[i] == b.indices_[j]) return std::nullopt;
      if (a.indices_[i] < b.indices_[j]) {
        m.indices_.push_back(a.indices_[i++]);
      } else {
        inversions += static_cast<int>(a.indices_.size() - i);
        m.indices_.push_back(b.indices_[j++]);
      }
    }
    m.indices_.insert(m.indices_.end(), a.indices_.begin() + i, a.indices_.end());
    m.indices_.insert(m.indices_.end(), b.indices_.begin() + j, b.indices_.end());
    return std::make_pair(inversions % 2 ? -1 : 1, std::move(m));
  }

  /// "e12", or "e(1,10)" once an index needs two digits. Empty for the scalar monomial.
  std::string str() const {
    if (indices_.empty()) return "";
    bool single = std::all_of(indices_.begin(), indices_.end(), [](Generator g) { return g <= 9; });
    std::string out = single ? "e" : "e(";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (!single && k > 0) out += ",";
      out += std::to_string(indices_[k]);
    }
    if (!single) out += ")";
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.indices_ <=> b.indices_; }

 private:
  std::vector<Generator> indices_;
};

/// Element of the exterior algebra over the coframe generators with
/// polynomial coefficients, in canonical form (no zero coefficients).
class Form {
 public:
  using Terms = std::map<Monomial, Poly>;

  Form() = default;
  Form(Poly scalar) {  // NOLINT(google-explicit-constructor)
    if (!scalar.is_zero()) terms_.emplace(Monomial{}, std::move(scalar));
  }
  Form(GaussRat c) : Form(Poly(std::move(c))) {}  // NOLINT(google-explicit-constructor)
  Form(long c) : Form(Poly(c)) {}                  // NOLINT(google-explicit-constructor)
  Form(Symbol s) : Form(Poly(s)) {}                // NOLINT(google-explicit-constructor)

  /// The generator e^i.
  static Form e(Generator i) { return term(Monomial::generator(i), Poly(1)); }

  static Form term(Monomial m, Poly c) {
    Form f;
    if (!c.is_zero()) f.terms_.emplace(std::move(m), std::move(c));
    return f;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a monomial (zero if absent).
  Poly coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Poly() : it->second;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_) {
      auto s = c.symbols();
      out.insert(s.begin(), s.end());
    }
    return out;
  }

  /// Largest generator index appearing, 0 for scalars.
  Generator max_generator() const {
    Generator g = 0;
    for (const auto& [m, c] : terms_)
      if (!m.indices().empty()) g = std::max(g, m.indices().back());
    return g;
  }

  void add_term(const Monomial& m, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Form& operator+=(const Form& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Form& operator*=(const Poly& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * c;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Form operator*(Form a, const Poly& c) { return a *= c; }
  friend Form operator*(const Poly& c, Form a) { return a *= c; }
  friend Form operator*(Form a, const GaussRat& c) { return a *= Poly(c); }
  friend Form operator*(const GaussRat& c, Form a) { return a *= Poly(c); }
  friend Form operator*(Form a, long c) { return a *= Poly(c); }
  friend Form operator*(long c, Form a) { return a *= Poly(c); }

  friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Exterior product; graded anticommutative and bilinear over Poly.
inline Form wedge(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = ma * mb;
      if (!prod) continue;
      Poly c = ca * cb;
      if (prod->first < 0) c = -c;
      out.add_term(prod->second, c);
    }
  return out;
}

/// Common monomial length of a homogeneous form; 0 for scalars and for zero.
inline int degree(const Form& f) {
  if (f.is_zero()) return 0;
  int d = f.terms().begin()->first.degree();
  for (const auto& [m, c] : f.terms())
    if (m.degree() != d) throw MixedDegree("form is not homogeneous");
  return d;
}

/// All (monomial, coefficient) pairs in canonical monomial order.
inline std::vector<std::pair<Monomial, Poly>> coefficients(const Form& f) {
  return {f.terms().begin(), f.terms().end()};
}

/// Canonical bilinear pairing: generator monomials are orthonormal.
inline Poly pairing(const Form& a, const Form& b) {
  const Form& small = a.terms().size() <= b.terms().size() ? a : b;
  const Form& large = &small == &a ? b : a;
  Poly out;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it != large.terms().end()) out += c * it->second;
  }
  return out;
}

/// Interior product of a degree-1 element (read as a vector field through the
/// pairing) into a form. Antiderivation of degree -1.
inline Form hook(const Form& v, const Form& w) {
  if (!v.is_zero() && degree(v) != 1) throw DegreeError("hook: first argument must have degree 1");
  Form out;
  for (const auto& [mv, cv] : v.terms()) {
    Generator g = mv.indices().front();
    for (const auto& [mw, cw] : w.terms()) {
      const auto& idx = mw.indices();
      auto pos = std::lower_bound(idx.begin(), idx.end(), g);
      if (pos == idx.end() || *pos != g) continue;
      std::vector<Generator> rest(idx.begin(), pos);
      rest.insert(rest.end(), pos + 1, idx.end());
      Poly c = cv * cw;
      if ((pos - idx.begin()) % 2) c = -c;
      out.add_term(Monomial::from_sorted(std::move(rest)), c);
    }
  }
  return out;
}

using GeneratorSubstitution = std::map<Generator, Form>;

/// Simultaneously replaces generators by 1-forms (or zero) inside every
/// monomial, re-expanding the wedge products.
inline Form substitute_form(const Form& f, const GeneratorSubstitution& rules) {
  for (const auto& [g, image] : rules)
    if (!image.is_zero() && degree(image) != 1)
      throw DegreeError("substitute_form: image of e" + std::to_string(g) + " must have degree 1 or be zero");
  Form out;
  for (const auto& [m, c] : f.terms()) {
    bool hit = std::any_of(m.indices().begin(), m.indices().end(), [&](Generator g) { return rules.count(g) > 0; });
    if (!hit) {
      out.add_term(m, c);
      continue;
    }
    Form product(c);
    for (Generator g : m.indices()) {
      auto it = rules.find(g);
      product = wedge(product, it == rules.end() ? Form::e(g) : it->second);
      if (product.is_zero()) break;
    }
    out += product;
  }
  return out;
}

/// Substitution of symbols inside the coefficients.
inline Form substitute(const Form& f, const Substitution& rules) {
  if (rules.empty()) return f;
  Form out;
  for (const auto& [m, c] : f.terms()) out.add_term(m, substitute(c, rules));
  return out;
}

/// Deterministic text: "-e12", "1/4*e23", "(p1+p2)*e12", "0".
inline std::string print_form(const Form& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string t;
    if (m.degree() == 0) {
      t = c.str();
      if (c.terms().size() > 1 && !first) t = "(" + t + ")";
    } else if (auto v = c.constant_value(); v && v->is_real()) {
      if (v->is_one())
        t = m.str();
      else if (*v == GaussRat(-1))
        t = "-" + m.str();
      else
        t = v->str() + "*" + m.str();
    } else if (auto v2 = c.constant_value()) {
      t = v2->str() + "*" + m.str();
    } else {
      t = "(" + c.str() + ")*" + m.str();
    }
    if (!first && t.front() != '-') out += "+";
    out += t;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Form& f) { return os << print_form(f); }

}  // namespace cartan
