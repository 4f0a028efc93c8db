#pragma once

#include <cartan/gaussrat.hpp>
#include <cartan/session.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cartan {

/// Product of symbol powers, sorted by symbol with positive exponents.
/// The empty product is the constant monomial 1.
using PowerProduct = std::vector<std::pair<Symbol, unsigned>>;

inline PowerProduct multiply(const PowerProduct& a, const PowerProduct& b) {
  PowerProduct out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first)
      out.push_back(*i++);
    else if (j->first < i->first)
      out.push_back(*j++);
    else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

inline unsigned total_degree(const PowerProduct& m) {
  unsigned d = 0;
  for (const auto& [s, e] : m) d += e;
  return d;
}

/// Exact multivariate polynomial over the Gaussian rationals, kept in canonical
/// form: no zero coefficients, one entry per power product.
class Poly {
 public:
  using Terms = std::map<PowerProduct, GaussRat>;

  Poly() = default;
  Poly(GaussRat c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(PowerProduct{}, std::move(c));
  }
  Poly(long c) : Poly(GaussRat(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(Symbol s) { terms_.emplace(PowerProduct{{s, 1u}}, GaussRat(1)); }  // NOLINT(google-explicit-constructor)

  static Poly term(PowerProduct m, GaussRat c) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  /// The value if this polynomial is constant.
  std::optional<GaussRat> constant_value() const {
    if (terms_.empty()) return GaussRat(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
  }

  GaussRat constant_term() const {
    auto it = terms_.find(PowerProduct{});
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, cartan::total_degree(m));
    return d;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [s, e] : m) out.insert(s);
    return out;
  }

  /// Adds c*m in place.
  void add_term(const PowerProduct& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const GaussRat& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (auto c = b.constant_value()) return Poly(a) *= *c;
    if (auto c = a.constant_value()) return Poly(b) *= *c;
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
    return out;
  }
  friend Poly operator*(Poly a, const GaussRat& c) { return a *= c; }
  friend Poly operator*(const GaussRat& c, Poly a) { return a *= c; }
  friend Poly operator*(Poly a, long c) { return a *= GaussRat(c); }
  friend Poly operator*(long c, Poly a) { return a *= GaussRat(c); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string t = term_string(m, c);
      if (!first && t.front() != '-') out += "+";
      out += t;
      first = false;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  static std::string term_string(const PowerProduct& m, const GaussRat& c) {
    if (m.empty()) return c.str();
    std::string mono;
    for (const auto& [s, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += s.name();
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (c.is_one()) return mono;
    if (c == GaussRat(-1)) return "-" + mono;
    return c.str() + "*" + mono;
  }

  Terms terms_;
};

using Substitution = std::map<Symbol, Poly>;

/// Simultaneous substitution: every symbol in `rules` is replaced by its image
/// in one pass; images are not substituted again.
inline Poly substitute(const Poly& p, const Substitution& rules) {
  if (rules.empty()) return p;
  bool touched = false;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [s, e] : m)
      if (rules.count(s)) {
        touched = true;
        break;
      }
    if (touched) break;
  }
  if (!touched) return p;

  Poly out;
  for (const auto& [m, c] : p.terms()) {
    PowerProduct kept;
    Poly factor(c);
    for (const auto& [s, e] : m) {
      auto it = rules.find(s);
      if (it == rules.end()) {
        kept.emplace_back(s, e);
        continue;
      }
      for (unsigned k = 0; k < e; ++k) factor = factor * it->second;
    }
    out += factor * Poly::term(std::move(kept), GaussRat(1));
  }
  return out;
}

}  // namespace cartan
