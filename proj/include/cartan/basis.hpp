#pragma once

#include <cartan/errors.hpp>
#include <cartan/form.hpp>
#include <cartan/poly.hpp>
#include <cartan/spinor.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

namespace cartan {

/// How an expression type decomposes into simple elements. A simple element
/// is a key; the canonical pairing makes keys orthonormal. Scalars are the
/// Gaussian rationals, so a polynomial coefficient contributes one key per
/// power product.
template <class T>
struct SimpleElements;

template <>
struct SimpleElements<Form> {
  using Key = std::pair<Monomial, PowerProduct>;
  static std::map<Key, GaussRat> expand(const Form& f) {
    std::map<Key, GaussRat> out;
    for (const auto& [m, c] : f.terms())
      for (const auto& [pp, v] : c.terms()) out.emplace(Key{m, pp}, v);
    return out;
  }
  static Form element(const Key& k, const GaussRat& c) { return Form::term(k.first, Poly::term(k.second, c)); }
};

template <>
struct SimpleElements<Poly> {
  using Key = PowerProduct;
  static std::map<Key, GaussRat> expand(const Poly& p) { return {p.terms().begin(), p.terms().end()}; }
  static Poly element(const Key& k, const GaussRat& c) { return Poly::term(k, c); }
};

template <>
struct SimpleElements<Spinor> {
  using Key = std::pair<unsigned, PowerProduct>;
  static std::map<Key, GaussRat> expand(const Spinor& s) {
    std::map<Key, GaussRat> out;
    for (const auto& [k, c] : s.terms())
      for (const auto& [pp, v] : c.terms()) out.emplace(Key{k, pp}, v);
    return out;
  }
  static Spinor element(const Key& k, const GaussRat& c) { return Poly::term(k.second, c) * Spinor::u(k.first); }
};

/// Instrumentation for the lazy setup.
struct BasisStats {
  std::uint64_t inversions = 0;        ///< setups performed (matrix inversions)
  std::uint64_t setup_multiplications = 0;  ///< field multiplications spent in setups
  std::uint64_t insert_multiplications = 0; ///< field multiplications spent reducing insertions
};

enum class InsertResult { retained, dropped, inconsistent };

namespace detail {

template <class Key>
using SparseVector = std::map<Key, GaussRat>;

/// v -= factor * w, counting multiplications.
template <class Key>
void sub_scaled(SparseVector<Key>& v, const GaussRat& factor, const SparseVector<Key>& w, std::uint64_t& mults) {
  for (const auto& [k, c] : w) {
    GaussRat delta = factor * c;
    ++mults;
    auto [it, inserted] = v.try_emplace(k, -delta);
    if (!inserted) {
      it->second -= delta;
      if (it->second.is_zero()) v.erase(it);
    }
  }
}

/// Gauss-Jordan inverse of a square matrix over the Gaussian rationals.
inline std::vector<std::vector<GaussRat>> invert(std::vector<std::vector<GaussRat>> a, std::uint64_t& mults) {
  std::size_t n = a.size();
  std::vector<std::vector<GaussRat>> inv(n, std::vector<GaussRat>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = GaussRat(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col].is_zero()) ++p;
    if (p == n) throw Error("internal: singular pairing matrix in basis setup");
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    GaussRat scale = GaussRat(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[col][j].is_zero()) a[col][j] *= scale, ++mults;
      if (!inv[col][j].is_zero()) inv[col][j] *= scale, ++mults;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      GaussRat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        if (!a[col][j].is_zero()) a[r][j] -= f * a[col][j], ++mults;
        if (!inv[col][j].is_zero()) inv[r][j] -= f * inv[col][j], ++mults;
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Ordered independent generating set. Inserted elements are kept verbatim;
/// dependent ones are dropped, so span{x_1..x_k} always equals the span of the
/// first k independent inputs. Dual basis and components are computed lazily
/// and cached until the next insertion.
template <class T>
class Basis {
 public:
  using Traits = SimpleElements<T>;
  using Key = typename Traits::Key;

  Basis() = default;
  template <class It>
  Basis(It first, It last) {
    for (; first != last; ++first) insert(*first);
  }
  Basis(std::initializer_list<T> xs) : Basis(xs.begin(), xs.end()) {}

  InsertResult insert(const T& x) {
    auto residual = reduce(Traits::expand(x), stats_.insert_multiplications);
    if (residual.empty()) return InsertResult::dropped;
    GaussRat inv = GaussRat(1) / residual.begin()->second;
    for (auto& [k, c] : residual) c *= inv;
    shadow_.push_back(std::move(residual));
    elements_.push_back(x);
    cache_.reset();
    return InsertResult::retained;
  }
  void push_back(const T& x) { insert(x); }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const T& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  const std::vector<T>& elements() const { return elements_; }

  /// True if x lies in the span of the elements.
  bool contains(const T& x) const {
    std::uint64_t ignored = 0;
    return reduce(Traits::expand(x), ignored).empty();
  }

  /// Coordinates of x with respect to x_1..x_m. Throws NotInSpan.
  std::vector<GaussRat> components(const T& x) const {
    const Cache& c = setup();
    std::vector<GaussRat> coords(c.b.empty() ? 0 : c.b.front().size());
    for (const auto& [k, v] : Traits::expand(x)) {
      auto it = c.position.find(k);
      if (it == c.position.end()) throw NotInSpan("element is not in the span of the basis");
      const auto& row = c.b[it->second];
      for (std::size_t j = 0; j < coords.size(); ++j)
        if (!row[j].is_zero()) coords[j] += v * row[j];
    }
    for (std::size_t j = elements_.size(); j < coords.size(); ++j)
      if (!coords[j].is_zero()) throw NotInSpan("element is not in the span of the basis");
    coords.resize(elements_.size());
    return coords;
  }

  /// x^1..x^m with <x^i, x_j> = delta_ij.
  const std::vector<T>& dual() const { return setup().dual; }

  const BasisStats& stats() const { return stats_; }

  friend std::ostream& operator<<(std::ostream& os, const Basis& b) {
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    return os;
  }

 private:
  struct Cache {
    std::vector<Key> simple;                  // S, in canonical order
    std::map<Key, std::size_t> position;      // index into simple
    std::vector<std::vector<GaussRat>> b;     // b[alpha][j]
    std::vector<T> dual;
  };

  detail::SparseVector<Key> reduce(detail::SparseVector<Key> v, std::uint64_t& mults) const {
    // shadow rows are semi-echelon: row r vanishes at the pivots of rows < r
    for (const auto& row : shadow_) {
      if (v.empty()) break;
      auto it = v.find(row.begin()->first);
      if (it == v.end()) continue;
      GaussRat factor = it->second;
      detail::sub_scaled(v, factor, row, mults);
    }
    return v;
  }

  const Cache& setup() const {
    if (cache_) return *cache_;
    ++stats_.inversions;
    Cache c;
    std::vector<detail::SparseVector<Key>> expanded;
    std::set<Key> keys;
    for (const T& x : elements_) {
      expanded.push_back(Traits::expand(x));
      for (const auto& [k, v] : expanded.back()) keys.insert(k);
    }
    c.simple.assign(keys.begin(), keys.end());
    for (std::size_t a = 0; a < c.simple.size(); ++a) c.position.emplace(c.simple[a], a);

    // complete x_1..x_m with the simple elements that are not shadow pivots
    std::set<Key> pivots;
    for (const auto& row : shadow_) pivots.insert(row.begin()->first);
    for (const Key& k : c.simple)
      if (!pivots.count(k)) expanded.push_back({{k, GaussRat(1)}});

    std::size_t n = c.simple.size();
    std::vector<std::vector<GaussRat>> a(n, std::vector<GaussRat>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, v] : expanded[j]) a[j][c.position.at(k)] = v;
    c.b = detail::invert(std::move(a), stats_.setup_multiplications);

    for (std::size_t k = 0; k < elements_.size(); ++k) {
      T xk{};
      for (std::size_t alpha = 0; alpha < n; ++alpha)
        if (!c.b[alpha][k].is_zero()) xk += Traits::element(c.simple[alpha], c.b[alpha][k]);
      c.dual.push_back(std::move(xk));
    }
    cache_ = std::move(c);
    return *cache_;
  }

  std::vector<T> elements_;
  std::vector<detail::SparseVector<Key>> shadow_;
  mutable std::optional<Cache> cache_;
  mutable BasisStats stats_;
};

/// Affine equations in a set of symbols: counts independent equations and
/// flags contradictions. Equations must have degree at most 1.
class AffineBasis {
 public:
  InsertResult insert(const Poly& p) {
    if (p.total_degree() > 1) throw NonLinear("affine equation expected, got " + p.str());
    Row row;
    for (const auto& [m, c] : p.terms()) {
      if (m.empty())
        row.constant = c;
      else
        row.linear.emplace(m.front().first, c);
    }
    std::uint64_t mults = 0;
    for (const Row& r : rows_) {
      if (row.linear.empty()) break;
      auto it = row.linear.find(r.linear.begin()->first);
      if (it == row.linear.end()) continue;
      GaussRat factor = it->second;
      detail::sub_scaled(row.linear, factor, r.linear, mults);
      row.constant -= factor * r.constant;
    }
    if (row.linear.empty()) {
      if (row.constant.is_zero()) return InsertResult::dropped;
      inconsistent_ = true;
      return InsertResult::inconsistent;
    }
    GaussRat inv = GaussRat(1) / row.linear.begin()->second;
    for (auto& [s, c] : row.linear) c *= inv;
    row.constant *= inv;
    rows_.push_back(std::move(row));
    elements_.push_back(p);
    return InsertResult::retained;
  }
  void push_back(const Poly& p) { insert(p); }

  /// Number of independent equations retained.
  std::size_t size() const { return elements_.size(); }
  bool inconsistent() const { return inconsistent_; }
  const std::vector<Poly>& elements() const { return elements_; }

 private:
  struct Row {
    std::map<Symbol, GaussRat> linear;
    GaussRat constant;
  };
  std::vector<Row> rows_;
  std::vector<Poly> elements_;
  bool inconsistent_ = false;
};

}  // namespace cartan
