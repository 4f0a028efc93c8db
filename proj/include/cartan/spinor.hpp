#pragma once

#include <cartan/errors.hpp>
#include <cartan/form.hpp>

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cartan {

/// Dense square matrix over the Gaussian rationals.
class GaussMatrix {
 public:
  GaussMatrix() = default;
  explicit GaussMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static GaussMatrix identity(std::size_t n) {
    GaussMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRat(1);
    return m;
  }

  std::size_t size() const { return n_; }
  GaussRat& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const GaussRat& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  friend GaussMatrix operator*(const GaussMatrix& a, const GaussMatrix& b) {
    GaussMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }
  friend GaussMatrix operator+(GaussMatrix a, const GaussMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend GaussMatrix operator*(GaussRat c, GaussMatrix a) {
    for (auto& v : a.data_) v *= c;
    return a;
  }
  friend bool operator==(const GaussMatrix&, const GaussMatrix&) = default;

  /// Kronecker product a (x) b.
  friend GaussMatrix kron(const GaussMatrix& a, const GaussMatrix& b) {
    GaussMatrix out(a.n_ * b.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.n_; ++k)
          for (std::size_t l = 0; l < b.n_; ++l) out(i * b.n_ + k, j * b.n_ + l) = a(i, j) * b(k, l);
      }
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<GaussRat> data_;
};

/// Matrices of Clifford multiplication by e_1..e_n on the complex spinor
/// module of dimension 2^m, m = floor(n/2). Satisfies
/// gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij.
///
/// Built by the usual doubling: on the r-th tensor factor, e_{2r+1} and
/// e_{2r+2} act by iX and iY with Z on the earlier factors. Tensor factor r is
/// bit r of the spinor index k. For odd n the last generator acts by a
/// multiple of gamma_1...gamma_{2m}. `signs` flips individual generators; the
/// default is the convention under which u_0 is the spinor fixed by the
/// anti-self-dual half of so(4) for n = 4 (frozen in the spinor tests).
class CliffordTable {
 public:
  explicit CliffordTable(int n) : CliffordTable(n, default_signs(n)) {}

  CliffordTable(int n, const std::vector<int>& signs) : n_(n) {
    if (n < 1) throw DimensionError("Clifford table needs n >= 1");
    if (static_cast<int>(signs.size()) != n) throw DimensionError("one sign per generator expected");
    int m = n / 2;
    std::size_t dim = std::size_t{1} << m;

    GaussMatrix one = GaussMatrix::identity(2);
    GaussMatrix z(2), ix(2), iy(2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    ix(0, 1) = GaussRat::i();
    ix(1, 0) = GaussRat::i();
    iy(0, 1) = GaussRat(1);  // i * [[0,-i],[i,0]] = [[0,1],[-1,0]]
    iy(1, 0) = GaussRat(-1);

    // factor r acts on bit r; kron puts its first argument on the high bits
    auto build = [&](int r, const GaussMatrix& middle) {
      GaussMatrix out = GaussMatrix::identity(1);
      for (int f = m - 1; f >= 0; --f) out = kron(out, f < r ? z : (f == r ? middle : one));
      return out;
    };
    for (int r = 0; r < m; ++r) {
      gamma_.push_back(build(r, ix));
      gamma_.push_back(build(r, iy));
    }
    if (n % 2 == 1) {
      GaussMatrix vol = GaussMatrix::identity(dim);
      for (const auto& g : gamma_) vol = vol * g;
      // (gamma_1...gamma_2m)^2 = (-1)^m, so the phase squares to (-1)^(m+1)
      gamma_.push_back((m % 2 == 0 ? GaussRat::i() : GaussRat(1)) * vol);
    }
    for (int i = 0; i < n; ++i)
      if (signs[i] < 0) gamma_[i] = GaussRat(-1) * gamma_[i];
  }

  int dimension() const { return n_; }
  std::size_t spinor_dimension() const { return gamma_.empty() ? 1 : gamma_.front().size(); }

  /// Matrix of e_i, 1-based.
  const GaussMatrix& gamma(int i) const {
    if (i < 1 || i > n_) throw IndexError("Clifford generator " + std::to_string(i) + " out of range");
    return gamma_[i - 1];
  }

  static std::vector<int> default_signs(int n) {
    std::vector<int> s(n, 1);
    return s;
  }

 private:
  int n_;
  std::vector<GaussMatrix> gamma_;
};

/// Element of the spinor module with polynomial coefficients on u_0..u_{2^m-1}.
class Spinor {
 public:
  using Terms = std::map<unsigned, Poly>;

  Spinor() = default;

  static Spinor u(unsigned k) {
    Spinor s;
    s.terms_.emplace(k, Poly(1));
    return s;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly coefficient(unsigned k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Poly() : it->second;
  }

  void add_term(unsigned k, const Poly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Spinor& operator+=(const Spinor& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator-(Spinor a) {
    for (auto& [k, c] : a.terms_) c = -c;
    return a;
  }
  friend Spinor operator*(const Poly& c, const Spinor& s) {
    Spinor out;
    for (const auto& [k, v] : s.terms_) out.add_term(k, c * v);
    return out;
  }
  friend bool operator==(const Spinor&, const Spinor&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      std::string coeff = c.str();
      std::string t = (c == Poly(1)) ? "" : (c == Poly(-1) ? "-" : "(" + coeff + ")*");
      t += "u" + std::to_string(k);
      if (!out.empty() && t.front() != '-') out += "+";
      out += t;
    }
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const Spinor& s) { return os << s.str(); }

 private:
  Terms terms_;
};

/// Spinor obtained by applying a constant matrix.
inline Spinor apply(const GaussMatrix& m, const Spinor& psi) {
  Spinor out;
  for (const auto& [k, c] : psi.terms())
    for (std::size_t r = 0; r < m.size(); ++r)
      if (!m(r, k).is_zero()) out.add_term(static_cast<unsigned>(r), c * m(r, k));
  return out;
}

/// Clifford multiplication v . psi for a degree-1 element v of the frame.
inline Spinor clifford_mul(const CliffordTable& table, const Form& v, const Spinor& psi) {
  if (v.is_zero()) return Spinor();
  if (degree(v) != 1) throw DegreeError("clifford_mul: vector argument must have degree 1");
  Spinor out;
  for (const auto& [m, c] : v.terms()) out += c * apply(table.gamma(m.indices().front()), psi);
  return out;
}

}  // namespace cartan
