#pragma once

#include <cartan/basis.hpp>
#include <cartan/errors.hpp>
#include <cartan/form.hpp>
#include <cartan/linear_solve.hpp>
#include <cartan/manifold.hpp>
#include <cartan/poly.hpp>
#include <cartan/session.hpp>
#include <cartan/spinor.hpp>

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace cartan {

enum class ConnectionMode { generic, torsion_free_from_d, levi_civita_free };

/// A tangent vector, stored as the element that pairs with the coframe to give
/// its components. Distinguishes nabla on vectors from nabla on 1-forms.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Form v) : v_(std::move(v)) {
    if (!v_.is_zero() && degree(v_) != 1) throw DegreeError("a vector field is represented by a degree-1 element");
  }
  const Form& form() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }

  friend VectorField operator+(const VectorField& a, const VectorField& b) { return VectorField(a.v_ + b.v_); }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return VectorField(a.v_ - b.v_); }
  friend VectorField operator-(const VectorField& a) { return VectorField(-a.v_); }
  friend VectorField operator*(const Poly& c, const VectorField& a) { return VectorField(c * a.v_); }
  friend bool operator==(const VectorField&, const VectorField&) = default;
  friend std::ostream& operator<<(std::ostream& os, const VectorField& v) { return os << v.v_; }

 private:
  Form v_;
};

namespace detail {

inline void append_coefficients(std::vector<Poly>& out, const Poly& p) {
  if (!p.is_zero()) out.push_back(p);
}
inline void append_coefficients(std::vector<Poly>& out, const Form& f) {
  for (const auto& [m, c] : f.terms()) out.push_back(c);
}
inline void append_coefficients(std::vector<Poly>& out, const VectorField& v) { append_coefficients(out, v.form()); }
inline void append_coefficients(std::vector<Poly>& out, const Spinor& s) {
  for (const auto& [k, c] : s.terms()) out.push_back(c);
}
template <class T>
void append_coefficients(std::vector<Poly>& out, const std::vector<T>& xs) {
  for (const T& x : xs) append_coefficients(out, x);
}

}  // namespace detail

class RiemannianManifold;

/// Linear connection on a framed manifold with symbolic parameters
/// Gamma_ijk = <nabla_{e_i} e_j, e^k>. Declarations become linear equations in
/// the connection's own unsolved parameters; every other symbol is treated as
/// a parameter. Solutions accumulate in a substitution.
class Connection {
 public:
  Connection(Session& session, const Manifold& m, std::vector<Form> frame = {}, std::string prefix = "Gamma")
      : manifold_(&m), n_(m.dimension()) {
    if (frame.empty()) frame = m.e();
    if (static_cast<int>(frame.size()) != n_) throw DimensionError("a frame needs one 1-form per dimension");
    Basis<Form> basis;
    for (const Form& f : frame) {
      if (f.is_zero() || degree(f) != 1) throw DegreeError("frame elements must be 1-forms");
      if (f.max_generator() > n_) throw IndexError("frame element uses a generator outside the manifold");
      if (!f.symbols().empty()) throw DegreeError("frame elements must have constant coefficients");
      if (basis.insert(f) != InsertResult::retained) throw DimensionError("frame elements are linearly dependent");
    }
    frame_ = basis.elements();
    vectors_ = basis.dual();
    gamma_.reserve(static_cast<std::size_t>(n_) * n_ * n_);
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        for (int k = 1; k <= n_; ++k) {
          std::string name = prefix;
          if (n_ <= 9)
            name += std::to_string(i) + std::to_string(j) + std::to_string(k);
          else
            name += "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
          gamma_.push_back(session.symbol(std::move(name)));
        }
  }

  /// Connection whose torsion vanishes identically; the manifold needs a d-table.
  static Connection torsion_free(Session& session, const Manifold& m, std::vector<Form> frame = {}, std::string prefix = "Gamma") {
    Connection c(session, m, std::move(frame), std::move(prefix));
    c.declare_zero(c.torsion());
    c.mode_ = ConnectionMode::torsion_free_from_d;
    return c;
  }

  int dimension() const { return n_; }
  ConnectionMode mode() const { return mode_; }
  const Manifold& manifold() const { return *manifold_; }
  /// e^1..e^n.
  const std::vector<Form>& frame() const { return frame_; }
  /// e_1..e_n, dual to the frame.
  const std::vector<Form>& vectors() const { return vectors_; }
  const Substitution& substitutions() const { return subs_; }

  Symbol gamma_symbol(int i, int j, int k) const { return gamma_[flat(i, j, k)]; }
  Poly gamma(int i, int j, int k) const { return reduce(Poly(gamma_symbol(i, j, k))); }

  /// Own parameters not yet determined by a declaration.
  std::set<Symbol> parameters() const {
    std::set<Symbol> out;
    for (const Symbol& s : gamma_)
      if (!subs_.count(s)) out.insert(s);
    return out;
  }

  /// omega_jk = sum_i Gamma_ijk e^i.
  Form connection_form(int j, int k) const {
    Form out;
    for (int i = 1; i <= n_; ++i) out += gamma(i, j, k) * frame_[i - 1];
    return out;
  }

  Poly reduce(const Poly& p) const { return manifold_->reduce(substitute(p, subs_)); }
  Form reduce(const Form& f) const { return manifold_->reduce(substitute(f, subs_)); }
  VectorField reduce(const VectorField& v) const { return VectorField(reduce(v.form())); }
  Spinor reduce(const Spinor& s) const {
    Spinor out;
    for (const auto& [k, c] : s.terms()) out.add_term(k, reduce(c));
    return out;
  }

  VectorField nabla(const Form& x, const VectorField& y) const {
    auto a = components(x);
    auto b = components(y.form());
    Form out;
    for (int i = 1; i <= n_; ++i) {
      if (a[i - 1].is_zero()) continue;
      for (int j = 1; j <= n_; ++j) {
        if (b[j - 1].is_zero()) continue;
        Poly ab = a[i - 1] * b[j - 1];
        for (int k = 1; k <= n_; ++k) out += (ab * Poly(gamma_symbol(i, j, k))) * vectors_[k - 1];
      }
    }
    return VectorField(reduce(out));
  }

  Form nabla(const Form& x, const Form& alpha) const {
    auto a = components(x);
    // nabla_X e^k for the frame, then for each simple generator
    std::vector<Form> dframe(n_);
    for (int k = 1; k <= n_; ++k)
      for (int i = 1; i <= n_; ++i) {
        if (a[i - 1].is_zero()) continue;
        for (int j = 1; j <= n_; ++j) dframe[k - 1] -= (a[i - 1] * Poly(gamma_symbol(i, j, k))) * frame_[j - 1];
      }
    std::vector<std::optional<Form>> dgen(n_ + 1);
    auto nabla_generator = [&](Generator g) -> const Form& {
      if (!dgen[g]) {
        Form out;
        Form eg = Form::e(g);
        for (int k = 1; k <= n_; ++k) {
          Poly c = pairing(eg, vectors_[k - 1]);
          if (!c.is_zero()) out += c * dframe[k - 1];
        }
        dgen[g] = std::move(out);
      }
      return *dgen[g];
    };
    Form out;
    for (const auto& [m, c] : alpha.terms()) {
      const auto& idx = m.indices();
      for (std::size_t r = 0; r < idx.size(); ++r) {
        if (idx[r] > n_) throw IndexError("form uses a generator outside the manifold");
        const Form& dg = nabla_generator(idx[r]);
        if (dg.is_zero()) continue;
        Form prefix = Form::term(Monomial::from_sorted({idx.begin(), idx.begin() + r}), c);
        Form suffix = Form::term(Monomial::from_sorted({idx.begin() + r + 1, idx.end()}), Poly(1));
        out += wedge(wedge(prefix, dg), suffix);
      }
    }
    return reduce(out);
  }

  Spinor nabla(const Form& x, const Spinor& psi) const {
    if (!clifford_) throw UnsupportedKind("spinors can only be differentiated by a Levi-Civita connection");
    auto a = components(x);
    Spinor out;
    for (int j = 1; j <= n_; ++j)
      for (int k = 1; k <= n_; ++k) {
        Spinor gg = apply(clifford_->gamma(j), apply(clifford_->gamma(k), psi));
        if (gg.is_zero()) continue;
        Poly c;
        for (int i = 1; i <= n_; ++i)
          if (!a[i - 1].is_zero()) c += a[i - 1] * Poly(gamma_symbol(i, j, k));
        out += (c * GaussRat::fraction(1, 4)) * gg;
      }
    return reduce(out);
  }

  template <class T>
  void declare_nabla(const Form& x, const T& t, const T& value) {
    declare_zero(nabla(x, t) - value);
  }

  /// Solves for the own parameters so that every coefficient of `x` vanishes.
  template <class T>
  void declare_zero(const T& x) {
    std::vector<Poly> eqs;
    detail::append_coefficients(eqs, x);
    solve(eqs);
  }

  /// Theta^j = d e^j - sum_i e^i ^ nabla_{e_i} e^j, so that
  /// Theta^j(X,Y) = <nabla_X Y - nabla_Y X - [X,Y], e^j>.
  std::vector<Form> torsion() const {
    std::vector<Form> out;
    for (int j = 1; j <= n_; ++j) {
      Form t = manifold_->d(frame_[j - 1]);
      for (int i = 1; i <= n_; ++i) t -= wedge(frame_[i - 1], nabla(vectors_[i - 1], frame_[j - 1]));
      out.push_back(reduce(t));
    }
    return out;
  }

  /// Omega_jk = d omega_jk + sum_l omega_jl ^ omega_lk.
  std::vector<std::vector<Form>> curvature() const {
    std::vector<std::vector<Form>> omega(n_, std::vector<Form>(n_));
    for (int j = 1; j <= n_; ++j)
      for (int k = 1; k <= n_; ++k) omega[j - 1][k - 1] = connection_form(j, k);
    std::vector<std::vector<Form>> out(n_, std::vector<Form>(n_));
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        Form w = manifold_->d(omega[j][k]);
        for (int l = 0; l < n_; ++l) w += wedge(omega[j][l], omega[l][k]);
        out[j][k] = reduce(w);
      }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Connection& c) {
    for (int j = 1; j <= c.n_; ++j)
      for (int k = 1; k <= c.n_; ++k) {
        Form w = c.connection_form(j, k);
        if (!w.is_zero()) os << "omega_" << j << k << " = " << w << '\n';
      }
    return os;
  }

 private:
  friend class RiemannianManifold;

  std::size_t flat(int i, int j, int k) const {
    if (i < 1 || i > n_ || j < 1 || j > n_ || k < 1 || k > n_) throw IndexError("connection index out of range");
    return (static_cast<std::size_t>(i - 1) * n_ + (j - 1)) * n_ + (k - 1);
  }

  /// <x, e^i> for each i; x must be a constant-coefficient combination of frame fields.
  std::vector<Poly> components(const Form& x) const {
    if (!x.is_zero() && degree(x) != 1) throw DegreeError("direction must be a degree-1 combination of frame fields");
    std::vector<Poly> out;
    for (const Form& f : frame_) out.push_back(pairing(x, f));
    return out;
  }

  void solve(const std::vector<Poly>& equations) {
    // parameters are real, so a Gaussian equation is a pair of real ones
    std::vector<Poly> reduced;
    for (const Poly& eq : equations) {
      Poly r = reduce(eq), re, im;
      for (const auto& [m, c] : r.terms()) {
        re.add_term(m, GaussRat(c.re()));
        im.add_term(m, GaussRat(c.im()));
      }
      if (!re.is_zero()) reduced.push_back(std::move(re));
      if (!im.is_zero()) reduced.push_back(std::move(im));
    }
    if (reduced.empty()) return;
    LinearSolution sol = linear_solve(reduced, parameters());
    if (sol.assignments.empty()) return;
    for (auto& [s, rhs] : subs_) rhs = substitute(rhs, sol.assignments);
    subs_.insert(sol.assignments.begin(), sol.assignments.end());
  }

  void make_levi_civita(const CliffordTable* table) {
    std::vector<Poly> eqs;
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        for (int k = j; k <= n_; ++k) eqs.push_back(Poly(gamma_symbol(i, j, k)) + Poly(gamma_symbol(i, k, j)));
    solve(eqs);
    clifford_ = table;
    mode_ = ConnectionMode::levi_civita_free;
  }

  const Manifold* manifold_;
  int n_;
  std::vector<Form> frame_;
  std::vector<Form> vectors_;
  std::vector<Symbol> gamma_;
  Substitution subs_;
  ConnectionMode mode_ = ConnectionMode::generic;
  const CliffordTable* clifford_ = nullptr;
};

/// Riemannian manifold with a global orthonormal frame and no d-table: the
/// exterior derivative is computed from the Levi-Civita connection, whose
/// parameters are only constrained by metricity and by later declarations.
class RiemannianManifold : public Manifold {
 public:
  RiemannianManifold(Session& session, int n, std::string prefix = "Gamma")
      : Manifold(n), clifford_(n), lc_(session, *this, {}, std::move(prefix)) {
    lc_.make_levi_civita(&clifford_);
  }
  RiemannianManifold(const RiemannianManifold&) = delete;
  RiemannianManifold& operator=(const RiemannianManifold&) = delete;

  const Connection& levi_civita() const { return lc_; }
  const CliffordTable& clifford() const { return clifford_; }
  Spinor u(unsigned k) const {
    if (k >= clifford_.spinor_dimension()) throw IndexError("spinor index out of range");
    return Spinor::u(k);
  }

  /// d e^j = sum_i e^i ^ nabla_{e_i} e^j.
  Form d_generator(int j) const override {
    check_index(j);
    Form out;
    for (int i = 1; i <= dimension(); ++i) out += wedge(e(i), lc_.nabla(e(i), e(j)));
    return reduce(out);
  }

  Poly reduce(const Poly& p) const override { return substitute(p, lc_.substitutions()); }
  Form reduce(const Form& f) const override { return substitute(f, lc_.substitutions()); }

  /// [X,Y] = nabla_X Y - nabla_Y X.
  Form lie_bracket(const Form& x, const Form& y) const override {
    require_vector(x);
    require_vector(y);
    return (lc_.nabla(x, VectorField(y)) - lc_.nabla(y, VectorField(x))).form();
  }

  template <class T>
  void declare_nabla(const Form& x, const T& t, const T& value) {
    lc_.declare_nabla(x, t, value);
  }
  template <class T>
  void declare_zero(const T& x) {
    lc_.declare_zero(x);
  }
  /// Constrains the Levi-Civita parameters so that d(w) = value.
  void impose_d(const Form& w, const Form& value) { lc_.declare_zero(d(w) - value); }

 private:
  CliffordTable clifford_;
  Connection lc_;
};

}  // namespace cartan
