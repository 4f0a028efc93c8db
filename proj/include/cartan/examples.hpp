#pragma once

#include <cartan/basis.hpp>
#include <cartan/connection.hpp>
#include <cartan/eds.hpp>
#include <cartan/manifold.hpp>
#include <cartan/parse.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace cartan::examples {

/// de1 = de2 = 0, de3 = e12, de4 = e13.
inline FrameManifold nilpotent() {
  FrameManifold x(4);
  x.declare_d(1, Form());
  x.declare_d(2, Form());
  x.declare_d(3, parse_form(4, "12"));
  x.declare_d(4, parse_form(4, "13"));
  return x;
}

/// Complex Iwasawa manifold: de5 = e13+e42, de6 = e14+e23.
inline FrameManifold iwasawa() {
  FrameManifold m(6);
  for (int i = 1; i <= 4; ++i) m.declare_d(i, Form());
  m.declare_d(5, parse_form(6, "13+42"));
  m.declare_d(6, parse_form(6, "14+23"));
  return m;
}

/// Independent exact 3-forms d(e^ij), i < j, in insertion order.
inline Basis<Form> iwasawa_exact_three_forms(const Manifold& m) {
  Basis<Form> b;
  for (int i = 1; i <= m.dimension(); ++i)
    for (int j = i + 1; j <= m.dimension(); ++j) b.push_back(m.d(wedge(m.e(i), m.e(j))));
  return b;
}

/// The ideal generated by d(phi) and d(*phi) for the G2 forms on the frame bundle of a 7-manifold.
inline std::vector<Form> g2_ideal(const FrameBundle& p) {
  return {p.d(parse_form(7, "567-512-534-613-642-714-723")), p.d(parse_form(7, "1234-6712-6734-7513-7542-5614-5623"))};
}

/// Almost-complex connection k = h - Q on the nilpotent manifold, J(e1)=e2, J(e3)=e4,
/// where h is a generic torsion-free connection.
struct AlmostComplex {
  explicit AlmostComplex(Session& s) : h(Connection::torsion_free(s, x)), k(s, x) {
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        k.declare_nabla(x.e(i), VectorField(x.e(j)), VectorField(nab(x.e(i), x.e(j)) - Q(x.e(i), x.e(j))));
  }
  AlmostComplex(const AlmostComplex&) = delete;
  AlmostComplex& operator=(const AlmostComplex&) = delete;

  Form J(const Form& y) const { return hook(y, parse_form(4, "12+34")); }
  Form nab(const Form& a, const Form& b) const { return h.nabla(a, VectorField(b)).form(); }
  Form A(const Form& a, const Form& b) const { return nab(a, J(b)) - J(nab(a, b)); }
  Form Q(const Form& a, const Form& b) const {
    return GaussRat::fraction(1, 4) * (A(J(b), a) + J(A(b, a)) + 2 * J(A(a, b)));
  }

  FrameManifold x = nilpotent();
  Connection h;
  Connection k;
};

/// Parallel spinor u_0 on a Riemannian 4-manifold with a global orthonormal frame.
inline void declare_parallel_spinor(RiemannianManifold& m) {
  for (int i = 1; i <= m.dimension(); ++i) m.declare_nabla(m.e(i), m.u(0), Spinor());
}

/// The closed self-dual forms e12+e34, e13+e42, e14+e23.
inline std::vector<Form> self_dual_forms() {
  return {parse_form(4, "12+34"), parse_form(4, "13+42"), parse_form(4, "14+23")};
}

/// Canonical connection of the bilagrangian splitting F = <e1,e3>, G = <e2,e4>
/// on a manifold with a parallel spinor; afterwards its torsion is declared zero
/// on the manifold.
struct Bilagrangian {
  explicit Bilagrangian(Session& s) : m(s, 4), omega(s, m, {}, "Gamma'") {
    declare_parallel_spinor(m);
    Form symplectic = parse_form(4, "12+34");
    for (int k = 1; k <= 4; ++k) {
      omega.declare_nabla(m.e(k), symplectic, Form());
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
          if ((i + j) % 2) omega.declare_zero(hook(m.e(j), omega.nabla(m.e(k), m.e(i))));
    }
    for (int k = 1; k <= 4; ++k)
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
          if ((i + k) % 2 && (i + j) % 2 == 0)
            omega.declare_zero(hook(m.e(j), omega.nabla(m.e(k), VectorField(m.e(i))).form() - m.lie_bracket(m.e(k), m.e(i))));
    m.declare_zero(omega.torsion());
  }
  Bilagrangian(const Bilagrangian&) = delete;
  Bilagrangian& operator=(const Bilagrangian&) = delete;

  RiemannianManifold m;
  Connection omega;
};

inline std::string format_report(const CartanReport& r, int n) {
  std::ostringstream out;
  for (std::size_t j = 0; j < r.c.size(); ++j) out << "c_" << j << "=" << r.c[j] << '\n';
  out << "codim(V_" << n << ")=" << r.codim << '\n';
  out << (r.involutive ? "INVOLUTIVE" : "NOT INVOLUTIVE (at this flag)") << '\n';
  return out.str();
}

inline std::vector<std::string> names() { return {"nilpotent-torsion", "su2-spinor", "bilagrangian", "iwasawa", "g2"}; }

/// Text report of a built-in example. Throws IndexError for an unknown name.
inline std::string run(const std::string& name) {
  std::ostringstream out;
  Session s;
  if (name == "nilpotent-torsion") {
    AlmostComplex ac(s);
    out << "free(Gamma)=" << ac.h.parameters().size() << '\n';
    out << "free(Gamma~)=" << ac.k.parameters().size() << '\n';
    auto theta = ac.k.torsion();
    for (std::size_t j = 0; j < theta.size(); ++j) out << "Theta" << j + 1 << "=" << theta[j] << '\n';
  } else if (name == "su2-spinor") {
    RiemannianManifold m(s, 4);
    declare_parallel_spinor(m);
    for (const Form& w : self_dual_forms()) out << m.d(w) << '\n';
  } else if (name == "bilagrangian") {
    Bilagrangian b(s);
    out << "free(Gamma')=" << b.omega.parameters().size() << '\n';
    out << "[e1,e3]=" << b.m.lie_bracket(b.m.e(1), b.m.e(3)) << '\n';
    out << "[e2,e4]=" << b.m.lie_bracket(b.m.e(2), b.m.e(4)) << '\n';
  } else if (name == "iwasawa") {
    FrameManifold m = iwasawa();
    Basis<Form> b = iwasawa_exact_three_forms(m);
    for (const Form& x : b) out << x << '\n';
    auto c = b.components(m.d(parse_form(6, "45")));
    out << "(";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i].str();
    out << ")\n";
  } else if (name == "g2") {
    FrameBundle p(s, 7);
    out << format_report(p.cartan_test(g2_ideal(p)), 7);
  } else {
    throw IndexError("unknown example '" + name + "'");
  }
  return out.str();
}

}  // namespace cartan::examples
