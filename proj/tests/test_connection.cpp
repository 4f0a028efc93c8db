#include <cartan/connection.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

Form w2(const Manifold& m, int a, int b) { return wedge(m.e(a), m.e(b)); }

FrameManifold nilpotent_x() {
  FrameManifold x(4);
  x.declare_d(1, Form());
  x.declare_d(2, Form());
  x.declare_d(3, w2(x, 1, 2));
  x.declare_d(4, w2(x, 1, 3));
  return x;
}

FrameManifold torus(int n) {
  FrameManifold t(n);
  for (int i = 1; i <= n; ++i) t.declare_d(i, Form());
  return t;
}

Form f(int n, const char* text) { return parse_form(n, text); }

/// Random rational values for every listed symbol.
Substitution random_values(testgen::Gen& gen, const std::set<Symbol>& symbols) {
  Substitution out;
  for (const Symbol& s : symbols) out.emplace(s, Poly(gen.rational()));
  return out;
}

/// Almost-complex connection built from a torsion-free one, J(e1)=e2, J(e3)=e4.
struct AlmostComplex {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection h = Connection::torsion_free(s, x);
  Connection k{s, x};
  Form omega = w2(x, 1, 2) + w2(x, 3, 4);

  Form J(const Form& y) const { return hook(y, omega); }
  Form nab(const Form& a, const Form& b) const { return h.nabla(a, VectorField(b)).form(); }
  Form A(const Form& a, const Form& b) const { return nab(a, J(b)) - J(nab(a, b)); }
  Form Q(const Form& a, const Form& b) const {
    return GaussRat::fraction(1, 4) * (A(J(b), a) + J(A(b, a)) + 2 * J(A(a, b)));
  }

  AlmostComplex() {
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        k.declare_nabla(x.e(i), VectorField(x.e(j)), VectorField(nab(x.e(i), x.e(j)) - Q(x.e(i), x.e(j))));
  }
};

}  // namespace

TEST(Connection, GenericHasNCubedParameters) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x, {}, "Gamma'");
  EXPECT_EQ(c.parameters().size(), 64u);
  EXPECT_EQ(c.mode(), ConnectionMode::generic);
  EXPECT_EQ(c.gamma_symbol(1, 2, 3).name(), "Gamma'123");
  EXPECT_EQ(c.gamma(4, 3, 1).str(), "Gamma'431");
  EXPECT_EQ(c.connection_form(2, 3), Poly(c.gamma_symbol(1, 2, 3)) * x.e(1) + Poly(c.gamma_symbol(2, 2, 3)) * x.e(2) +
                                         Poly(c.gamma_symbol(3, 2, 3)) * x.e(3) + Poly(c.gamma_symbol(4, 2, 3)) * x.e(4));
}

TEST(Connection, TwoDigitNamesAreSeparated) {
  Session s;
  Connection c(s, torus(10));
  EXPECT_EQ(c.gamma_symbol(1, 10, 2).name(), "Gamma(1,10,2)");
}

TEST(Connection, FrameValidation) {
  Session s;
  FrameManifold x = nilpotent_x();
  EXPECT_THROW(Connection(s, x, {x.e(1), x.e(2), x.e(3)}), DimensionError);
  EXPECT_THROW(Connection(s, x, {x.e(1), x.e(2), x.e(3), x.e(1) + x.e(2)}), DimensionError);
  EXPECT_THROW(Connection(s, x, {x.e(1), x.e(2), x.e(3), w2(x, 1, 4)}), DegreeError);
  EXPECT_THROW(Connection(s, x).gamma(0, 1, 1), IndexError);
}

TEST(Connection, NonSimpleFrameAccepted) {
  Session s;
  FrameManifold x = nilpotent_x();
  std::vector<Form> frame{x.e(1) + x.e(2), x.e(2), x.e(3), x.e(4)};
  Connection c(s, x, frame);
  const auto& v = c.vectors();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(pairing(v[i], frame[j]), Poly(i == j ? 1 : 0));
  // <nabla_{e_1} e_1, e^k> = Gamma_11k with respect to the new frame
  Form n11 = c.nabla(v[0], VectorField(v[0])).form();
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(pairing(n11, frame[k - 1]), c.gamma(1, 1, k));
}

TEST(Connection, VectorNablaIsGammaByDefinition) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      Form n = c.nabla(x.e(i), VectorField(x.e(j))).form();
      for (int k = 1; k <= 4; ++k) EXPECT_EQ(pairing(n, x.e(k)), c.gamma(i, j, k));
    }
}

TEST(Connection, FormNablaIsDual) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  for (int i = 1; i <= 4; ++i)
    for (int k = 1; k <= 4; ++k) {
      Form n = c.nabla(x.e(i), x.e(k));
      for (int j = 1; j <= 4; ++j) EXPECT_TRUE((pairing(n, x.e(j)) + c.gamma(i, j, k)).is_zero());
    }
}

TEST(Connection, FormNablaIsADerivation) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  testgen::Gen gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    Form a = gen.form(4, gen.uniform(1, 2));
    Form b = gen.form(4, gen.uniform(1, 2));
    Form dir = gen.form(4, 1);
    Form lhs = c.nabla(dir, wedge(a, b));
    Form rhs = wedge(c.nabla(dir, a), b) + wedge(a, c.nabla(dir, b));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Connection, DeclareNablaSolvesOwnParameters) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField());
  for (int k = 1; k <= 4; ++k) EXPECT_TRUE(c.gamma(1, 1, k).is_zero());
  EXPECT_EQ(c.parameters().size(), 60u);
}

TEST(Connection, DeclareNablaIsIdempotent) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField(x.e(2) - x.e(3)));
  c.declare_nabla(x.e(2), x.e(3), x.e(1));
  Substitution before = c.substitutions();
  c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField(x.e(2) - x.e(3)));
  c.declare_nabla(x.e(2), x.e(3), x.e(1));
  EXPECT_EQ(c.substitutions(), before);
}

TEST(Connection, ContradictoryDeclarationsAreInconsistent) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField(x.e(1)));
  EXPECT_THROW(c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField(2 * x.e(1))), Inconsistent);
}

TEST(Connection, DeclareZeroEdgeCases) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  c.declare_zero(Form());
  c.declare_zero(std::vector<Form>{Form(), Form()});
  EXPECT_EQ(c.parameters().size(), 64u);
  EXPECT_THROW(c.declare_zero(3 * w2(x, 1, 2)), Inconsistent);
}

TEST(Connection, ForeignSymbolsAreParameters) {
  Session s;
  FrameManifold x = nilpotent_x();
  Symbol t = s.symbol("t");
  Connection c(s, x);
  c.declare_nabla(x.e(1), VectorField(x.e(1)), VectorField(Poly(t) * x.e(2)));
  EXPECT_EQ(c.gamma(1, 1, 2), Poly(t));
  EXPECT_THROW(c.declare_zero(Poly(t) * Poly(c.gamma_symbol(2, 2, 2))), NonLinear);
}

TEST(Connection, SpinorNablaNeedsLeviCivita) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  EXPECT_THROW(c.nabla(x.e(1), Spinor::u(0)), UnsupportedKind);
}

TEST(Connection, TorsionFreeOnNilpotentX) {
  Session s;
  FrameManifold x = nilpotent_x();
  Connection h = Connection::torsion_free(s, x);
  EXPECT_EQ(h.mode(), ConnectionMode::torsion_free_from_d);
  EXPECT_EQ(h.parameters().size(), 40u);
  for (const Form& t : h.torsion()) EXPECT_TRUE(t.is_zero());
}

TEST(Connection, TorsionFreeOnTorusIsSymmetric) {
  Session s;
  FrameManifold t = torus(4);
  Connection h = Connection::torsion_free(s, t);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k) EXPECT_EQ(h.gamma(i, j, k), h.gamma(j, i, k));
}

TEST(Connection, TorsionIsTheTorsionTensor) {
  // Theta^j(e_a,e_b) = <nabla_a e_b - nabla_b e_a - [e_a,e_b], e^j>, read off the e^{ab} coefficient
  Session s;
  FrameManifold x = nilpotent_x();
  Connection c(s, x);
  auto theta = c.torsion();
  for (int a = 1; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      Form t = c.nabla(x.e(a), VectorField(x.e(b))).form() - c.nabla(x.e(b), VectorField(x.e(a))).form() - x.lie_bracket(x.e(a), x.e(b));
      for (int j = 1; j <= 4; ++j) EXPECT_EQ(theta[j - 1].coefficient(Monomial::from_sorted({Generator(a), Generator(b)})), pairing(t, x.e(j)));
    }
}

TEST(Connection, TorsionOfZeroConnectionOnTorus) {
  Session s;
  FrameManifold t = torus(3);
  Connection c(s, t);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) c.declare_nabla(t.e(i), VectorField(t.e(j)), VectorField());
  for (const Form& th : c.torsion()) EXPECT_TRUE(th.is_zero());
  for (const auto& row : c.curvature())
    for (const Form& w : row) EXPECT_TRUE(w.is_zero());
}

TEST(Connection, AlmostComplexTorsion) {
  AlmostComplex ac;
  std::vector<Form> expected{Form(), Form(), f(4, "-1/4*32-1/4*41"), f(4, "1/4*42-1/4*31")};
  auto theta = ac.k.torsion();
  EXPECT_EQ(theta, expected);

  std::set<Symbol> free = ac.h.parameters();
  for (const Symbol& sym : ac.k.parameters()) free.insert(sym);
  testgen::Gen gen(2024);
  for (int trial = 0; trial < 2; ++trial) {
    Substitution values = random_values(gen, free);
    for (int j = 0; j < 4; ++j) EXPECT_EQ(substitute(theta[j], values), expected[j]);
  }
}

TEST(Connection, AlmostComplexConnectionPreservesJ) {
  // nabla~ J = 0: nabla~_X (J e_j) = J(nabla~_X e_j)
  AlmostComplex ac;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      Form lhs = ac.k.nabla(ac.x.e(i), VectorField(ac.J(ac.x.e(j)))).form();
      Form rhs = ac.J(ac.k.nabla(ac.x.e(i), VectorField(ac.x.e(j))).form());
      EXPECT_EQ(lhs, rhs);
    }
}

TEST(Connection, CurvatureOfConstantFormsOnTorus) {
  Session s;
  FrameManifold t = torus(3);
  Connection c(s, t);
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      Form expected;
      for (int l = 1; l <= 3; ++l) expected += wedge(c.connection_form(j, l), c.connection_form(l, k));
      EXPECT_EQ(c.curvature()[j - 1][k - 1], expected);
    }
}

TEST(Connection, CurvatureCommutesWithSubstitution) {
  // curvature depends on the free Gamma; substituting values commutes with computing it
  Session s;
  FrameManifold x = nilpotent_x();
  Connection h = Connection::torsion_free(s, x);
  testgen::Gen gen(5);
  Substitution values = random_values(gen, h.parameters());
  auto omega = h.curvature();
  Connection fixed = Connection::torsion_free(s, x);
  // pin the second connection's free parameters to the same values, matched by name
  std::map<std::string, Poly> by_name;
  for (const auto& [sym, v] : values) by_name.emplace(sym.name(), v);
  std::vector<Poly> eqs;
  for (const Symbol& sym : fixed.parameters()) eqs.push_back(Poly(sym) - by_name.at(sym.name()));
  fixed.declare_zero(eqs);
  EXPECT_TRUE(fixed.parameters().empty());
  auto pinned = fixed.curvature();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) EXPECT_EQ(substitute(omega[j][k], values), pinned[j][k]);
}


class TorsionFreeResidual : public ::testing::TestWithParam<int> {};

TEST_P(TorsionFreeResidual, TorsionEquationHoldsIdentically) {
  testgen::Gen gen(static_cast<std::uint32_t>(1000 + GetParam()));
  auto algebras = testgen::lie_algebras();
  const auto& table = algebras[GetParam() % algebras.size()];
  FrameManifold base(4);
  for (int i = 1; i <= 4; ++i) base.declare_d(i, f(4, table[i - 1]));
  FrameManifold m = testgen::change_of_frame(gen, base);
  for (int i = 1; i <= 4; ++i) ASSERT_TRUE(m.d(m.d(m.e(i))).is_zero());

  Session s;
  std::vector<Form> frame;
  if (gen.coin()) frame = {m.e(1) + m.e(2), m.e(2), m.e(3) - m.e(1), 2 * m.e(4)};
  Connection h = Connection::torsion_free(s, m, frame);
  for (int j = 1; j <= 4; ++j) {
    Form residual = -m.d(h.frame()[j - 1]);
    for (int i = 1; i <= 4; ++i) residual += wedge(h.frame()[i - 1], h.nabla(h.vectors()[i - 1], h.frame()[j - 1]));
    EXPECT_TRUE(residual.is_zero()) << residual;
  }
  // the torsion stays zero for random values of the remaining parameters
  Substitution values = random_values(gen, h.parameters());
  for (const Form& t : h.torsion()) EXPECT_TRUE(substitute(t, values).is_zero());
}

INSTANTIATE_TEST_SUITE_P(RandomTables, TorsionFreeResidual, ::testing::Range(0, 28));

TEST(Riemannian, LeviCivitaCounts) {
  Session s;
  RiemannianManifold m(s, 4);
  EXPECT_EQ(m.levi_civita().mode(), ConnectionMode::levi_civita_free);
  EXPECT_EQ(m.levi_civita().parameters().size(), 24u);
  const Connection& lc = m.levi_civita();
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k) EXPECT_TRUE((lc.gamma(i, j, k) + lc.gamma(i, k, j)).is_zero());
}

TEST(Riemannian, DerivativeFromConnection) {
  Session s;
  RiemannianManifold m(s, 4);
  EXPECT_TRUE(m.d(Form(1)).is_zero());
  const Connection& lc = m.levi_civita();
  for (int j = 1; j <= 4; ++j) {
    Form expected;
    for (int i = 1; i <= 4; ++i) expected += wedge(m.e(i), lc.nabla(m.e(i), m.e(j)));
    EXPECT_EQ(m.d(m.e(j)), expected);
    EXPECT_FALSE(m.d(m.e(j)).is_zero());
  }
  for (const Form& t : lc.torsion()) EXPECT_TRUE(t.is_zero());
}

TEST(Riemannian, DerivativeIsLinearAndLeibniz) {
  Session s;
  RiemannianManifold m(s, 4);
  testgen::Gen gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    Form a = gen.form(4, gen.uniform(1, 2));
    Form b = gen.form(4, gen.uniform(0, 2));
    GaussRat c = gen.rational();
    EXPECT_EQ(m.d(c * a), c * m.d(a));
    int p = a.is_zero() ? 0 : degree(a);
    Form rhs = wedge(m.d(a), b) + (p % 2 ? -wedge(a, m.d(b)) : wedge(a, m.d(b)));
    EXPECT_EQ(m.d(wedge(a, b)), rhs);
  }
}

TEST(Riemannian, LieBracket) {
  Session s;
  RiemannianManifold m(s, 4);
  const Connection& lc = m.levi_civita();
  EXPECT_TRUE(m.lie_bracket(m.e(1), m.e(1)).is_zero());
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      Form br = m.lie_bracket(m.e(i), m.e(j));
      for (int k = 1; k <= 4; ++k) EXPECT_EQ(pairing(br, m.e(k)), lc.gamma(i, j, k) - lc.gamma(j, i, k));
      // agrees with the bracket computed from d
      EXPECT_EQ(br, m.Manifold::lie_bracket(m.e(i), m.e(j)));
    }
}

TEST(Riemannian, CurvatureIsAntisymmetric) {
  Session s;
  RiemannianManifold m(s, 4);
  auto omega = m.levi_civita().curvature();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) EXPECT_TRUE((omega[j][k] + omega[k][j]).is_zero());
}

TEST(Riemannian, SpinorNablaExpansion) {
  Session s;
  RiemannianManifold m(s, 4);
  const Connection& lc = m.levi_civita();
  const CliffordTable& cl = m.clifford();
  Spinor expected;
  for (int j = 1; j <= 4; ++j)
    for (int k = 1; k <= 4; ++k)
      expected += (GaussRat::fraction(1, 4) * lc.gamma(1, j, k)) * apply(cl.gamma(j) * cl.gamma(k), m.u(0));
  Spinor got = lc.nabla(m.e(1), m.u(0));
  EXPECT_EQ(got, expected);
  for (const auto& [idx, c] : got.terms()) EXPECT_EQ(c.total_degree(), 1u);
  EXPECT_THROW(m.u(4), IndexError);
}

TEST(Riemannian, ParallelSpinorClosesTheSelfDualForms) {
  Session s;
  RiemannianManifold m(s, 4);
  for (int i = 1; i <= 4; ++i) m.declare_nabla(m.e(i), m.u(0), Spinor());
  EXPECT_EQ(m.levi_civita().parameters().size(), 12u);
  EXPECT_TRUE(m.d(w2(m, 1, 2) + w2(m, 3, 4)).is_zero());
  EXPECT_TRUE(m.d(w2(m, 1, 3) + w2(m, 4, 2)).is_zero());
  EXPECT_TRUE(m.d(w2(m, 1, 4) + w2(m, 2, 3)).is_zero());
  // the anti-self-dual forms are not forced closed
  EXPECT_FALSE(m.d(w2(m, 1, 2) - w2(m, 3, 4)).is_zero());
}

TEST(Riemannian, ClosedSelfDualFormsGiveParallelSpinor) {
  Session s;
  RiemannianManifold m(s, 4);
  ASSERT_NO_THROW({
    m.impose_d(w2(m, 1, 2) + w2(m, 3, 4), Form());
    m.impose_d(w2(m, 1, 3) + w2(m, 4, 2), Form());
    m.impose_d(w2(m, 1, 4) + w2(m, 2, 3), Form());
  });
  EXPECT_TRUE(m.d(w2(m, 1, 2) + w2(m, 3, 4)).is_zero());
  EXPECT_TRUE(m.d(w2(m, 1, 3) + w2(m, 4, 2)).is_zero());
  EXPECT_TRUE(m.d(w2(m, 1, 4) + w2(m, 2, 3)).is_zero());
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(m.levi_civita().nabla(m.e(i), m.u(0)).is_zero());
}

TEST(Riemannian, ImposeDErrors) {
  Session s;
  RiemannianManifold m(s, 4);
  EXPECT_THROW(m.impose_d(Form(), w2(m, 1, 2)), Inconsistent);
}

TEST(Riemannian, BilagrangianDistributionsAreInvolutive) {
  Session s;
  RiemannianManifold m(s, 4);
  for (int i = 1; i <= 4; ++i) m.declare_nabla(m.e(i), m.u(0), Spinor());
  Connection omega(s, m, {}, "Gamma'");
  Form sym = w2(m, 1, 2) + w2(m, 3, 4);
  for (int k = 1; k <= 4; ++k) {
    omega.declare_nabla(m.e(k), sym, Form());
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        if ((i + j) % 2) omega.declare_zero(hook(m.e(j), omega.nabla(m.e(k), m.e(i))));
  }
  for (int k = 1; k <= 4; ++k)
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        if ((i + k) % 2 && (i + j) % 2 == 0)
          omega.declare_zero(hook(m.e(j), omega.nabla(m.e(k), VectorField(m.e(i))).form() - m.lie_bracket(m.e(k), m.e(i))));
  EXPECT_TRUE(omega.parameters().empty());
  m.declare_zero(omega.torsion());
  for (const Form& t : omega.torsion()) EXPECT_TRUE(t.is_zero());

  Form b13 = m.lie_bracket(m.e(1), m.e(3));
  Form b24 = m.lie_bracket(m.e(2), m.e(4));
  EXPECT_TRUE(pairing(b13, m.e(2)).is_zero());
  EXPECT_TRUE(pairing(b13, m.e(4)).is_zero());
  EXPECT_TRUE(pairing(b24, m.e(1)).is_zero());
  EXPECT_TRUE(pairing(b24, m.e(3)).is_zero());
  // the brackets are not forced to vanish altogether
  EXPECT_FALSE(b13.is_zero());
  EXPECT_FALSE(b24.is_zero());
}
