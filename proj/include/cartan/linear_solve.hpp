#pragma once

#include <cartan/errors.hpp>
#include <cartan/poly.hpp>

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace cartan {

/// Result of linear_solve. Right-hand sides mention only free unknowns and
/// parameters (symbols outside the unknown set).
struct LinearSolution {
  Substitution assignments;
  std::set<Symbol> free;
};

namespace detail {

/// One equation sum(coeff[u] * u) + rest = 0, split against the unknown set.
struct LinearRow {
  std::map<Symbol, GaussRat> coeff;
  Poly rest;

  LinearRow& axpy(const GaussRat& factor, const LinearRow& o) {
    for (const auto& [u, c] : o.coeff) {
      auto [it, inserted] = coeff.try_emplace(u, factor * c);
      if (!inserted) {
        it->second += factor * c;
        if (it->second.is_zero()) coeff.erase(it);
      }
    }
    rest += o.rest * factor;
    return *this;
  }
};

inline LinearRow split_linear(const Poly& eq, const std::set<Symbol>& unknowns) {
  LinearRow row;
  for (const auto& [m, c] : eq.terms()) {
    std::optional<Symbol> unknown;
    for (const auto& [s, e] : m) {
      if (!unknowns.count(s)) continue;
      if (e > 1 || unknown) throw NonLinear("equation is not linear in the unknowns: " + eq.str());
      unknown = s;
    }
    if (!unknown) {
      row.rest.add_term(m, c);
      continue;
    }
    if (m.size() != 1)
      throw NonLinear("unknown " + unknown->name() + " has a parametric coefficient in: " + eq.str());
    row.coeff.emplace(*unknown, c);
  }
  return row;
}

}  // namespace detail

/// Exact Gaussian elimination of equations that are affine in `unknowns` with
/// constant coefficients. The pivot for each unknown, taken in creation order,
/// is the first remaining equation (input order) that contains it.
/// Throws NonLinear or Inconsistent.
inline LinearSolution linear_solve(std::span<const Poly> equations, const std::set<Symbol>& unknowns) {
  std::vector<detail::LinearRow> rows;
  rows.reserve(equations.size());
  for (const Poly& eq : equations) {
    if (eq.is_zero()) continue;
    rows.push_back(detail::split_linear(eq, unknowns));
  }

  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<Symbol, std::size_t>> pivots;
  for (const Symbol& u : unknowns) {
    std::size_t p = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && rows[r].coeff.count(u)) {
        p = r;
        break;
      }
    if (p == rows.size()) continue;
    used[p] = true;
    GaussRat inv = GaussRat(1) / rows[p].coeff.at(u);
    if (!inv.is_one()) {
      for (auto& [s, c] : rows[p].coeff) c *= inv;
      rows[p].rest *= inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == p) continue;
      auto it = rows[r].coeff.find(u);
      if (it == rows[r].coeff.end()) continue;
      GaussRat factor = -it->second;
      rows[r].axpy(factor, rows[p]);
    }
    pivots.emplace_back(u, p);
  }

  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!used[r] && !rows[r].rest.is_zero())
      throw Inconsistent("inconsistent equation: " + rows[r].rest.str() + " = 0");

  LinearSolution sol;
  for (const auto& [u, p] : pivots) {
    Poly rhs = -rows[p].rest;
    for (const auto& [s, c] : rows[p].coeff)
      if (s != u) rhs -= Poly(s) * c;
    sol.assignments.emplace(u, std::move(rhs));
  }
  for (const Symbol& u : unknowns)
    if (!sol.assignments.count(u)) sol.free.insert(u);
  return sol;
}

inline LinearSolution linear_solve(const std::vector<Poly>& equations, const std::set<Symbol>& unknowns) {
  return linear_solve(std::span<const Poly>(equations), unknowns);
}

}  // namespace cartan
